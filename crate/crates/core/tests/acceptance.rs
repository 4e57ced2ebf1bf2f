//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hypersum::verify::{
    asymptotic_case, run_suite, Suite, SuiteReport, VerifyOptions, ASYMPTOTIC_CASES,
};

const SUM_AGREEMENT: f64 = 1e-9;
const CLOSED_FORM_REL: f64 = 1e-11;
const BOUNDARY_VALUE_REL: f64 = 1e-10;
const PROGENY_MASS: f64 = 1e-8;
const NORMALIZATION: f64 = 1e-10;
const ASYMPTOTIC_REL_AT_200: f64 = 0.05;
const ASYMPTOTIC_SLOPE: f64 = -0.8;
const TRIPLE_ROUTE_REL: f64 = 1e-7;
const FUNCTIONAL_EQ: f64 = 1e-10;
const HALF_ALPHA_MATCH: f64 = 1e-10;
const MC_REPLICATES: u64 = 1_000_000;
const MC_MAX_Z: f64 = 4.0;
const MC_TIME_LIMIT: Duration = Duration::from_secs(300);
const GENERAL_MASS: f64 = 1e-8;
const GENERAL_SLOPE: f64 = 0.1;

struct Outcome {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn measured(r: &SuiteReport, idx: usize) -> f64 {
    r.checks[idx].measured
}

fn suite(s: Suite, opts: &VerifyOptions) -> SuiteReport {
    run_suite(s, opts).unwrap_or_else(|e| panic!("suite {s} failed to run: {e}"))
}

fn criterion1(o: &VerifyOptions) -> Outcome {
    let r = suite(Suite::ClosedFormAgreement, o);
    let m = measured(&r, 0);
    Outcome {
        id: 1,
        title: "direct sum equals closed form at 200 interior points",
        passed: m <= SUM_AGREEMENT,
        detail: format!("max rel dev {m:.3e} <= {SUM_AGREEMENT:e}"),
    }
}

fn criterion2(o: &VerifyOptions) -> Outcome {
    let r = suite(Suite::ConvergenceDomain, o);
    let wrong = measured(&r, 0);
    let witness = 1e6 / measured(&r, 1);
    Outcome {
        id: 2,
        title: "convergence verdicts and divergence witness",
        passed: wrong == 0.0 && witness > 1e6,
        detail: format!("{wrong} of 12 misclassified; |S_500(0.5,1,0.5)| = {witness:.3e} > 1e6"),
    }
}

fn criterion3(o: &VerifyOptions) -> Outcome {
    let r = suite(Suite::ClosedForms, o);
    let (chi, sum, bnd) = (measured(&r, 0), measured(&r, 1), measured(&r, 2));
    Outcome {
        id: 3,
        title: "elementary closed forms and boundary values",
        passed: chi <= CLOSED_FORM_REL && sum <= CLOSED_FORM_REL && bnd <= BOUNDARY_VALUE_REL,
        detail: format!("2F1 {chi:.2e}, S {sum:.2e} <= {CLOSED_FORM_REL:e}; boundary {bnd:.2e} <= {BOUNDARY_VALUE_REL:e}"),
    }
}

fn criterion4(o: &VerifyOptions) -> Outcome {
    let r = suite(Suite::ProgenyNormalization, o);
    let (mass, id) = (measured(&r, 0), measured(&r, 1));
    Outcome {
        id: 4,
        title: "progeny law sums to one; normalization identity",
        passed: mass <= PROGENY_MASS && id <= NORMALIZATION,
        detail: format!("mass dev {mass:.2e} <= {PROGENY_MASS:e}; identity dev {id:.2e} <= {NORMALIZATION:e}"),
    }
}

fn criterion5(_: &VerifyOptions) -> Outcome {
    let mut passed = true;
    let mut worst_rel = 0.0_f64;
    let mut worst_slope = f64::NEG_INFINITY;
    let mut exact_cases = 0;
    let mut mismatches = 0;
    for (c, x) in ASYMPTOTIC_CASES {
        let a = asymptotic_case(c, x).expect("asymptotic case evaluates");
        worst_rel = worst_rel.max(a.rel_error_at_200);
        match a.error_slope {
            Some(s) => worst_slope = worst_slope.max(s),
            None => exact_cases += 1,
        }
        mismatches += a.sign_mismatches;
        passed &= a.rel_error_at_200 <= ASYMPTOTIC_REL_AT_200
            && a.error_slope.is_none_or(|s| s <= ASYMPTOTIC_SLOPE)
            && a.sign_mismatches == 0;
    }
    Outcome {
        id: 5,
        title: "large-k asymptotics: accuracy, decay rate, sign pattern",
        passed,
        detail: format!(
            "rel err k=200 {worst_rel:.3} <= {ASYMPTOTIC_REL_AT_200}; slope {worst_slope:.3} <= {ASYMPTOTIC_SLOPE} ({exact_cases} exact to roundoff); {mismatches} sign mismatches"
        ),
    }
}

fn criterion6(o: &VerifyOptions) -> Outcome {
    let r = suite(Suite::ProgenyRoutes, o);
    let worst = r.checks.iter().map(|c| c.measured).fold(0.0, f64::max);
    Outcome {
        id: 6,
        title: "progeny pmf by formula, PGF coefficients and Bessel quadrature",
        passed: worst <= TRIPLE_ROUTE_REL,
        detail: format!("max pairwise rel dev {worst:.2e} <= {TRIPLE_ROUTE_REL:e}"),
    }
}

fn criterion7(o: &VerifyOptions) -> Outcome {
    let r = suite(Suite::FunctionalEq, o);
    let (res, half) = (measured(&r, 0), measured(&r, 1));
    Outcome {
        id: 7,
        title: "functional equation of the dual PGF; alpha = 1/2 match",
        passed: res <= FUNCTIONAL_EQ && half <= HALF_ALPHA_MATCH,
        detail: format!("residual {res:.2e} <= {FUNCTIONAL_EQ:e}; alpha=1/2 dev {half:.2e} <= {HALF_ALPHA_MATCH:e}"),
    }
}

fn criterion8(o: &VerifyOptions) -> Outcome {
    let opts = VerifyOptions {
        mc_replicates: MC_REPLICATES,
        ..*o
    };
    let start = Instant::now();
    let m = hypersum::verify::montecarlo_outcome(&opts).expect("simulation runs");
    let elapsed = start.elapsed();
    let rep = &m.report;
    Outcome {
        id: 8,
        title: "simulated total progeny matches the law",
        passed: rep.chi_square < rep.quantile_999
            && m.max_abs_z_first_20 <= MC_MAX_Z
            && m.workers_agree
            && elapsed <= MC_TIME_LIMIT,
        detail: format!(
            "chi2 {:.2} < {:.2} (dof {}); max |z| {:.2} <= {MC_MAX_Z}; workers agree {}; {:.1}s",
            rep.chi_square,
            rep.quantile_999,
            rep.dof,
            m.max_abs_z_first_20,
            m.workers_agree,
            elapsed.as_secs_f64()
        ),
    }
}

fn criterion9(o: &VerifyOptions) -> Outcome {
    let r = suite(Suite::GeneralLaw, o);
    let (mass, slope) = (measured(&r, 0), measured(&r, 1));
    Outcome {
        id: 9,
        title: "general progeny law: total mass and power-law tail",
        passed: mass <= GENERAL_MASS && slope <= GENERAL_SLOPE,
        detail: format!("mass dev {mass:.2e} <= {GENERAL_MASS:e}; slope dev {slope:.3} <= {GENERAL_SLOPE}"),
    }
}

fn main() -> ExitCode {
    let opts = VerifyOptions::default();
    let criteria: [fn(&VerifyOptions) -> Outcome; 9] = [
        criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7,
        criterion8, criterion9,
    ];
    let mut failed = 0;
    for f in criteria {
        let o = f(&opts);
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {}: {tag}  {} [{}]", o.id, o.title, o.detail);
        failed += usize::from(!o.passed);
    }
    println!("acceptance: {} of 9 passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
