//! Verification suites: each runs a family of cross-checks and reports the
//! measured deviation next to its limit.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::branching::{
    extinction_prob, functional_equation_residual, general_progeny_pmf,
    general_progeny_pmf_asymptotic, general_total_mass, h_alpha_pgf, progeny_pgf_elementary,
    progeny_pmf, progeny_pmf_bessel_oracle, progeny_pmf_series_coefficients, progeny_pmf_table,
    progeny_tail_bound, GeneralProgenyLaw, ProgenyHalfLaw, ScaledSibuya,
};
use crate::error::{Error, Result};
use crate::hypersum::{
    convergence_check, critical_eta, direct_partial_sums, normalization_identity, sum_closed,
    sum_direct, sum_special, InnerMethod, SumOptions, SumParams,
};
use crate::mc_sim::{gof_compare, simulate_total_progeny, SimConfig};
use crate::special_fn::{
    gamma, half_one_closed_form, hyp2f1_large_k, hyp2f1_series, hyp2f1_series_scaled, HalfStepTerms,
    HypParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    ClosedFormAgreement,
    ConvergenceDomain,
    ClosedForms,
    ProgenyNormalization,
    Asymptotics,
    ProgenyRoutes,
    FunctionalEq,
    Montecarlo,
    GeneralLaw,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::ClosedFormAgreement,
        Suite::ConvergenceDomain,
        Suite::ClosedForms,
        Suite::ProgenyNormalization,
        Suite::Asymptotics,
        Suite::ProgenyRoutes,
        Suite::FunctionalEq,
        Suite::Montecarlo,
        Suite::GeneralLaw,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ClosedFormAgreement => "theorem1",
            Suite::ConvergenceDomain => "theorem2",
            Suite::ClosedForms => "closed-forms",
            Suite::ProgenyNormalization => "corollary1",
            Suite::Asymptotics => "asymptotics",
            Suite::ProgenyRoutes => "progeny-routes",
            Suite::FunctionalEq => "functional-eq",
            Suite::Montecarlo => "montecarlo",
            Suite::GeneralLaw => "general-law",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown suite {s:?}")))
    }
}

/// One measured quantity against its limit; passes when `measured ≤ limit`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub limit: f64,
    pub passed: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, measured: f64, limit: f64) -> Self {
        Check {
            name: name.into(),
            measured,
            limit,
            passed: measured <= limit,
        }
    }

    /// A yes/no condition, recorded as a count of failures against 0.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Check::at_most(name, if ok { 0.0 } else { 1.0 }, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: Suite, checks: Vec<Check>) -> Self {
        SuiteReport {
            suite,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub mc_replicates: u64,
    pub workers: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 20_240_601,
            mc_replicates: 1_000_000,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::ClosedFormAgreement => closed_form_agreement(opts)?,
        Suite::ConvergenceDomain => convergence_domain()?,
        Suite::ClosedForms => closed_forms(opts)?,
        Suite::ProgenyNormalization => progeny_normalization()?,
        Suite::Asymptotics => asymptotics()?,
        Suite::ProgenyRoutes => progeny_routes()?,
        Suite::FunctionalEq => functional_eq()?,
        Suite::Montecarlo => montecarlo(opts)?,
        Suite::GeneralLaw => general_law()?,
    };
    Ok(SuiteReport::new(suite, checks))
}

fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Least-squares slope of y against x.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// A point strictly inside both the convergence region and the range
/// x ≥ −η where the closed form needs no continuation.
pub fn random_interior_point<R: Rng>(rng: &mut R) -> SumParams {
    let c = rng.random_range(0.5..6.0);
    let x = rng.random_range(-1.0..1.0);
    let floor = critical_eta(x).max(-x);
    let eta = floor + 0.05 + rng.random_range(0.0..2.95);
    SumParams::new(eta, c, x).expect("sampled parameters are valid")
}

fn closed_form_agreement(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst = 0.0_f64;
    for _ in 0..200 {
        let p = random_interior_point(&mut rng);
        let d = sum_direct(&p, &SumOptions::default())?.value;
        let c = sum_closed(&p)?.value;
        worst = worst.max(rel_dev(d, c));
    }
    Ok(vec![Check::at_most("max relative |direct - closed| over 200 points", worst, 1e-9)])
}

/// (η, c, x, convergent, on_boundary)
pub const CONVERGENCE_CASES: [(f64, f64, f64, bool, bool); 12] = [
    (0.6, 1.0, 0.3, true, false),
    (0.5, 1.0, 0.3, false, false),
    (0.4, 1.0, -0.5, true, false),
    (0.2, 1.0, -0.5, false, false),
    (0.5, 2.0, 0.25, true, true),
    (0.5, 1.0, 0.25, false, true),
    (0.5, 1.5, 0.25, false, true),
    (0.2, 2.0, -0.44, true, true),
    (0.1, 1.2, -0.21, false, true),
    (0.3, 2.0, 1.0, true, false),
    (5.0, 1.5, 1.0, false, false),
    (0.01, 0.3, 0.0, true, false),
];

fn convergence_domain() -> Result<Vec<Check>> {
    let mut wrong = 0;
    for (eta, c, x, conv, boundary) in CONVERGENCE_CASES {
        let v = convergence_check(&SumParams::new(eta, c, x)?);
        if v.convergent != conv || v.on_boundary != boundary {
            wrong += 1;
        }
    }
    let ps = direct_partial_sums(&SumParams::new(0.5, 1.0, 0.5)?, 501, InnerMethod::Recurrence)?;
    Ok(vec![
        Check::at_most("misclassified cases out of 12", wrong as f64, 0.0),
        Check::at_most(
            "1e6 / |partial sum at k=500| for (0.5, 1, 0.5)",
            1e6 / ps[500].abs(),
            1.0,
        ),
    ])
}

/// ₂F₁(½,1;c;χ) by series only: direct for χ ≥ 0, Euler-mapped for χ < 0.
fn half_one_by_series(c: f64, chi: f64) -> Result<f64> {
    if chi >= 0.0 {
        Ok(hyp2f1_series(&HypParams::new(0.5, 1.0, c, chi)?, 1e-16, 1_000_000)?.value)
    } else {
        let z = chi / (chi - 1.0);
        let inner = hyp2f1_series(&HypParams::new(0.5, c - 1.0, c, z)?, 1e-16, 1_000_000)?;
        Ok(inner.value / (1.0 - chi).sqrt())
    }
}

fn closed_forms(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    let mut worst_chi = 0.0_f64;
    for c in [1.0, 2.0, 3.0, 4.0] {
        for _ in 0..100 {
            let chi = rng.random_range(-5.0..0.95);
            let closed = half_one_closed_form(c, chi).expect("integer c");
            worst_chi = worst_chi.max(rel(half_one_by_series(c, chi)?, closed));
        }
    }
    let mut worst_sum = 0.0_f64;
    for c in [1.0, 2.0, 3.0] {
        for eta in [0.3, 0.6, 1.0, 1.5, 3.0] {
            for x in [-1.0, -0.6, -0.3, -0.1, 0.0, 0.2, 0.5, 0.8, 1.0] {
                let p = SumParams::new(eta, c, x)?;
                let v = convergence_check(&p);
                if !v.convergent || v.on_boundary || x < -eta || p.term_ratio() > 0.98 {
                    continue;
                }
                let special = sum_special(&p)?.value;
                let direct = sum_direct(&p, &SumOptions::default())?.value;
                worst_sum = worst_sum.max(rel(direct, special));
            }
        }
    }
    let mut worst_boundary = 0.0_f64;
    for c in [1.75, 2.0, 2.5, 3.0, 4.5] {
        let gauss = (2.0 * c - 2.0) / (2.0 * c - 3.0);
        for eta in [0.2, 0.5, 0.8] {
            let p0 = SumParams::new(eta, c, 0.0)?;
            worst_boundary = worst_boundary.max(rel(sum_direct(&p0, &SumOptions::default())?.value, (1.0 + eta) / eta));
            let p1 = SumParams::new(eta + 1.0, c, 1.0)?;
            worst_boundary = worst_boundary.max(rel(sum_closed(&p1)?.value, gauss));
            let at_minus = gamma(c) / gamma(c - 0.5) * (std::f64::consts::PI / eta).sqrt();
            let pm = SumParams::new(eta, c, -eta)?;
            worst_boundary = worst_boundary.max(rel(sum_direct(&pm, &SumOptions::default())?.value, at_minus));
            worst_boundary = worst_boundary.max(rel(sum_closed(&pm)?.value, at_minus));
            let pe = SumParams::new(eta, c, eta * eta)?;
            worst_boundary = worst_boundary.max(rel(sum_closed(&pe)?.value, gauss / eta));
        }
    }
    Ok(vec![
        Check::at_most("2F1(1/2,1;c;chi) closed vs series, c=1..4, 400 chi", worst_chi, 1e-11),
        Check::at_most("elementary S vs direct sum, c=1,2,3 grid", worst_sum, 1e-11),
        Check::at_most("boundary values x=0, x=1, x=-eta, x=eta^2", worst_boundary, 1e-10),
    ])
}

fn progeny_normalization() -> Result<Vec<Check>> {
    let mut worst = 0.0_f64;
    for q in [0.1, 0.5, 0.9] {
        let law = ProgenyHalfLaw::from_extinction(q)?;
        let t = progeny_pmf_table(&law, 2001)?;
        let head: f64 = t[..2000].iter().sum();
        let tail = progeny_tail_bound(&law, t[2000]);
        worst = worst.max((head + tail - 1.0).abs());
    }
    let mut worst_id = 0.0_f64;
    for x in [-1.0, -0.5, 0.0, 0.5, 0.99] {
        worst_id = worst_id.max((normalization_identity(x)? - 1.0).abs());
    }
    Ok(vec![
        Check::at_most("max |sum_{l<=2000} p_l + tail - 1|, Q in {0.1,0.5,0.9}", worst, 1e-8),
        Check::at_most("max |normalization identity - 1|, 5 x values", worst_id, 1e-10),
    ])
}

pub const ASYMPTOTIC_CASES: [(f64, f64); 10] = [
    (1.5, 0.25),
    (1.5, 0.64),
    (2.0, 0.25),
    (2.0, 0.64),
    (3.0, 0.25),
    (3.0, 0.64),
    (2.0, -0.5),
    (2.0, -1.0),
    (3.0, -0.5),
    (3.0, -1.0),
];

pub const ASYMPTOTIC_KS: [u64; 4] = [50, 100, 200, 400];

/// Errors below this are roundoff: the leading term is then exact.
const EXACT_FLOOR: f64 = 1e-12;

/// Measurements of the large-k approximant against exact values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticCase {
    pub c: f64,
    pub x: f64,
    pub rel_error_at_200: f64,
    /// Log-log slope of the error over k = 50..400 (None when exact).
    pub error_slope: Option<f64>,
    pub sign_mismatches: usize,
    pub sign_checked: usize,
}

pub fn asymptotic_case(c: f64, x: f64) -> Result<AsymptoticCase> {
    if x > 0.0 {
        let mut errs = Vec::new();
        for k in ASYMPTOTIC_KS {
            let kf = k as f64;
            let exact = hyp2f1_series_scaled(&HypParams::new(0.5 * kf + 0.5, 0.5 * kf + 1.0, c, x)?, 1e-16, 1_000_000)?;
            let a = hyp2f1_large_k(k, c, x)?;
            errs.push((a.ln_abs - exact.ln_abs()).exp_m1().abs());
        }
        let error_slope = (errs[0] > EXACT_FLOOR).then(|| {
            let lk: Vec<f64> = ASYMPTOTIC_KS.iter().map(|k| (*k as f64).ln()).collect();
            let le: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
            slope(&lk, &le)
        });
        return Ok(AsymptoticCase {
            c,
            x,
            rel_error_at_200: errs[2],
            error_slope,
            sign_mismatches: 0,
            sign_checked: 0,
        });
    }
    // x < 0: exact values from the contiguous recurrence
    let phi = x.abs().sqrt().atan();
    let period = (2.0 * std::f64::consts::PI / phi).ceil() as u64;
    let kmax = ASYMPTOTIC_KS[3] + period;
    let exact: Vec<f64> = HalfStepTerms::new(c, x, 1.0)?.take(kmax as usize + 1).collect();
    let mut window_errs = Vec::new();
    let (mut mismatches, mut checked) = (0, 0);
    let mut rel_200 = f64::NAN;
    for k0 in ASYMPTOTIC_KS {
        let mut worst = 0.0_f64;
        for k in k0..k0 + period {
            let a = hyp2f1_large_k(k, c, x)?;
            let e = exact[k as usize];
            worst = worst.max((a.approx - e).abs() / a.envelope());
            if a.phase.expect("oscillating branch").sin().abs() > 0.2 {
                checked += 1;
                if a.approx.signum() != e.signum() {
                    mismatches += 1;
                }
            }
            if k == 200 {
                rel_200 = rel(a.approx, e);
            }
        }
        window_errs.push(worst);
    }
    let lk: Vec<f64> = ASYMPTOTIC_KS.iter().map(|k| (*k as f64).ln()).collect();
    let le: Vec<f64> = window_errs.iter().map(|e| e.ln()).collect();
    Ok(AsymptoticCase {
        c,
        x,
        rel_error_at_200: rel_200,
        error_slope: Some(slope(&lk, &le)),
        sign_mismatches: mismatches,
        sign_checked: checked,
    })
}

fn asymptotics() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (c, x) in ASYMPTOTIC_CASES {
        let r = asymptotic_case(c, x)?;
        checks.push(Check::at_most(format!("rel error k=200 (c={c}, x={x})"), r.rel_error_at_200, 0.05));
        checks.push(Check::at_most(
            format!("error slope (c={c}, x={x})"),
            r.error_slope.unwrap_or(f64::NEG_INFINITY),
            -0.8,
        ));
        if x < 0.0 {
            checks.push(Check::at_most(
                format!("sign mismatches where |sin Phi| > 0.2 (c={c}, x={x})"),
                r.sign_mismatches as f64,
                0.0,
            ));
        }
    }
    Ok(checks)
}

fn progeny_routes() -> Result<Vec<Check>> {
    let law = ProgenyHalfLaw::new(0.6)?;
    let coef = progeny_pmf_series_coefficients(&law, 15);
    let (mut fs, mut fb, mut sb) = (0.0_f64, 0.0_f64, 0.0_f64);
    for ell in 1..=15u64 {
        let f = progeny_pmf(&law, ell)?;
        let s = coef[ell as usize - 1];
        let b = progeny_pmf_bessel_oracle(&law, ell)?.value;
        fs = fs.max(rel(s, f));
        fb = fb.max(rel(b, f));
        sb = sb.max(rel(b, s));
    }
    Ok(vec![
        Check::at_most("formula vs PGF coefficients, l<=15", fs, 1e-7),
        Check::at_most("formula vs Bessel quadrature, l<=15", fb, 1e-7),
        Check::at_most("PGF coefficients vs Bessel quadrature, l<=15", sb, 1e-7),
    ])
}

fn functional_eq() -> Result<Vec<Check>> {
    let grid = [0.25, 0.375, 0.5, 0.625, 0.75];
    let zs = [0.2, 0.4, 0.6, 0.8, 1.0];
    let mut worst = 0.0_f64;
    for a in grid {
        for l in grid {
            let d = ScaledSibuya::new(a, l)?;
            extinction_prob(&d)?;
            for z in zs {
                worst = worst.max(functional_equation_residual(&d, z)?);
            }
        }
    }
    let mut worst_half = 0.0_f64;
    for l in grid {
        let d = ScaledSibuya::new(0.5, l)?;
        let law = ProgenyHalfLaw::new(l)?;
        for z in [0.1, 0.3, 0.5, 0.7, 0.9, 1.0] {
            worst_half = worst_half.max((h_alpha_pgf(&d, z)? - progeny_pgf_elementary(&law, z)?).abs());
        }
    }
    Ok(vec![
        Check::at_most("max functional-equation residual, 5x5x5 grid", worst, 1e-10),
        Check::at_most("alpha=1/2 root-finding PGF vs elementary PGF", worst_half, 1e-10),
    ])
}

/// Monte Carlo statistics at (α, λ) = (½, 0.6).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloOutcome {
    pub report: crate::mc_sim::GofReport,
    pub max_abs_z_first_20: f64,
    pub workers_agree: bool,
}

pub fn montecarlo_outcome(opts: &VerifyOptions) -> Result<MonteCarloOutcome> {
    let d = ScaledSibuya::new(0.5, 0.6)?;
    let law = ProgenyHalfLaw::new(0.6)?;
    let mut cfg = SimConfig::new(opts.seed, opts.mc_replicates);
    cfg.workers = opts.workers.max(2);
    let many = simulate_total_progeny(&d, &cfg)?;
    cfg.workers = 1;
    let one = simulate_total_progeny(&d, &cfg)?;
    let report = gof_compare(&many, &law, 30)?;
    let max_abs_z_first_20 = report
        .cells
        .iter()
        .filter(|c| c.to.is_some_and(|t| t <= 20))
        .map(|c| c.z_score.abs())
        .fold(0.0, f64::max);
    Ok(MonteCarloOutcome {
        report,
        max_abs_z_first_20,
        workers_agree: many == one,
    })
}

fn montecarlo(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let m = montecarlo_outcome(opts)?;
    Ok(vec![
        Check::at_most("chi-square vs 0.999 quantile", m.report.chi_square, m.report.quantile_999),
        Check::at_most("max |z| for l <= 20", m.max_abs_z_first_20, 4.0),
        Check::holds("identical counts for 1 and many workers", m.workers_agree),
    ])
}

pub const GENERAL_LAW_CASES: [(f64, f64); 6] = [
    (1.75, 0.25),
    (1.75, 0.49),
    (2.5, 0.25),
    (2.5, 0.49),
    (4.0, 0.25),
    (4.0, 0.49),
];

/// Slopes of log qℓ against log ℓ over ℓ ∈ [10³, 10⁴] (asymptotic path, exact path).
pub fn general_tail_slopes(law: &GeneralProgenyLaw) -> Result<(f64, f64)> {
    let ells: Vec<u64> = (0..=10).map(|i| (1000.0 * 10f64.powf(i as f64 / 10.0)).round() as u64).collect();
    let lx: Vec<f64> = ells.iter().map(|l| (*l as f64).ln()).collect();
    let asy: Vec<f64> = ells
        .iter()
        .map(|l| general_progeny_pmf_asymptotic(law, *l).map(f64::ln))
        .collect::<Result<_>>()?;
    let exact: Vec<f64> = ells
        .iter()
        .map(|l| general_progeny_pmf(law, *l).map(f64::ln))
        .collect::<Result<_>>()?;
    Ok((slope(&lx, &asy), slope(&lx, &exact)))
}

fn general_law() -> Result<Vec<Check>> {
    let mut worst_mass = 0.0_f64;
    let mut worst_slope = 0.0_f64;
    for (c, x) in GENERAL_LAW_CASES {
        let law = GeneralProgenyLaw::new(c, x)?;
        worst_mass = worst_mass.max((general_total_mass(&law)?.value - 1.0).abs());
        let (sa, se) = general_tail_slopes(&law)?;
        worst_slope = worst_slope.max((sa - (0.5 - c)).abs()).max((se - (0.5 - c)).abs());
    }
    Ok(vec![
        Check::at_most("max |sum q_l - 1| over 6 (c,x)", worst_mass, 1e-8),
        Check::at_most("max |tail slope - (1/2 - c)| over l in [1e3,1e4]", worst_slope, 0.1),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn slope_of_line() {
        assert!((slope(&[1.0, 2.0, 3.0], &[5.0, 3.0, 1.0]) + 2.0).abs() < 1e-15);
    }

    #[test]
    fn interior_points_are_interior() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let p = random_interior_point(&mut rng);
            let v = convergence_check(&p);
            assert!(v.convergent && !v.on_boundary);
            assert!(p.x() > -p.eta());
        }
    }

    #[test]
    fn convergence_suite_passes() {
        let r = run_suite(Suite::ConvergenceDomain, &VerifyOptions::default()).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn check_nan_fails() {
        assert!(!Check::at_most("x", f64::NAN, 1.0).passed);
    }
}
