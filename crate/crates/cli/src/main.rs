mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypersum::branching::{
    general_progeny_table, progeny_pgf_elementary, progeny_pmf_table, GeneralProgenyLaw,
    ProgenyHalfLaw, ScaledSibuya,
};
use hypersum::hypersum::{
    convergence_check, sum_auto, sum_closed, sum_direct, sum_special, SumOptions, SumParams,
};
use hypersum::mc_sim::{gof_compare, simulate_total_progeny, SimConfig};
use hypersum::special_fn::{
    gauss_point, hyp2f1_half_one_with, hyp2f1_series, EvalResult, HypParams, Method, SeriesOptions,
};
use hypersum::verify::{run_suite, Suite, VerifyOptions};
use hypersum::Error;

use output::{float, normalize_floats, Emitter, Format, Record};

const EXIT_REJECTED: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_VERIFY_FAILED: u8 = 4;

#[derive(Parser)]
#[command(name = "hypersum", version, about = "Weighted hypergeometric sums and total-progeny laws")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write records to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate 2F1(a, b; c; x).
    Hyp2f1 {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
    },
    /// Evaluate the weighted sum S(eta, c; x).
    Sum {
        #[arg(long)]
        eta: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, value_enum, default_value_t = SumMethod::Auto)]
        method: SumMethod,
    },
    /// Total-progeny distributions.
    Progeny {
        #[command(subcommand)]
        query: ProgenyQuery,
    },
    /// Simulate total progeny and test it against the exact law.
    Simulate {
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        cap: u64,
        #[arg(long)]
        workers: Option<usize>,
        /// Number of leading chi-square cells before the pooled tail.
        #[arg(long, default_value_t = 30)]
        bins: usize,
    },
    /// Run verification suites; exits 4 if any check fails.
    Verify {
        /// Suite name, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        replicates: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ProgenyQuery {
    /// p_l for l = 1..=lmax.
    Pmf {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        lmax: usize,
    },
    /// Probability generating function at z.
    Pgf {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        z: f64,
    },
    /// q_l of the general law for l = 1..=lmax.
    General {
        #[arg(long)]
        c: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long)]
        lmax: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SumMethod {
    Direct,
    Closed,
    Special,
    Auto,
}

/// A failed command: the error plus the fields to echo.
struct Failure {
    error: Error,
    inputs: Record,
}

fn status(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "DomainError",
        Error::NotConvergent(_) => "NotConvergent",
        Error::NonConvergent { .. } => "NonConvergent",
        Error::SlowConvergence { .. } => "SlowConvergence",
        Error::Overflow(_) => "Overflow",
        Error::RootFindFailure { .. } => "RootFindFailure",
        Error::QuadratureFailure { .. } => "QuadratureFailure",
        Error::InsufficientData(_) => "InsufficientData",
    }
}

fn max_terms() -> Result<Option<usize>, Error> {
    match std::env::var("HYPERSUM_MAX_TERMS") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n > 0)
            .map(Some)
            .ok_or_else(|| Error::Domain(format!("HYPERSUM_MAX_TERMS must be a positive integer, got {s:?}"))),
        Err(_) => Ok(None),
    }
}

fn eval_fields(r: &EvalResult) -> Record {
    vec![
        ("value", float(r.value)),
        ("abs_error_estimate", float(r.abs_error_estimate)),
        ("terms_used", json!(r.terms_used)),
        ("method", json!(format!("{:?}", r.method))),
    ]
}

fn hyp2f1(a: f64, b: f64, c: f64, x: f64, tol: f64, cap: Option<usize>) -> Result<EvalResult, Error> {
    let p = HypParams::new(a, b, c, x)?;
    let mut opts = SeriesOptions {
        tol,
        ..SeriesOptions::default()
    };
    if let Some(n) = cap {
        opts.max_terms = n;
    }
    if (a == 0.5 && b == 1.0) || (a == 1.0 && b == 0.5) {
        return hyp2f1_half_one_with(c, x, &opts);
    }
    if x == 1.0 {
        let value = gauss_point(a, b, c)?;
        return Ok(EvalResult {
            value,
            abs_error_estimate: 4.0 * f64::EPSILON * value.abs(),
            terms_used: 0,
            method: Method::GaussPoint,
        });
    }
    if x.abs() >= 1.0 {
        return Err(Error::Domain(format!("2F1 is evaluated for |x| < 1 or x = 1, got x = {x}")));
    }
    hyp2f1_series(&p, opts.tol, opts.max_terms)
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let cap = max_terms().map_err(|error| Failure { error, inputs: vec![] })?;
    let io = |e: std::io::Error| {
        eprintln!("hypersum: output error: {e}");
        Failure {
            error: Error::Domain(format!("cannot write output: {e}")),
            inputs: vec![],
        }
    };
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Hyp2f1 { a, b, c, x, tol } => {
            let inputs: Record = vec![
                ("a", float(*a)),
                ("b", float(*b)),
                ("c", float(*c)),
                ("x", float(*x)),
                ("tol", float(*tol)),
            ];
            let r = hyp2f1(*a, *b, *c, *x, *tol, cap).map_err(|error| Failure { error, inputs: inputs.clone() })?;
            let mut em = Emitter::new(cli.format, HYP2F1_HEADER, out).map_err(io)?;
            let mut rec = inputs;
            rec.extend(eval_fields(&r));
            rec.push(("status", json!("ok")));
            em.emit(rec).map_err(io)?;
            em.finish().map_err(io)?;
        }
        Command::Sum { eta, c, x, method } => {
            let inputs: Record = vec![
                ("eta", float(*eta)),
                ("c", float(*c)),
                ("x", float(*x)),
                ("requested", json!(format!("{method:?}").to_lowercase())),
            ];
            let fail = |error| Failure { error, inputs: inputs.clone() };
            let p = SumParams::new(*eta, *c, *x).map_err(fail)?;
            let verdict = convergence_check(&p);
            let mut opts = SumOptions::default();
            if let Some(n) = cap {
                opts.max_terms = n;
            }
            let r = match method {
                SumMethod::Direct => sum_direct(&p, &opts),
                SumMethod::Closed => sum_closed(&p),
                SumMethod::Special => sum_special(&p),
                SumMethod::Auto => sum_auto(&p, &opts),
            }
            .map_err(fail)?;
            let mut em = Emitter::new(cli.format, SUM_HEADER, out).map_err(io)?;
            let mut rec = inputs.clone();
            rec.extend(eval_fields(&r));
            rec.push(("convergent", json!(verdict.convergent)));
            rec.push(("on_boundary", json!(verdict.on_boundary)));
            rec.push(("reason", json!(format!("{:?}", verdict.reason))));
            rec.push(("status", json!("ok")));
            em.emit(rec).map_err(io)?;
            em.finish().map_err(io)?;
        }
        Command::Progeny { query } => match query {
            ProgenyQuery::Pmf { lambda, lmax } => {
                let inputs: Record = vec![("lambda", float(*lambda))];
                let fail = |error| Failure { error, inputs: inputs.clone() };
                let law = ProgenyHalfLaw::new(*lambda).map_err(fail)?;
                let table = progeny_pmf_table(&law, *lmax).map_err(fail)?;
                emit_table(cli.format, out, PMF_HEADER, &inputs, &table).map_err(io)?;
            }
            ProgenyQuery::Pgf { lambda, z } => {
                let inputs: Record = vec![("lambda", float(*lambda)), ("z", float(*z))];
                let fail = |error| Failure { error, inputs: inputs.clone() };
                let law = ProgenyHalfLaw::new(*lambda).map_err(fail)?;
                let v = progeny_pgf_elementary(&law, *z).map_err(fail)?;
                let mut em = Emitter::new(cli.format, PGF_HEADER, out).map_err(io)?;
                let mut rec = inputs.clone();
                rec.push(("value", float(v)));
                rec.push(("status", json!("ok")));
                em.emit(rec).map_err(io)?;
                em.finish().map_err(io)?;
            }
            ProgenyQuery::General { c, x, lmax } => {
                let inputs: Record = vec![("c", float(*c)), ("x", float(*x))];
                let fail = |error| Failure { error, inputs: inputs.clone() };
                let law = GeneralProgenyLaw::new(*c, *x).map_err(fail)?;
                let table = general_progeny_table(&law, *lmax).map_err(fail)?;
                emit_table(cli.format, out, GENERAL_HEADER, &inputs, &table).map_err(io)?;
            }
        },
        Command::Simulate {
            alpha,
            lambda,
            n,
            seed,
            cap: progeny_cap,
            workers,
            bins,
        } => {
            let inputs: Record = vec![
                ("alpha", float(*alpha)),
                ("lambda", float(*lambda)),
                ("n", json!(n)),
                ("seed", json!(seed)),
                ("cap", json!(progeny_cap)),
            ];
            let fail = |error| Failure { error, inputs: inputs.clone() };
            let d = ScaledSibuya::new(*alpha, *lambda).map_err(fail)?;
            if *alpha != 0.5 {
                return Err(fail(Error::Domain(
                    "the exact progeny law is available for alpha = 0.5 only".into(),
                )));
            }
            let law = ProgenyHalfLaw::new(*lambda).map_err(fail)?;
            let mut cfg = SimConfig::new(*seed, *n);
            cfg.progeny_cap = *progeny_cap;
            if let Some(w) = workers {
                cfg.workers = *w;
            }
            let counts = simulate_total_progeny(&d, &cfg).map_err(fail)?;
            let report = gof_compare(&counts, &law, *bins).map_err(fail)?;
            let mut em = Emitter::new(cli.format, SIMULATE_HEADER, out).map_err(io)?;
            match cli.format {
                Format::Json => {
                    let mut rec = inputs.clone();
                    let body = normalize_floats(serde_json::to_value(&report).expect("report serializes"));
                    rec.push(("passed", json!(report.passes())));
                    rec.push(("report", body));
                    rec.push(("status", json!("ok")));
                    em.emit(rec).map_err(io)?;
                }
                Format::Csv => {
                    for cell in &report.cells {
                        let mut rec = inputs.clone();
                        rec.push(("from", json!(cell.from)));
                        rec.push(("to", cell.to.map_or(Value::Null, |t| json!(t))));
                        rec.push(("observed", json!(cell.observed)));
                        rec.push(("expected", float(cell.expected)));
                        rec.push(("z_score", float(cell.z_score)));
                        rec.push(("chi_square", float(report.chi_square)));
                        rec.push(("dof", json!(report.dof)));
                        rec.push(("quantile_999", float(report.quantile_999)));
                        rec.push(("p_value", float(report.p_value)));
                        rec.push(("passed", json!(report.passes())));
                        rec.push(("status", json!("ok")));
                        em.emit(rec).map_err(io)?;
                    }
                }
            }
            em.finish().map_err(io)?;
        }
        Command::Verify {
            suite,
            seed,
            replicates,
            workers,
        } => {
            let inputs: Record = vec![("suite", json!(suite))];
            let fail = |error| Failure { error, inputs: inputs.clone() };
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse().map_err(fail)?]
            };
            let mut opts = VerifyOptions::default();
            if let Some(s) = seed {
                opts.seed = *s;
            }
            if let Some(r) = replicates {
                opts.mc_replicates = *r;
            }
            if let Some(w) = workers {
                opts.workers = *w;
            }
            let mut em = Emitter::new(cli.format, VERIFY_HEADER, out).map_err(io)?;
            let mut all_passed = true;
            for s in suites {
                let report = run_suite(s, &opts).map_err(|error| Failure {
                    error,
                    inputs: vec![("suite", json!(s.name()))],
                })?;
                all_passed &= report.passed;
                let verdict = if report.passed { "pass" } else { "fail" };
                match cli.format {
                    Format::Json => {
                        let checks = normalize_floats(serde_json::to_value(&report.checks).expect("checks serialize"));
                        em.emit(vec![
                            ("suite", json!(s.name())),
                            ("passed", json!(report.passed)),
                            ("checks", checks),
                            ("status", json!(verdict)),
                        ])
                        .map_err(io)?;
                    }
                    Format::Csv => {
                        for c in &report.checks {
                            em.emit(vec![
                                ("suite", json!(s.name())),
                                ("check", json!(c.name)),
                                ("measured", float(c.measured)),
                                ("limit", float(c.limit)),
                                ("passed", json!(c.passed)),
                                ("status", json!(verdict)),
                            ])
                            .map_err(io)?;
                        }
                    }
                }
                eprintln!("hypersum: suite {s}: {verdict}");
            }
            em.finish().map_err(io)?;
            if !all_passed {
                return Ok(ExitCode::from(EXIT_VERIFY_FAILED));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

const HYP2F1_HEADER: &[&str] = &["a", "b", "c", "x", "tol", "value", "abs_error_estimate", "terms_used", "method", "status", "message"];
const SUM_HEADER: &[&str] = &[
    "eta", "c", "x", "requested", "value", "abs_error_estimate", "terms_used", "method", "convergent",
    "on_boundary", "reason", "status", "message",
];
const PMF_HEADER: &[&str] = &["lambda", "ell", "value", "cumulative", "status", "message"];
const PGF_HEADER: &[&str] = &["lambda", "z", "value", "status", "message"];
const GENERAL_HEADER: &[&str] = &["c", "x", "ell", "value", "cumulative", "status", "message"];
const SIMULATE_HEADER: &[&str] = &[
    "alpha", "lambda", "n", "seed", "cap", "from", "to", "observed", "expected", "z_score", "chi_square",
    "dof", "quantile_999", "p_value", "passed", "report", "status", "message",
];
const VERIFY_HEADER: &[&str] = &["suite", "check", "measured", "limit", "passed", "checks", "status", "message"];

fn header_for(cmd: &Command) -> &'static [&'static str] {
    match cmd {
        Command::Hyp2f1 { .. } => HYP2F1_HEADER,
        Command::Sum { .. } => SUM_HEADER,
        Command::Progeny { query } => match query {
            ProgenyQuery::Pmf { .. } => PMF_HEADER,
            ProgenyQuery::Pgf { .. } => PGF_HEADER,
            ProgenyQuery::General { .. } => GENERAL_HEADER,
        },
        Command::Simulate { .. } => SIMULATE_HEADER,
        Command::Verify { .. } => VERIFY_HEADER,
    }
}

fn emit_table(
    format: Format,
    out: Option<&std::path::Path>,
    header: &'static [&'static str],
    inputs: &Record,
    values: &[f64],
) -> std::io::Result<()> {
    let mut em = Emitter::new(format, header, out)?;
    let mut cumulative = 0.0;
    for (i, v) in values.iter().enumerate() {
        cumulative += v;
        let mut rec = inputs.clone();
        rec.push(("ell", json!(i + 1)));
        rec.push(("value", float(*v)));
        rec.push(("cumulative", float(cumulative)));
        rec.push(("status", json!("ok")));
        em.emit(rec)?;
    }
    em.finish()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure { error, mut inputs }) => {
            eprintln!("hypersum: {error}");
            inputs.push(("status", json!(status(&error))));
            if let Error::NotConvergent(reason) = &error {
                inputs.push(("reason", json!(format!("{reason:?}"))));
            }
            inputs.push(("message", json!(error.to_string())));
            let header = header_for(&cli.command);
            let inputs: Record = inputs.into_iter().filter(|(k, _)| header.contains(k)).collect();
            if let Ok(mut em) = Emitter::new(cli.format, header, cli.out.as_deref()) {
                let _ = em.emit(inputs).and_then(|_| em.finish());
            }
            ExitCode::from(if error.is_rejection() { EXIT_REJECTED } else { EXIT_NUMERICAL })
        }
    }
}
