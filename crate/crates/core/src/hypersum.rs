//! The weighted sum
//!
//! ```text
//! S(η,c;x) = Σ_{k≥0} ((1−x)/(1+η))ᵏ ₂F₁(k/2+½, k/2+1; c; x)
//! ```
//!
//! by direct summation and in closed form, S = (1/X)·₂F₁(½,1;c;x/X²) with
//! X = (x+η)/(1+η), together with its convergence domain, the elementary
//! forms for c = 1, 2, 3 and Letac's companion sum.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special_fn::{
    gamma, hyp2f1_half_one, hyp2f1_series_scaled, recip_gamma, EvalResult, HalfStepTerms,
    HypParams, Method,
};

/// Parameters (η, c, x) of S(η,c;x).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumParams {
    eta: f64,
    c: f64,
    x: f64,
}

impl SumParams {
    pub fn new(eta: f64, c: f64, x: f64) -> Result<Self> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::domain(format!("eta must be positive, got {eta}")));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::domain(format!("c must be positive, got {c}")));
        }
        if !(-1.0..=1.0).contains(&x) {
            return Err(Error::domain(format!("x must lie in [-1, 1], got {x}")));
        }
        Ok(SumParams { eta, c, x })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// The summation weight (1−x)/(1+η).
    pub fn weight(&self) -> f64 {
        (1.0 - self.x) / (1.0 + self.eta)
    }

    pub fn closed_form_argument(&self) -> ClosedFormArgument {
        let big_x = (self.x + self.eta) / (1.0 + self.eta);
        let xi_star = (self.eta != 1.0)
            .then(|| ((self.eta + 1.0) / (self.eta - 1.0)).powi(2));
        ClosedFormArgument {
            big_x,
            xi: self.x / (big_x * big_x),
            xi_star,
        }
    }

    /// Asymptotic ratio of successive terms: (1+√x)/(1+η) for x ≥ 0 and
    /// √(1−x)/(1+η) for x < 0.
    pub fn term_ratio(&self) -> f64 {
        if self.x >= 0.0 {
            (1.0 + self.x.sqrt()) / (1.0 + self.eta)
        } else {
            (1.0 - self.x).sqrt() / (1.0 + self.eta)
        }
    }
}

/// X = (x+η)/(1+η), ξ = x/X² and ξ* = (η+1)²/(η−1)² (absent at η = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormArgument {
    pub big_x: f64,
    /// Infinite or NaN when X = 0.
    pub xi: f64,
    pub xi_star: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictReason {
    /// Strictly inside the convergence region (or x = 1 with c > 3/2).
    Interior,
    /// On the boundary η = √x or η = √(1+|x|)−1; convergent iff c > 3/2.
    BoundaryNeedsLargeC,
    DivergentPositiveX,
    DivergentNegativeX,
    /// x = 1 with c ≤ 3/2.
    DivergentAtOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConvergenceVerdict {
    pub convergent: bool,
    pub on_boundary: bool,
    pub reason: VerdictReason,
}

/// The critical η below which the sum diverges: √x for x > 0 and
/// √(1+|x|)−1 for x < 0.
pub fn critical_eta(x: f64) -> f64 {
    if x >= 0.0 {
        x.sqrt()
    } else {
        (1.0 - x).sqrt() - 1.0
    }
}

pub fn convergence_check(p: &SumParams) -> ConvergenceVerdict {
    let (eta, c, x) = (p.eta, p.c, p.x);
    let large_c = c > 1.5;
    if x == 0.0 {
        return ConvergenceVerdict {
            convergent: true,
            on_boundary: false,
            reason: VerdictReason::Interior,
        };
    }
    if x == 1.0 {
        return ConvergenceVerdict {
            convergent: large_c,
            on_boundary: false,
            reason: if large_c {
                VerdictReason::Interior
            } else {
                VerdictReason::DivergentAtOne
            },
        };
    }
    let bound = critical_eta(x);
    let on_boundary = (eta - bound).abs() <= 4.0 * f64::EPSILON * bound.max(1.0);
    let divergent = if x > 0.0 {
        VerdictReason::DivergentPositiveX
    } else {
        VerdictReason::DivergentNegativeX
    };
    if on_boundary {
        return ConvergenceVerdict {
            convergent: large_c,
            on_boundary,
            reason: VerdictReason::BoundaryNeedsLargeC,
        };
    }
    let convergent = eta > bound;
    ConvergenceVerdict {
        convergent,
        on_boundary,
        reason: if convergent {
            VerdictReason::Interior
        } else {
            divergent
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InnerMethod {
    /// Weighted contiguous recurrence (default).
    Recurrence,
    /// Independent log-scaled power series for every term.
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumOptions {
    pub tol: f64,
    pub max_terms: usize,
    pub inner: InnerMethod,
    /// Sum even when the verdict is divergent.
    pub allow_divergent: bool,
}

impl Default for SumOptions {
    fn default() -> Self {
        SumOptions {
            tol: 1e-15,
            max_terms: 100_000,
            inner: InnerMethod::Recurrence,
            allow_divergent: false,
        }
    }
}

/// Produces the weighted terms wᵏ·₂F₁(k/2+½, k/2+1; c; x).
enum TermSource {
    Recurrence(HalfStepTerms),
    Series { c: f64, x: f64, ln_w: f64, k: u64, tol: f64 },
}

impl TermSource {
    fn new(c: f64, x: f64, w: f64, inner: InnerMethod) -> Result<Self> {
        Ok(match inner {
            InnerMethod::Recurrence => TermSource::Recurrence(HalfStepTerms::new(c, x, w)?),
            InnerMethod::Series => TermSource::Series {
                c,
                x,
                ln_w: w.ln(),
                k: 0,
                tol: 1e-16,
            },
        })
    }

    fn next_term(&mut self) -> Result<f64> {
        match self {
            TermSource::Recurrence(it) => Ok(it.next().expect("iterator is infinite")),
            TermSource::Series { c, x, ln_w, k, tol } => {
                let kf = *k as f64;
                let p = HypParams::new(0.5 * kf + 0.5, 0.5 * kf + 1.0, *c, *x)?;
                let s = hyp2f1_series_scaled(&p, *tol, 1_000_000)?;
                *k += 1;
                if s.mantissa == 0.0 {
                    return Ok(0.0);
                }
                Ok(s.sign() * (s.ln_abs() + kf * *ln_w).exp())
            }
        }
    }
}

/// Partial sums S₀, S₁, …, S_{n−1} with no convergence check.
pub fn direct_partial_sums(p: &SumParams, n: usize, inner: InnerMethod) -> Result<Vec<f64>> {
    if p.x == 1.0 {
        return Err(Error::domain("partial sums need x < 1"));
    }
    let mut src = TermSource::new(p.c, p.x, p.weight(), inner)?;
    let mut out = Vec::with_capacity(n);
    let mut sum = 0.0;
    for _ in 0..n {
        sum += src.next_term()?;
        out.push(sum);
    }
    Ok(out)
}

/// S(η,c;x) by term-wise summation.
///
/// Stops after three consecutive terms below `tol·max(1,|S|)` once the
/// geometric tail bound (ratio from [`SumParams::term_ratio`]) is below the
/// same level. On the boundary of the convergence region the terms decay
/// like k^(½−c); the remainder is then estimated as |T_K|·K/(c−3/2). For
/// x > 0 that estimate is added to the value; in every case it is included
/// in the error estimate.
pub fn sum_direct(p: &SumParams, opts: &SumOptions) -> Result<EvalResult> {
    let verdict = convergence_check(p);
    if !verdict.convergent && !opts.allow_divergent {
        return Err(Error::NotConvergent(verdict.reason));
    }
    if p.x == 1.0 {
        // the weight vanishes; only the k = 0 term survives
        let head = hyp2f1_half_one(p.c, 1.0)?;
        return Ok(EvalResult {
            terms_used: 1,
            method: Method::Series,
            ..head
        });
    }
    let rho = p.term_ratio();
    let boundary = verdict.on_boundary || rho >= 1.0;
    let mut src = TermSource::new(p.c, p.x, p.weight(), opts.inner)?;
    let mut sum = 0.0_f64;
    let mut abs_sum = 0.0_f64;
    let mut small_run = 0usize;
    let mut recent = [0.0_f64; 3];
    let mut last_tail = f64::INFINITY;
    for k in 0..opts.max_terms {
        let t = src.next_term()?;
        if !t.is_finite() {
            return Err(Error::Overflow(format!("term {k} of the direct sum")));
        }
        sum += t;
        abs_sum += t.abs();
        recent[k % 3] = t.abs();
        let scale = sum.abs().max(1.0);
        if t.abs() <= opts.tol * scale {
            small_run += 1;
        } else {
            small_run = 0;
        }
        let amp = recent.iter().cloned().fold(0.0, f64::max);
        let kf = (k + 1) as f64;
        last_tail = if boundary {
            amp * kf / (p.c - 1.5)
        } else {
            amp * rho / (1.0 - rho)
        };
        if small_run >= 3 && last_tail <= opts.tol * scale {
            return Ok(EvalResult {
                value: sum,
                abs_error_estimate: last_tail + 4.0 * f64::EPSILON * abs_sum * kf.sqrt(),
                terms_used: k + 1,
                method: Method::Series,
            });
        }
    }
    let n = opts.max_terms;
    if boundary && p.c > 1.5 {
        let (value, tail) = if p.x > 0.0 {
            (sum + last_tail, last_tail)
        } else {
            (sum, last_tail)
        };
        return Ok(EvalResult {
            value,
            abs_error_estimate: tail + 4.0 * f64::EPSILON * abs_sum * (n as f64).sqrt(),
            terms_used: n,
            method: Method::Series,
        });
    }
    Err(Error::SlowConvergence {
        terms: n,
        partial: sum,
        tail: last_tail,
    })
}

/// Γ(c)/Γ(c−½)·√(π/η), the value at x = −η.
fn value_at_minus_eta(eta: f64, c: f64) -> f64 {
    gamma(c) * recip_gamma(c - 0.5) * (std::f64::consts::PI / eta).sqrt()
}

/// Elementary S for c ∈ {1,2,3}; stable in s = R/A with A = η+x and
/// R = √((1−x)(η²−x)), valid for either sign of A.
fn elementary(eta: f64, c: f64, x: f64) -> Option<f64> {
    let a = eta + x;
    let r = ((1.0 - x) * (eta * eta - x)).sqrt();
    let n = 1.0 + eta;
    if c == 1.0 {
        return (r > 0.0).then(|| n / r);
    }
    if a == 0.0 {
        return match c {
            2.0 => Some(2.0 * n / r),
            3.0 => Some(8.0 * n / (3.0 * r)),
            _ => None,
        };
    }
    match c {
        2.0 => Some(2.0 * n / (a + r)),
        3.0 => {
            let s = r / a;
            Some(4.0 * n * (1.0 + 2.0 * s) / (3.0 * a * (1.0 + s) * (1.0 + s)))
        }
        _ => None,
    }
}

/// S(η,c;x) = (1/X)·₂F₁(½,1;c;x/X²).
///
/// At x = −η the limit Γ(c)/Γ(c−½)·√(π/η) is returned. For x < −η (only
/// possible when η < 1) X is negative and the closed form has to be
/// continued through the square root; that is done for c ∈ {1,2,3} and the
/// result is tagged [`Method::Continuation`].
pub fn sum_closed(p: &SumParams) -> Result<EvalResult> {
    let verdict = convergence_check(p);
    if !verdict.convergent {
        return Err(Error::NotConvergent(verdict.reason));
    }
    let arg = p.closed_form_argument();
    if arg.big_x == 0.0 {
        return Ok(EvalResult::closed(value_at_minus_eta(p.eta, p.c), Method::ClosedForm));
    }
    if arg.big_x < 0.0 {
        return elementary(p.eta, p.c, p.x)
            .map(|v| EvalResult::closed(v, Method::Continuation))
            .ok_or_else(|| {
                Error::domain(format!(
                    "x = {} < -eta = {} needs analytic continuation, available only for c in {{1,2,3}}",
                    p.x, -p.eta
                ))
            });
    }
    if arg.xi > 1.0 || (arg.xi == 1.0 && p.c <= 1.5) {
        return Err(Error::domain(format!(
            "closed-form argument xi = {} outside the summation domain",
            arg.xi
        )));
    }
    let f = hyp2f1_half_one(p.c, arg.xi)?;
    Ok(f.scaled(1.0 / arg.big_x))
}

/// Elementary closed forms for c ∈ {1, 2, 3}. At x = 0 the removable
/// singularity takes the limit (1+η)/η.
pub fn sum_special(p: &SumParams) -> Result<EvalResult> {
    let (eta, c, x) = (p.eta, p.c, p.x);
    if !(c == 1.0 || c == 2.0 || c == 3.0) {
        return Err(Error::domain(format!("elementary forms exist for c in {{1,2,3}}, got {c}")));
    }
    let verdict = convergence_check(p);
    if !verdict.convergent {
        return Err(Error::NotConvergent(verdict.reason));
    }
    if x == 0.0 {
        return Ok(EvalResult::closed((1.0 + eta) / eta, Method::ClosedForm));
    }
    let value = elementary(eta, c, x)
        .ok_or_else(|| Error::domain("elementary form undefined here"))?;
    let method = if eta + x < 0.0 {
        Method::Continuation
    } else {
        Method::ClosedForm
    };
    Ok(EvalResult::closed(value, method))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LetacMethod {
    Direct,
    Closed,
}

/// S_L = Σ_{k≥1} zᵏ ₂F₁(k/2, k/2+½; c; x) = (z/(1−z))·₂F₁(½,1;c;x/(1−z)²)
/// for 0 < z < 1 and 0 ≤ x < (1−z)².
pub fn letac_sum(z: f64, c: f64, x: f64, method: LetacMethod) -> Result<EvalResult> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::domain(format!("z must lie in (0,1), got {z}")));
    }
    if !(c > 0.0) {
        return Err(Error::domain(format!("c must be positive, got {c}")));
    }
    let limit = (1.0 - z) * (1.0 - z);
    if !(x >= 0.0 && x < limit) {
        return Err(Error::domain(format!(
            "x must lie in [0, (1-z)^2) = [0, {limit}), got {x}"
        )));
    }
    match method {
        LetacMethod::Closed => {
            Ok(hyp2f1_half_one(c, x / limit)?.scaled(z / (1.0 - z)))
        }
        LetacMethod::Direct => {
            // Σ_{k≥1} zᵏ g_k = z·Σ_{j≥0} zʲ ₂F₁(j/2+½, j/2+1; c; x)
            let rho = z / (1.0 - x.sqrt());
            let tol = 1e-15;
            let mut it = HalfStepTerms::new(c, x, z)?;
            let mut sum = 0.0_f64;
            let mut small_run = 0;
            for j in 0..10_000_000usize {
                let t = it.next().expect("iterator is infinite");
                sum += t;
                if t.abs() <= tol * sum.abs().max(1.0) {
                    small_run += 1;
                } else {
                    small_run = 0;
                }
                let tail = t.abs() * rho / (1.0 - rho);
                if small_run >= 3 && tail <= tol * sum.abs().max(1.0) {
                    let n = j + 1;
                    return Ok(EvalResult {
                        value: z * sum,
                        abs_error_estimate: z
                            * (tail + 4.0 * f64::EPSILON * sum.abs() * (n as f64).sqrt()),
                        terms_used: n,
                        method: Method::Series,
                    });
                }
            }
            Err(Error::SlowConvergence {
                terms: 10_000_000,
                partial: z * sum,
                tail: f64::NAN,
            })
        }
    }
}

/// ½·Σ_{k≥0} ((1−x)/2)ᵏ ₂F₁(k/2+½, k/2+1; 2; x), identically 1 on [−1, 1].
pub fn normalization_identity(x: f64) -> Result<f64> {
    let p = SumParams::new(1.0, 2.0, x)?;
    Ok(0.5 * sum_direct(&p, &SumOptions::default())?.value)
}

/// Closed form where available, otherwise direct summation. Direct is used
/// when ξ is within 1e−6 of 1 with c ≤ 3/2 + 1e−6, or when the closed form
/// is unavailable (continuation for c ∉ {1,2,3}).
pub fn sum_auto(p: &SumParams, opts: &SumOptions) -> Result<EvalResult> {
    let arg = p.closed_form_argument();
    let near_singular = (arg.xi - 1.0).abs() <= 1e-6 && p.c <= 1.5 + 1e-6;
    if !near_singular {
        match sum_closed(p) {
            Ok(r) => return Ok(r),
            Err(Error::Domain(_)) => {}
            Err(e) => return Err(e),
        }
    }
    sum_direct(p, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(eta: f64, c: f64, x: f64) -> SumParams {
        SumParams::new(eta, c, x).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(SumParams::new(0.0, 1.0, 0.0).is_err());
        assert!(SumParams::new(1.0, -1.0, 0.0).is_err());
        assert!(SumParams::new(1.0, 1.0, 1.5).is_err());
    }

    #[test]
    fn verdict_examples() {
        let v = convergence_check(&sp(0.5, 1.0, 0.3));
        assert!(!v.convergent);
        assert_eq!(v.reason, VerdictReason::DivergentPositiveX);
        let v = convergence_check(&sp(0.5, 2.0, 0.25));
        assert!(v.convergent && v.on_boundary);
        let v = convergence_check(&sp(0.5, 1.0, 0.25));
        assert!(!v.convergent && v.on_boundary);
        assert!(convergence_check(&sp(0.4, 1.0, -0.5)).convergent);
        assert!(!convergence_check(&sp(0.2, 1.0, -0.5)).convergent);
        assert_eq!(
            convergence_check(&sp(3.0, 1.5, 1.0)).reason,
            VerdictReason::DivergentAtOne
        );
        assert!(convergence_check(&sp(0.01, 0.1, 0.0)).convergent);
    }

    #[test]
    fn closed_form_argument_fields() {
        let a = sp(0.5, 2.0, 0.25).closed_form_argument();
        assert!((a.big_x - 0.5).abs() < 1e-15);
        assert!((a.xi - 1.0).abs() < 1e-15);
        assert!((a.xi_star.unwrap() - 9.0).abs() < 1e-14);
        assert!(sp(1.0, 2.0, 0.5).closed_form_argument().xi_star.is_none());
    }

    #[test]
    fn direct_examples() {
        let o = SumOptions::default();
        assert!(rel(sum_direct(&sp(1.0, 2.0, 0.0), &o).unwrap().value, 2.0) < 1e-14);
        assert!(rel(sum_direct(&sp(1.0, 1.0, 0.5), &o).unwrap().value, 4.0) < 1e-13);
        assert!(rel(sum_direct(&sp(1.0, 3.0, -1.0), &o).unwrap().value, 8.0 / 3.0) < 1e-13);
    }

    #[test]
    fn direct_refuses_divergent() {
        let r = sum_direct(&sp(0.5, 1.0, 0.5), &SumOptions::default());
        assert_eq!(r, Err(Error::NotConvergent(VerdictReason::DivergentPositiveX)));
    }

    #[test]
    fn inner_methods_agree() {
        let p = sp(1.3, 2.7, 0.4);
        let a = sum_direct(&p, &SumOptions::default()).unwrap();
        let b = sum_direct(
            &p,
            &SumOptions {
                inner: InnerMethod::Series,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(rel(a.value, b.value) < 1e-12);
    }

    #[test]
    fn closed_examples() {
        assert!(rel(sum_closed(&sp(1.0, 2.0, 1.0)).unwrap().value, 2.0) < 1e-15);
        assert!(rel(sum_closed(&sp(0.25, 2.0, -0.25)).unwrap().value, 4.0) < 1e-14);
        assert!(rel(sum_closed(&sp(0.5, 2.0, 0.25)).unwrap().value, 4.0) < 1e-14);
    }

    #[test]
    fn closed_continuation_tagged() {
        let r = sum_closed(&sp(0.5, 2.0, -0.8)).unwrap();
        assert_eq!(r.method, Method::Continuation);
        assert!(matches!(sum_closed(&sp(0.5, 2.5, -0.8)), Err(Error::Domain(_))));
    }

    #[test]
    fn special_examples() {
        assert!(rel(sum_special(&sp(1.0, 1.0, 0.5)).unwrap().value, 4.0) < 1e-15);
        assert_eq!(sum_special(&sp(1.0, 2.0, 0.0)).unwrap().value, 2.0);
        let expect = (-2.0 / 3.0) * (1.0 - 10f64.sqrt());
        assert!(rel(sum_special(&sp(2.0, 2.0, -1.0)).unwrap().value, expect) < 1e-14);
        assert!(rel(sum_special(&sp(1.0, 3.0, 0.3)).unwrap().value, 2.0 - 0.2) < 1e-14);
        assert!(sum_special(&sp(1.0, 2.5, 0.3)).is_err());
    }

    #[test]
    fn special_matches_expanded_c3_form() {
        for &(eta, x) in &[(1.5_f64, 0.6_f64), (2.0, -0.7), (0.8, 0.3)] {
            let a = eta + x;
            let r2 = (1.0 - x) * (eta * eta - x);
            let n = 1.0 + eta;
            let expanded = 4.0 * a / (3.0 * n.powi(3) * x * x)
                * (3.0 * x * n * n - 2.0 * a * a + 2.0 * r2.powf(1.5) / a);
            let v = sum_special(&sp(eta, 3.0, x)).unwrap().value;
            assert!(rel(v, expanded) < 1e-11, "{eta} {x}: {v} vs {expanded}");
        }
    }

    #[test]
    fn letac_examples() {
        for m in [LetacMethod::Direct, LetacMethod::Closed] {
            assert!(rel(letac_sum(0.5, 2.0, 0.0, m).unwrap().value, 1.0) < 1e-14);
            let expect = 2.0 / 0.8 * (1.0 - 0.2f64.sqrt());
            assert!(rel(letac_sum(0.5, 2.0, 0.2, m).unwrap().value, expect) < 1e-13);
        }
        assert!(letac_sum(0.5, 2.0, 0.3, LetacMethod::Closed).is_err());
    }

    #[test]
    fn letac_proportional_to_s() {
        let p = sp(1.4, 2.3, 0.35);
        let z = p.weight();
        let l = letac_sum(z, p.c(), p.x(), LetacMethod::Closed).unwrap().value;
        let s = sum_closed(&p).unwrap().value;
        assert!(rel(l, z * s) < 1e-13);
    }

    #[test]
    fn normalization_examples() {
        for x in [0.5, -1.0, 0.0] {
            assert!((normalization_identity(x).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn divergence_witness() {
        let ps = direct_partial_sums(&sp(0.5, 1.0, 0.5), 501, InnerMethod::Recurrence).unwrap();
        assert!(ps[500].abs() > 1e6);
    }

    #[test]
    fn boundary_sum_reports_tail() {
        // η = √x, c = 2: S = (2c−2)/(2c−3)/η = 4
        let r = sum_direct(
            &sp(0.5, 2.0, 0.25),
            &SumOptions {
                max_terms: 20_000,
                ..Default::default()
            },
        )
        .unwrap();
        assert!((r.value - 4.0).abs() <= r.abs_error_estimate);
        assert!(r.abs_error_estimate < 0.1);
    }

    #[test]
    fn auto_falls_back_to_direct() {
        let r = sum_auto(&sp(0.5, 2.5, -0.8), &SumOptions::default()).unwrap();
        assert_eq!(r.method, Method::Series);
        assert!(rel(r.value, 3.5283984068) < 1e-9);
    }
}
