//! Gauss hypergeometric function ₂F₁(a, b; c; x) on the real line.
//!
//! Only the routes needed here are provided: the defining power series (with
//! a rescaled accumulator so that large parameters do not overflow), Gauss's
//! theorem at unit argument, and for the (½, 1; c) family the elementary
//! forms at integer c, the Euler transformation for moderate negative
//! arguments and the connection formula at infinity for large negative ones.

use std::f64::consts::PI;

use super::gamma::{gamma, ln_gamma_sign, recip_gamma};
use super::{EvalResult, Method};
use crate::error::{Error, Result};

/// Parameters of ₂F₁(a, b; c; x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub x: f64,
}

impl HypParams {
    pub fn new(a: f64, b: f64, c: f64, x: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite() && x.is_finite()) {
            return Err(Error::domain("hypergeometric parameters must be finite"));
        }
        if c <= 0.0 && c == c.floor() {
            return Err(Error::domain(format!(
                "c = {c} is a non-positive integer; the series is undefined"
            )));
        }
        Ok(HypParams { a, b, c, x })
    }

    pub fn swapped(self) -> Self {
        HypParams {
            a: self.b,
            b: self.a,
            ..self
        }
    }
}

/// Tolerance and term budget for series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            tol: 1e-14,
            max_terms: 100_000,
        }
    }
}

/// Term budget used for ₂F₁(½, 1; c; χ) with χ > 0.9 and non-integer c,
/// where the series converges like χⁿ.
const SLOW_SERIES_MAX_TERMS: usize = 20_000_000;

/// A series sum held as `mantissa · exp(ln_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledSum {
    pub mantissa: f64,
    pub ln_scale: f64,
    /// Absolute error bound on `mantissa` (same scale).
    pub abs_error: f64,
    pub terms: usize,
}

impl ScaledSum {
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.abs().ln() + self.ln_scale
    }

    pub fn sign(&self) -> f64 {
        if self.mantissa < 0.0 {
            -1.0
        } else {
            1.0
        }
    }

    pub fn relative_error(&self) -> f64 {
        if self.mantissa == 0.0 {
            f64::INFINITY
        } else {
            self.abs_error / self.mantissa.abs()
        }
    }

    pub fn to_eval(self) -> Result<EvalResult> {
        let factor = self.ln_scale.exp();
        let value = self.mantissa * factor;
        if !value.is_finite() {
            return Err(Error::Overflow(format!(
                "hypergeometric series value exp({:.3})",
                self.ln_abs()
            )));
        }
        Ok(EvalResult {
            value,
            abs_error_estimate: self.abs_error * factor,
            terms_used: self.terms,
            method: Method::Series,
        })
    }
}

const RESCALE_THRESHOLD: f64 = 1e250;

/// Sums the ₂F₁ power series with the ratio recurrence
/// tₙ₊₁/tₙ = (a+n)(b+n)x / ((c+n)(n+1)), rescaling the accumulator as it
/// grows. Stops once two consecutive terms fall below `tol·|sum|` and the
/// geometric tail bound from the current term ratio is below the same level.
pub fn hyp2f1_series_scaled(p: &HypParams, tol: f64, max_terms: usize) -> Result<ScaledSum> {
    let HypParams { a, b, c, x } = *p;
    if x.abs() >= 1.0 {
        return Err(Error::domain(format!(
            "series requires |x| < 1, got x = {x}"
        )));
    }
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut abs_sum = 1.0_f64;
    let mut ln_scale = 0.0_f64;
    let mut small_run = 0;
    let finish = |sum: f64, abs_sum: f64, tail: f64, ln_scale: f64, n: usize| ScaledSum {
        mantissa: sum,
        ln_scale,
        abs_error: tail + f64::EPSILON * abs_sum * (4.0 + (n as f64).sqrt()),
        terms: n,
    };
    for n in 0..max_terms {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        term *= ratio;
        if term == 0.0 {
            // terminating series (a or b a non-positive integer) or x = 0
            return Ok(finish(sum, abs_sum, 0.0, ln_scale, n + 1));
        }
        sum += term;
        abs_sum += term.abs();
        if abs_sum > RESCALE_THRESHOLD {
            term /= RESCALE_THRESHOLD;
            sum /= RESCALE_THRESHOLD;
            abs_sum /= RESCALE_THRESHOLD;
            ln_scale += RESCALE_THRESHOLD.ln();
        }
        if term.abs() <= tol * sum.abs() {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= 2 {
            let mf = nf + 1.0;
            let next = ((a + mf) * (b + mf) / ((c + mf) * (mf + 1.0)) * x).abs();
            let bound_ratio = next.max(x.abs());
            if bound_ratio < 1.0 {
                let tail = term.abs() * bound_ratio / (1.0 - bound_ratio);
                if tail <= tol * sum.abs() {
                    return Ok(finish(sum, abs_sum, tail, ln_scale, n + 1));
                }
            }
        }
    }
    Err(Error::NonConvergent {
        terms: max_terms,
        partial: sum * ln_scale.exp(),
    })
}

/// ₂F₁(a, b; c; x) by direct summation, |x| < 1.
pub fn hyp2f1_series(p: &HypParams, tol: f64, max_terms: usize) -> Result<EvalResult> {
    hyp2f1_series_scaled(p, tol, max_terms)?.to_eval()
}

/// Gauss's theorem: ₂F₁(a, b; c; 1) = Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b)), c > a + b.
pub fn gauss_point(a: f64, b: f64, c: f64) -> Result<f64> {
    if !(c > a + b) {
        return Err(Error::domain(format!(
            "Gauss summation needs c > a + b (c = {c}, a + b = {})",
            a + b
        )));
    }
    let half_one = |u: f64, v: f64| u == 0.5 && v == 1.0;
    if half_one(a, b) || half_one(b, a) {
        return Ok((2.0 * c - 2.0) / (2.0 * c - 3.0));
    }
    if a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    let pole = |t: f64| t <= 0.0 && t == t.floor();
    if pole(c - a) || pole(c - b) {
        return Ok(0.0);
    }
    let (l1, s1) = ln_gamma_sign(c);
    let (l2, s2) = ln_gamma_sign(c - a - b);
    let (l3, s3) = ln_gamma_sign(c - a);
    let (l4, s4) = ln_gamma_sign(c - b);
    let value = s1 * s2 * s3 * s4 * (l1 + l2 - l3 - l4).exp();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(format!("gauss_point({a}, {b}, {c})")))
    }
}

/// ₁F₀(a;; z) = (1 − z)^(−a), z < 1.
pub fn hyp1f0(a: f64, z: f64) -> Result<f64> {
    if !(z < 1.0) {
        return Err(Error::domain(format!("1F0 needs z < 1, got {z}")));
    }
    Ok((1.0 - z).powf(-a))
}

/// Elementary forms of ₂F₁(½, 1; c; χ) for c = 1, 2, 3, 4.
///
/// Written in s = √(1−χ) so that no cancellation occurs near χ = 0:
/// c=2: 2/(1+s), c=3: (4/3)(1+2s)/(1+s)², c=4: (2/5)(8s²+9s+3)/(1+s)³.
/// Returns `None` for other c or outside the domain (χ > 1, or χ = 1 at c = 1).
pub fn half_one_closed_form(c: f64, chi: f64) -> Option<f64> {
    if chi > 1.0 || chi.is_nan() {
        return None;
    }
    let s = (1.0 - chi).sqrt();
    match c {
        1.0 => (chi < 1.0).then(|| 1.0 / s),
        2.0 => Some(2.0 / (1.0 + s)),
        3.0 => Some(4.0 / 3.0 * (1.0 + 2.0 * s) / ((1.0 + s) * (1.0 + s))),
        4.0 => {
            Some(0.4 * (8.0 * s * s + 9.0 * s + 3.0) / ((1.0 + s) * (1.0 + s) * (1.0 + s)))
        }
        _ => None,
    }
}

/// ₂F₁(½, 1; c; χ) with default series options.
pub fn hyp2f1_half_one(c: f64, chi: f64) -> Result<EvalResult> {
    hyp2f1_half_one_with(c, chi, &SeriesOptions::default())
}

/// ₂F₁(½, 1; c; χ) for χ ≤ 1 (χ < 1 when c ≤ 3/2).
pub fn hyp2f1_half_one_with(c: f64, chi: f64, opts: &SeriesOptions) -> Result<EvalResult> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::domain(format!("c must be positive, got {c}")));
    }
    if chi.is_nan() || chi > 1.0 {
        return Err(Error::domain(format!(
            "2F1(1/2,1;c;chi) requires chi <= 1, got {chi}"
        )));
    }
    if chi == 1.0 {
        if c > 1.5 {
            return Ok(EvalResult::closed(gauss_point(0.5, 1.0, c)?, Method::GaussPoint));
        }
        return Err(Error::domain(format!(
            "2F1(1/2,1;c;chi) diverges as chi -> 1 for c = {c} <= 3/2"
        )));
    }
    if let Some(v) = half_one_closed_form(c, chi) {
        return Ok(EvalResult::closed(v, Method::ClosedForm));
    }
    if chi < -2.0 {
        return connection_at_infinity(c, chi, opts);
    }
    if chi < 0.0 {
        // Euler: F(½,1;c;χ) = (1−χ)^(−½) F(½, c−1; c; χ/(χ−1))
        let z = chi / (chi - 1.0);
        let inner = hyp2f1_series(&HypParams::new(0.5, c - 1.0, c, z)?, opts.tol, opts.max_terms)?;
        let res = inner.scaled((1.0 - chi).powf(-0.5));
        return Ok(EvalResult {
            method: Method::EulerTransform,
            ..res
        });
    }
    let budget = if chi > 0.9 {
        opts.max_terms.max(SLOW_SERIES_MAX_TERMS)
    } else {
        opts.max_terms
    };
    hyp2f1_series(&HypParams::new(0.5, 1.0, c, chi)?, opts.tol, budget)
}

/// F(½,1;c;χ) = A(−χ)^(−½) F(½, 3/2−c; ½; 1/χ) − 2(c−1)(−χ)^(−1) F(1, 2−c; 3/2; 1/χ)
/// with A = √π Γ(c)/Γ(c−½); used for χ < −2 so that |1/χ| ≤ ½.
fn connection_at_infinity(c: f64, chi: f64, opts: &SeriesOptions) -> Result<EvalResult> {
    let y = 1.0 / chi;
    let minus_chi = -chi;
    let amp = PI.sqrt() * gamma(c) * recip_gamma(c - 0.5);
    let first = hyp2f1_series(&HypParams::new(0.5, 1.5 - c, 0.5, y)?, opts.tol, opts.max_terms)?;
    let second = hyp2f1_series(&HypParams::new(1.0, 2.0 - c, 1.5, y)?, opts.tol, opts.max_terms)?;
    let f1 = amp / minus_chi.sqrt();
    let f2 = -2.0 * (c - 1.0) / minus_chi;
    let value = f1 * first.value + f2 * second.value;
    let err = (f1 * first.abs_error_estimate).abs()
        + (f2 * second.abs_error_estimate).abs()
        + 4.0 * f64::EPSILON * ((f1 * first.value).abs() + (f2 * second.value).abs());
    Ok(EvalResult {
        value,
        abs_error_estimate: err,
        terms_used: first.terms_used + second.terms_used,
        method: Method::Connection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn series(a: f64, b: f64, c: f64, x: f64) -> EvalResult {
        hyp2f1_series(&HypParams::new(a, b, c, x).unwrap(), 1e-14, 100_000).unwrap()
    }

    #[test]
    fn series_examples() {
        assert_eq!(series(0.5, 1.0, 2.0, 0.0).value, 1.0);
        assert!(rel(series(0.5, 1.0, 2.0, 0.75).value, 4.0 / 3.0) < 1e-14);
        assert!(rel(series(0.5, 1.0, 1.0, 0.75).value, 2.0) < 1e-14);
    }

    #[test]
    fn series_against_mpmath_values() {
        // mpmath.hyp2f1 at 30 digits
        assert!(rel(series(100.5, 101.0, 2.0, 0.25).value, 9.066_033_516_922_08e56) < 1e-12);
        assert!(rel(series(1.5, 2.0, 2.5, -0.6).value, 0.564_600_664_116_544_3) < 1e-13);
        assert!(rel(series(0.5, 1.0, 3.7, 0.99).value, 1.222_342_599_724_394_4) < 1e-12);
    }

    #[test]
    fn series_rejects_outside_unit_disc() {
        let p = HypParams::new(0.5, 1.0, 2.0, 1.0).unwrap();
        assert!(matches!(hyp2f1_series(&p, 1e-14, 1000), Err(Error::Domain(_))));
        assert!(HypParams::new(0.5, 1.0, -2.0, 0.1).is_err());
    }

    #[test]
    fn series_reports_nonconvergence() {
        let p = HypParams::new(0.5, 1.0, 1.2, 0.999).unwrap();
        assert!(matches!(
            hyp2f1_series(&p, 1e-14, 50),
            Err(Error::NonConvergent { terms: 50, .. })
        ));
    }

    #[test]
    fn terminating_series() {
        // F(-2, b; c; x) = 1 - 2bx/c + b(b+1)x²/(c(c+1))
        let (b, c, x) = (1.5, 2.5, 0.3);
        let expected = 1.0 - 2.0 * b * x / c + b * (b + 1.0) * x * x / (c * (c + 1.0));
        let r = series(-2.0, b, c, x);
        assert!(rel(r.value, expected) < 1e-15);
        assert!(r.terms_used <= 3);
    }

    #[test]
    fn scaled_series_survives_overflow() {
        let p = HypParams::new(1000.5, 1001.0, 2.0, 0.64).unwrap();
        let s = hyp2f1_series_scaled(&p, 1e-14, 1_000_000).unwrap();
        assert!(s.ln_abs() > 709.0);
        assert!(s.to_eval().is_err());
        assert!(s.relative_error() < 1e-12);
    }

    #[test]
    fn half_one_examples() {
        let r = hyp2f1_half_one(2.0, 1.0).unwrap();
        assert_eq!(r.value, 2.0);
        assert_eq!(r.method, Method::GaussPoint);
        assert_eq!(hyp2f1_half_one(3.0, 0.0).unwrap().value, 1.0);
        let r = hyp2f1_half_one(4.0, 0.5).unwrap();
        assert!(rel(r.value, 1.074_516_600_406_095_8) < 1e-15);
        assert_eq!(r.method, Method::ClosedForm);
        assert!(matches!(hyp2f1_half_one(1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(hyp2f1_half_one(1.5, 1.0), Err(Error::Domain(_))));
        assert!(matches!(hyp2f1_half_one(2.0, 1.1), Err(Error::Domain(_))));
    }

    #[test]
    fn half_one_routes() {
        // mpmath reference values
        let r = hyp2f1_half_one(2.5, -0.7).unwrap();
        assert_eq!(r.method, Method::EulerTransform);
        assert!(rel(r.value, 0.890_600_320_080_572_6) < 1e-14, "{}", r.value);
        let r = hyp2f1_half_one(2.5, -30.0).unwrap();
        assert_eq!(r.method, Method::Connection);
        assert!(rel(r.value, 0.343_415_826_134_964_9) < 1e-14, "{}", r.value);
        let r = hyp2f1_half_one(0.7, 0.95).unwrap();
        assert_eq!(r.method, Method::Series);
        assert!(rel(r.value, 9.603_900_913_232_746) < 1e-12, "{}", r.value);
    }

    #[test]
    fn connection_matches_closed_forms() {
        for c in [2.0, 3.0, 4.0] {
            for chi in [-2.5, -10.0, -1e4, -1e9] {
                let conn = connection_at_infinity(c, chi, &SeriesOptions::default()).unwrap();
                let closed = half_one_closed_form(c, chi).unwrap();
                assert!(rel(conn.value, closed) < 1e-13, "c={c} chi={chi}");
            }
        }
    }

    #[test]
    fn closed_forms_match_expanded_expressions() {
        // away from χ = 0 the χ^(-m) forms are well conditioned
        for chi in [-3.0, -0.8, 0.4, 0.9, 1.0] {
            let s: f64 = 1.0 - chi;
            let c2 = 2.0 / chi * (1.0 - s.sqrt());
            let c3 = 4.0 / (3.0 * chi * chi) * (-2.0 + 3.0 * chi + 2.0 * s.powf(1.5));
            let c4 = 2.0 / (5.0 * chi.powi(3))
                * (8.0 - 20.0 * chi + 15.0 * chi * chi - 8.0 * s.powf(2.5));
            assert!(rel(half_one_closed_form(2.0, chi).unwrap(), c2) < 1e-13);
            assert!(rel(half_one_closed_form(3.0, chi).unwrap(), c3) < 1e-13);
            assert!(rel(half_one_closed_form(4.0, chi).unwrap(), c4) < 1e-12);
        }
    }

    #[test]
    fn gauss_point_examples() {
        assert_eq!(gauss_point(0.5, 1.0, 2.0).unwrap(), 2.0);
        assert!(rel(gauss_point(0.5, 1.0, 3.0).unwrap(), 4.0 / 3.0) < 1e-15);
        assert_eq!(gauss_point(0.0, 0.7, 1.3).unwrap(), 1.0);
        assert!(rel(gauss_point(1.0, 0.5, 2.0).unwrap(), 2.0) < 1e-15);
        // generic route against the Γ formula by hand: Γ(3)Γ(0.8)/(Γ(2.3)Γ(1.5))
        let expected = 2.0 * gamma(0.8) / (gamma(2.3) * gamma(1.5));
        assert!(rel(gauss_point(0.7, 1.5, 3.0).unwrap(), expected) < 1e-13);
        assert!(gauss_point(0.5, 1.0, 1.5).is_err());
    }

    #[test]
    fn hyp1f0_examples() {
        assert_eq!(hyp1f0(3.0, 0.0).unwrap(), 1.0);
        assert!(rel(hyp1f0(3.0, 0.5).unwrap(), 8.0) < 1e-15);
        assert_eq!(hyp1f0(1.0, -1.0).unwrap(), 0.5);
        assert!(hyp1f0(1.0, 1.0).is_err());
    }
}
