//! Leading-order behaviour of ₂F₁(k/2+½, k/2+1; c; x) as k → ∞.
//!
//! ```text
//! 0 < x < 1:  2^(c−3/2) Γ(c) / (√π x^(c/2−1/4)) · k^(½−c) · (1−√x)^(−k+c−3/2)
//! x = −w < 0: Γ(c) 2^(c−½) / (√π w^(c/2−1/4)) · k^(½−c) · (1+w)^(−k/2+c/2−3/4) · sin Φ(k)
//!             Φ(k) = (k−c+3/2)·φ − (π/2)(c−3/2),  φ = arctan √w
//! ```
//!
//! Only the leading term is returned; its relative error is O(1/k).

use std::f64::consts::{LN_2, PI};

use super::gamma::ln_gamma;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticEval {
    pub k: u64,
    pub c: f64,
    pub x: f64,
    /// |x|
    pub w: f64,
    /// arctan √w, x < 0 only.
    pub phi: Option<f64>,
    /// Φ(k), x < 0 only.
    pub phase: Option<f64>,
    /// ln of the non-oscillating factor.
    pub ln_envelope: f64,
    pub ln_abs: f64,
    pub sign: f64,
    /// The approximant itself; may be ±∞ or 0 when outside the f64 range.
    pub approx: f64,
}

impl AsymptoticEval {
    pub fn envelope(&self) -> f64 {
        self.ln_envelope.exp()
    }
}

pub fn hyp2f1_large_k(k: u64, c: f64, x: f64) -> Result<AsymptoticEval> {
    if k == 0 {
        return Err(Error::domain("asymptotic form needs k >= 1"));
    }
    if !(c > 0.0) {
        return Err(Error::domain(format!("asymptotic form needs c > 0, got {c}")));
    }
    if x == 0.0 || !(x < 1.0) || x.is_nan() {
        return Err(Error::domain(format!(
            "asymptotic form needs x in (0,1) or x < 0, got {x}"
        )));
    }
    let kf = k as f64;
    let w = x.abs();
    let common = ln_gamma(c) - 0.5 * PI.ln() - (0.5 * c - 0.25) * w.ln() + (0.5 - c) * kf.ln();
    if x > 0.0 {
        let ln_env = common
            + (c - 1.5) * LN_2
            + (-kf + c - 1.5) * (1.0 - w.sqrt()).ln();
        return Ok(AsymptoticEval {
            k,
            c,
            x,
            w,
            phi: None,
            phase: None,
            ln_envelope: ln_env,
            ln_abs: ln_env,
            sign: 1.0,
            approx: ln_env.exp(),
        });
    }
    let phi = w.sqrt().atan();
    let phase = (kf - c + 1.5) * phi - 0.5 * PI * (c - 1.5);
    let ln_env = common + (c - 0.5) * LN_2 + (-0.5 * kf + 0.5 * c - 0.75) * w.ln_1p();
    let s = phase.sin();
    Ok(AsymptoticEval {
        k,
        c,
        x,
        w,
        phi: Some(phi),
        phase: Some(phase),
        ln_envelope: ln_env,
        ln_abs: ln_env + s.abs().ln(),
        sign: if s < 0.0 { -1.0 } else { 1.0 },
        approx: ln_env.exp() * s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_field() {
        let a = hyp2f1_large_k(100, 2.0, -0.5).unwrap();
        let expected = (100.0 - 2.0 + 1.5) * 0.5_f64.sqrt().atan() - PI / 2.0 * 0.5;
        assert!((a.phase.unwrap() - expected).abs() < 1e-12);
        let phi = a.phi.unwrap();
        assert!(phi > 0.0 && phi < PI / 2.0);
    }

    #[test]
    fn sign_follows_phase() {
        for k in 1..300 {
            let a = hyp2f1_large_k(k, 2.5, -0.8).unwrap();
            let s = a.phase.unwrap().sin();
            assert_eq!(a.sign, if s < 0.0 { -1.0 } else { 1.0 });
            assert_eq!(a.approx.signum(), s.signum());
        }
    }

    #[test]
    fn positive_x_example() {
        // reference: 2F1(100.5, 101; 2; 0.25) = 9.06603351692208e56 (mpmath)
        let a = hyp2f1_large_k(200, 2.0, 0.25).unwrap();
        let rel = (a.approx / 9.066_033_516_922_08e56 - 1.0).abs();
        assert!(rel < 0.05, "{rel}");
    }

    #[test]
    fn domain() {
        assert!(hyp2f1_large_k(10, 2.0, 0.0).is_err());
        assert!(hyp2f1_large_k(10, 2.0, 1.0).is_err());
        assert!(hyp2f1_large_k(0, 2.0, 0.5).is_err());
    }
}
