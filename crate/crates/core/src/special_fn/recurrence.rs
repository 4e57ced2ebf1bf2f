//! Weighted terms wᵏ·₂F₁(k/2+½, k/2+1; c; x) by a contiguous recurrence.
//!
//! With gₘ = ₂F₁(m/2, m/2+½; c; x), the shift a → a+1 acts as
//! 1 + (x/a)·d/dx and the hypergeometric equation closes to
//!
//! ```text
//! (m+1)(1−x)·gₘ₊₂ = (2m+3−2c)·gₘ₊₁ − (m+2−2c)·gₘ,   g₀ = 1,  g₁ = ₂F₁(½,1;c;x).
//! ```
//!
//! For 0 < x < 1 the wanted solution is the dominant one, growing like
//! (1−√x)⁻ᵐ, so forward iteration is stable. For x < 0 both solutions share
//! the envelope (1+|x|)^(−m/2) and the iteration is neutrally stable. Direct
//! summation of the inner series is unusable there: it cancels to many
//! orders of magnitude and diverges at x = −1 once k is large.

use super::hyp2f1::hyp2f1_half_one;
use crate::error::{Error, Result};

/// Iterator over Tₖ = wᵏ·₂F₁(k/2+½, k/2+1; c; x) for k = 0, 1, 2, …
#[derive(Debug, Clone)]
pub struct HalfStepTerms {
    c: f64,
    x: f64,
    w: f64,
    k: u64,
    /// Tₖ₋₁
    last: f64,
    /// w·Tₖ₋₂ (w·T₋₁ = g₀ = 1)
    before_last: f64,
}

impl HalfStepTerms {
    /// Seeds the recurrence with ₂F₁(½, 1; c; x).
    pub fn new(c: f64, x: f64, w: f64) -> Result<Self> {
        let seed = hyp2f1_half_one(c, x)?.value;
        Self::with_seed(c, x, w, seed)
    }

    /// Seeds the recurrence with a caller-supplied ₂F₁(½, 1; c; x).
    pub fn with_seed(c: f64, x: f64, w: f64, seed: f64) -> Result<Self> {
        if !(x < 1.0) || !x.is_finite() {
            return Err(Error::domain(format!("recurrence needs x < 1, got {x}")));
        }
        if !(w > 0.0) || !w.is_finite() {
            return Err(Error::domain(format!("recurrence weight must be positive, got {w}")));
        }
        Ok(HalfStepTerms {
            c,
            x,
            w,
            k: 0,
            last: seed,
            before_last: 1.0,
        })
    }

    /// Index of the next term to be produced.
    pub fn next_index(&self) -> u64 {
        self.k
    }
}

impl Iterator for HalfStepTerms {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let k = self.k;
        self.k += 1;
        if k == 0 {
            return Some(self.last);
        }
        let kf = k as f64;
        let c2 = 2.0 * self.c;
        let t = ((2.0 * kf + 1.0 - c2) * self.w * self.last
            - (kf + 1.0 - c2) * self.w * self.before_last)
            / (kf * (1.0 - self.x));
        self.before_last = self.w * self.last;
        self.last = t;
        Some(t)
    }
}

/// Unweighted ₂F₁(k/2+½, k/2+1; c; x) via the recurrence. Overflows for
/// large k when x > 0; use a weighted [`HalfStepTerms`] there.
pub fn half_step_hyp2f1(k: u64, c: f64, x: f64) -> Result<f64> {
    let v = HalfStepTerms::new(c, x, 1.0)?
        .nth(k as usize)
        .expect("iterator is infinite");
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("2F1 at k = {k}, x = {x}")))
    }
}
