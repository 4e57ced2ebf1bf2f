//! Truncated power series in one variable.

use std::ops::{Add, Mul};

/// Coefficients c₀, c₁, …, c_N of a series truncated after degree N.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    coef: Vec<f64>,
}

impl Series {
    pub fn new(mut coef: Vec<f64>, order: usize) -> Self {
        coef.resize(order + 1, 0.0);
        Series { coef }
    }

    pub fn constant(c: f64, order: usize) -> Self {
        Series::new(vec![c], order)
    }

    pub fn order(&self) -> usize {
        self.coef.len() - 1
    }

    pub fn coef(&self) -> &[f64] {
        &self.coef
    }

    pub fn scale(&self, s: f64) -> Self {
        Series {
            coef: self.coef.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiplies by zⁿ, dropping terms beyond the order.
    pub fn shift(&self, n: usize) -> Self {
        let mut coef = vec![0.0; n.min(self.coef.len())];
        coef.extend_from_slice(&self.coef[..self.coef.len().saturating_sub(n)]);
        Series { coef }
    }

    /// (1 + u)^p for a series u with zero constant term, by the binomial series.
    pub fn binomial(u: &Series, p: f64) -> Self {
        assert!(u.coef[0] == 0.0, "binomial series needs u(0) = 0");
        let order = u.order();
        let mut out = Series::constant(1.0, order);
        let mut power = Series::constant(1.0, order);
        let mut binom = 1.0;
        for n in 1..=order {
            power = &power * u;
            binom *= (p - (n - 1) as f64) / n as f64;
            out = &out + &power.scale(binom);
        }
        out
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        let n = self.coef.len().min(rhs.coef.len());
        Series {
            coef: (0..n).map(|i| self.coef[i] + rhs.coef[i]).collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        let n = self.coef.len().min(rhs.coef.len());
        let mut coef = vec![0.0; n];
        for (i, a) in self.coef.iter().enumerate().take(n) {
            if *a == 0.0 {
                continue;
            }
            for (j, b) in rhs.coef.iter().enumerate().take(n - i) {
                coef[i + j] += a * b;
            }
        }
        Series { coef }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_sqrt() {
        let u = Series::new(vec![0.0, 0.3, -0.2], 12);
        let r = Series::binomial(&u, 0.5);
        let sq = &r * &r;
        let expect = &Series::constant(1.0, 12) + &u;
        for (a, b) in sq.coef().iter().zip(expect.coef()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn geometric() {
        let u = Series::new(vec![0.0, -1.0], 8);
        let g = Series::binomial(&u, -1.0);
        assert!(g.coef().iter().all(|c| (*c - 1.0).abs() < 1e-15));
    }

    #[test]
    fn shift_truncates() {
        let s = Series::new(vec![1.0, 2.0, 3.0], 3);
        assert_eq!(s.shift(2).coef(), &[0.0, 0.0, 1.0, 2.0]);
    }
}
