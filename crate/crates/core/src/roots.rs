//! Safeguarded Newton iteration on a sign-changing bracket.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub iterations: usize,
}

/// Finds a zero of `f` in `[lo, hi]`, where `f(lo) ≤ 0 ≤ f(hi)` or the
/// reverse. `fdf` returns `(f(x), f'(x))`. Newton steps that leave the
/// bracket, or a non-finite derivative, fall back to bisection. Stops when
/// `done(x, f(x))` holds, or when a Newton step or the bracket shrinks to
/// rounding width.
pub fn bracketed_newton<F, D>(
    fdf: F,
    mut lo: f64,
    mut hi: f64,
    done: D,
    max_iter: usize,
) -> Result<Root>
where
    F: Fn(f64) -> (f64, f64),
    D: Fn(f64, f64) -> bool,
{
    let (f_lo, _) = fdf(lo);
    let (f_hi, _) = fdf(hi);
    if done(lo, f_lo) {
        return Ok(Root { x: lo, iterations: 0 });
    }
    if done(hi, f_hi) {
        return Ok(Root { x: hi, iterations: 0 });
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::domain(format!(
            "root not bracketed: f({lo}) = {f_lo}, f({hi}) = {f_hi}"
        )));
    }
    let increasing = f_lo < 0.0;
    let mut x = 0.5 * (lo + hi);
    let mut last_f = f64::NAN;
    for it in 1..=max_iter {
        let (fx, dfx) = fdf(x);
        last_f = fx;
        if done(x, fx) {
            return Ok(Root { x, iterations: it });
        }
        if (fx < 0.0) == increasing {
            lo = x;
        } else {
            hi = x;
        }
        let width = 2.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE);
        if hi - lo <= width {
            return Ok(Root { x, iterations: it });
        }
        let newton = x - fx / dfx;
        if dfx.is_finite() && dfx != 0.0 && newton >= lo && newton <= hi {
            if (newton - x).abs() <= width {
                return Ok(Root { x: newton, iterations: it });
            }
            x = newton;
        } else {
            x = 0.5 * (lo + hi);
        }
    }
    Err(Error::RootFindFailure {
        iterations: max_iter,
        residual: last_f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = bracketed_newton(|x| (x * x - 2.0, 2.0 * x), 0.0, 2.0, |_, f| f.abs() < 1e-15, 100)
            .unwrap();
        assert!((r.x - 2f64.sqrt()).abs() < 1e-15);
        assert!(r.iterations < 10);
    }

    #[test]
    fn decreasing_function() {
        let r = bracketed_newton(|x| (1.0 - x.powi(3), -3.0 * x * x), 0.0, 3.0, |_, f| f.abs() < 1e-14, 100)
            .unwrap();
        assert!((r.x - 1.0).abs() < 1e-14);
    }

    #[test]
    fn unbracketed() {
        assert!(bracketed_newton(|x| (x * x + 1.0, 2.0 * x), -1.0, 1.0, |_, f| f.abs() < 1e-12, 50).is_err());
    }

    #[test]
    fn converges_to_rounding_without_tolerance() {
        let r = bracketed_newton(|x| (x - 0.1, 1.0), 0.0, 1.0, |_, _| false, 20).unwrap();
        assert_eq!(r.x, 0.1);
    }

    #[test]
    fn iteration_budget_exhausted() {
        // bisection only: the derivative is reported as NaN
        let r = bracketed_newton(|x| (x - 0.3, f64::NAN), 0.0, 1.0, |_, _| false, 10);
        assert!(matches!(r, Err(Error::RootFindFailure { .. })));
    }
}
