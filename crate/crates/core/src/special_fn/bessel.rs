//! Modified Bessel functions I₀ and I₁ of real non-negative argument.
//!
//! Ascending series up to z = 20, the Hankel large-argument expansion
//! beyond. The `_scaled` variants return e^(−z)·Iν(z) and never overflow.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const SERIES_LIMIT: f64 = 20.0;

/// Σ (z/2)^(2m+ν) / (m! (m+ν)!) divided by (z/2)^ν, for ν ∈ {0, 1}.
fn reduced_series(nu: u32, z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut sum = term;
    let mut m = 0.0;
    loop {
        term *= q / ((m + 1.0) * (m + 1.0 + nu as f64));
        sum += term;
        m += 1.0;
        if term < 1e-17 * sum {
            return sum;
        }
    }
}

/// e^(−z)·Iν(z) from the large-argument expansion.
fn hankel_scaled(nu: u32, z: f64) -> f64 {
    let mu = 4.0 * (nu * nu) as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = -term * (mu - odd * odd) / (8.0 * kf * z);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * PI * z).sqrt()
}

fn check_arg(z: f64) -> Result<()> {
    if !(z >= 0.0) || z.is_infinite() {
        return Err(Error::domain(format!("Bessel argument must be finite and >= 0, got {z}")));
    }
    Ok(())
}

/// I₀(z), z ≥ 0.
pub fn bessel_i0(z: f64) -> Result<f64> {
    check_arg(z)?;
    let v = if z <= SERIES_LIMIT {
        reduced_series(0, z)
    } else {
        hankel_scaled(0, z) * z.exp()
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("I0({z})")))
    }
}

/// I₁(z), z ≥ 0.
pub fn bessel_i1(z: f64) -> Result<f64> {
    check_arg(z)?;
    let v = if z <= SERIES_LIMIT {
        0.5 * z * reduced_series(1, z)
    } else {
        hankel_scaled(1, z) * z.exp()
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("I1({z})")))
    }
}

/// e^(−z)·I₁(z), z ≥ 0.
pub fn bessel_i1_scaled(z: f64) -> Result<f64> {
    check_arg(z)?;
    Ok(if z <= SERIES_LIMIT {
        (-z).exp() * 0.5 * z * reduced_series(1, z)
    } else {
        hankel_scaled(1, z)
    })
}

/// e^(−z)·I₁(z)/z with the limit ½ at z = 0.
pub fn bessel_i1_over_z_scaled(z: f64) -> Result<f64> {
    check_arg(z)?;
    Ok(if z <= SERIES_LIMIT {
        (-z).exp() * 0.5 * reduced_series(1, z)
    } else {
        hankel_scaled(1, z) / z
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn i1_examples() {
        assert_eq!(bessel_i1(0.0).unwrap(), 0.0);
        let z = 1e-4;
        assert!(rel(bessel_i1(z).unwrap(), z / 2.0) < z * z);
        assert!(rel(bessel_i1(2.0).unwrap(), 1.590_636_854_637_329) < 1e-15);
    }

    #[test]
    fn i1_reference_values() {
        // mpmath.besseli(1, z)
        let cases = [
            (0.5, 0.257_894_305_390_896_3),
            (5.0, 24.335_642_142_450_527),
            (20.0, 42_454_973.385_127_77),
            (25.0, 5_657_865_129.878_701),
            (50.0, 2.903_078_590_103_556_8e20),
            (100.0, 1.068_369_390_338_162_5e42),
        ];
        for (z, expected) in cases {
            assert!(rel(bessel_i1(z).unwrap(), expected) < 1e-12, "z={z}");
        }
        assert!(rel(bessel_i0(25.0).unwrap(), 5_774_560_606.466_31) < 1e-12);
    }

    #[test]
    fn i1_is_derivative_of_i0() {
        for z in [0.5, 1.0, 5.0] {
            let h = 1e-5;
            let d = (bessel_i0(z + h).unwrap() - bessel_i0(z - h).unwrap()) / (2.0 * h);
            assert!((bessel_i1(z).unwrap() - d).abs() <= 1e-8, "z={z}");
        }
    }

    #[test]
    fn scaled_variants_consistent() {
        for z in [0.0, 0.3, 7.0, 19.9, 20.1, 300.0] {
            let s = bessel_i1_scaled(z).unwrap();
            let over = bessel_i1_over_z_scaled(z).unwrap();
            if z > 0.0 {
                assert!(rel(over * z, s) < 1e-14, "z={z}");
            } else {
                assert_eq!(over, 0.5);
            }
            if z < 700.0 && z > 0.0 {
                assert!(rel(s * z.exp(), bessel_i1(z).unwrap()) < 1e-13);
            }
        }
        assert!(bessel_i1_scaled(1e6).unwrap() > 0.0);
    }

    #[test]
    fn overflow_and_domain() {
        assert!(matches!(bessel_i1(800.0), Err(Error::Overflow(_))));
        assert!(matches!(bessel_i1(-1.0), Err(Error::Domain(_))));
    }
}
