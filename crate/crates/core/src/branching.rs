//! Scaled Sibuya offspring laws, the dual (extinction-conditioned)
//! branching mechanism and the total-progeny distributions.

use nalgebra::{Matrix4, Matrix5, Vector4, Vector5};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Series;
use crate::quadrature::integrate_checked;
use crate::roots::bracketed_newton;
use crate::special_fn::{
    bessel_i1_over_z_scaled, hyp2f1_half_one, hyp2f1_large_k, hyp2f1_series_scaled, ln_gamma,
    EvalResult, HalfStepTerms, HypParams, Method,
};

/// Above this index the Sibuya pmf switches from the ratio recurrence to
/// log-gamma differences.
const RECURRENCE_LIMIT: u64 = 2000;

/// Offspring law with PGF 1 − λ(1−u)^α.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledSibuya {
    alpha: f64,
    lambda: f64,
}

impl ScaledSibuya {
    pub fn new(alpha: f64, lambda: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::domain(format!("alpha must lie in (0,1], got {alpha}")));
        }
        if !(lambda > 0.0 && lambda <= 1.0) {
            return Err(Error::domain(format!("lambda must lie in (0,1], got {lambda}")));
        }
        Ok(ScaledSibuya { alpha, lambda })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    fn require_supercritical(&self) -> Result<()> {
        if self.alpha < 1.0 && self.lambda < 1.0 {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "extinction probability needs alpha < 1 and lambda < 1, got ({}, {})",
                self.alpha, self.lambda
            )))
        }
    }
}

/// P{W = k}: 1−λ at k = 0, otherwise −λ(−α)ₖ/k! from
/// p₁ = λα, pₖ₊₁ = pₖ(k−α)/(k+1).
pub fn sibuya_pmf(d: &ScaledSibuya, k: u64) -> f64 {
    let (a, l) = (d.alpha, d.lambda);
    match k {
        0 => 1.0 - l,
        _ if a == 1.0 => {
            if k == 1 {
                l
            } else {
                0.0
            }
        }
        _ if k <= RECURRENCE_LIMIT => {
            let mut p = l * a;
            for j in 1..k {
                let jf = j as f64;
                p *= (jf - a) / (jf + 1.0);
            }
            p
        }
        _ => {
            let kf = k as f64;
            (l.ln() + a.ln() + ln_gamma(kf - a) - ln_gamma(1.0 - a) - ln_gamma(kf + 1.0)).exp()
        }
    }
}

/// P{W > k} = λ(1−α)ₖ/k!.
pub fn sibuya_survival(d: &ScaledSibuya, k: u64) -> f64 {
    let (a, l) = (d.alpha, d.lambda);
    if k == 0 {
        return l;
    }
    if a == 1.0 {
        return 0.0;
    }
    if k <= RECURRENCE_LIMIT {
        let mut s = l;
        for j in 0..k {
            let jf = j as f64;
            s *= (jf + 1.0 - a) / (jf + 1.0);
        }
        s
    } else {
        let kf = k as f64;
        (l.ln() + ln_gamma(kf + 1.0 - a) - ln_gamma(1.0 - a) - ln_gamma(kf + 1.0)).exp()
    }
}

pub fn sibuya_pgf(d: &ScaledSibuya, u: f64) -> f64 {
    1.0 - d.lambda * (1.0 - u).powf(d.alpha)
}

/// Q = 1 − λ^(1/(1−α)).
pub fn extinction_prob(d: &ScaledSibuya) -> Result<f64> {
    d.require_supercritical()?;
    Ok(-(d.lambda.ln() / (1.0 - d.alpha)).exp_m1())
}

/// P(Qu)/Q, the offspring PGF of the process conditioned on extinction.
pub fn dual_pgf(d: &ScaledSibuya, u: f64) -> Result<f64> {
    let q = extinction_prob(d)?;
    Ok((1.0 - d.lambda * (1.0 - q * u).powf(d.alpha)) / q)
}

/// Coefficients of [`dual_pgf`]: (1−λ)/Q at k = 0, Q^(k−1)·pₖ otherwise.
pub fn dual_offspring_pmf(d: &ScaledSibuya, k: u64) -> Result<f64> {
    let q = extinction_prob(d)?;
    Ok(match k {
        0 => (1.0 - d.lambda) / q,
        _ => q.powf((k - 1) as f64) * sibuya_pmf(d, k),
    })
}

/// Mean of the dual offspring law, λα(1−Q)^(α−1) = α.
pub fn dual_mean(d: &ScaledSibuya) -> Result<f64> {
    let q = extinction_prob(d)?;
    Ok(d.lambda * d.alpha * (1.0 - q).powf(d.alpha - 1.0))
}

/// Total progeny of the dual process for α = ½.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProgenyHalfLaw {
    lambda: f64,
    q: f64,
    z_minus: f64,
    z_plus: f64,
}

impl ProgenyHalfLaw {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::domain(format!("lambda must lie in (0,1), got {lambda}")));
        }
        Ok(Self::build(lambda, 1.0 - lambda * lambda))
    }

    /// Parameterised by the extinction probability Q, with λ = √(1−Q).
    pub fn from_extinction(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::domain(format!("Q must lie in (0,1), got {q}")));
        }
        Ok(Self::build((1.0 - q).sqrt(), q))
    }

    fn build(lambda: f64, q: f64) -> Self {
        let r = q.sqrt();
        ProgenyHalfLaw {
            lambda,
            q,
            z_minus: 2.0 / (1.0 + r),
            z_plus: 2.0 / (1.0 - r),
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn z_minus(&self) -> f64 {
        self.z_minus
    }

    pub fn z_plus(&self) -> f64 {
        self.z_plus
    }

    /// The offspring law whose dual process this is.
    pub fn offspring(&self) -> ScaledSibuya {
        ScaledSibuya {
            alpha: 0.5,
            lambda: self.lambda,
        }
    }
}

/// ln ₂F₁(k/2+½, k/2+1; c; x) + k·ln w by the log-scaled series (x > 0).
fn ln_weighted_half_step(k: u64, c: f64, x: f64, ln_w: f64) -> Result<f64> {
    let kf = k as f64;
    let p = HypParams::new(0.5 * kf + 0.5, 0.5 * kf + 1.0, c, x)?;
    let s = hyp2f1_series_scaled(&p, 1e-15, 5_000_000)?;
    Ok(s.ln_abs() + kf * ln_w)
}

/// pℓ = 2^(−ℓ)(1−Q)^(ℓ−1)·₂F₁(ℓ/2, ℓ/2+½; 2; Q), summed in log space. Falls
/// back to the leading asymptotic form if the series exceeds its budget.
pub fn progeny_pmf(law: &ProgenyHalfLaw, ell: u64) -> Result<f64> {
    if ell == 0 {
        return Err(Error::domain("total progeny starts at 1"));
    }
    let k = ell - 1;
    let ln_w = (0.5 * (1.0 - law.q)).ln();
    match ln_weighted_half_step(k, 2.0, law.q, ln_w) {
        Ok(v) => Ok(0.5 * v.exp()),
        Err(Error::NonConvergent { .. }) => {
            let a = hyp2f1_large_k(k, 2.0, law.q)?;
            Ok(0.5 * (a.ln_abs + k as f64 * ln_w).exp())
        }
        Err(e) => Err(e),
    }
}

/// p₁, …, p_L by the weighted recurrence.
pub fn progeny_pmf_table(law: &ProgenyHalfLaw, len: usize) -> Result<Vec<f64>> {
    let it = HalfStepTerms::new(2.0, law.q, 0.5 * (1.0 - law.q))?;
    Ok(it.take(len).map(|t| 0.5 * t).collect())
}

/// Upper bound on Σ_{ℓ>L} pℓ given p_{L+1}: successive ratios stay below
/// 1/z₋, so the tail is at most p_{L+1}·z₋/(z₋−1).
pub fn progeny_tail_bound(law: &ProgenyHalfLaw, p_next: f64) -> f64 {
    p_next * law.z_minus / (law.z_minus - 1.0)
}

/// λ²(z−z₋)(z−z₊) = λ²z² − 4z + 4.
fn discriminant(law: &ProgenyHalfLaw, z: f64) -> f64 {
    law.lambda * law.lambda * (z - law.z_minus) * (z - law.z_plus)
}

/// H(z) = z/(1−λ²)·(1 − λ²z/2 − (λ/2)√(λ²z²−4z+4)) for z ≤ z₋ or z ≥ z₊.
pub fn progeny_pgf_elementary(law: &ProgenyHalfLaw, z: f64) -> Result<f64> {
    let disc = discriminant(law, z);
    if disc < 0.0 || z.is_nan() {
        return Err(Error::domain(format!(
            "z = {z} lies between the branch points {} and {}",
            law.z_minus, law.z_plus
        )));
    }
    let l2 = law.lambda * law.lambda;
    let lead = 1.0 - 0.5 * l2 * z;
    let root = 0.5 * law.lambda * disc.sqrt();
    if lead >= 0.0 {
        // numerator times its conjugate is 1 − λ²
        Ok(z / (lead + root))
    } else {
        Ok(z / law.q * (lead - root))
    }
}

/// H(z) = (z/2)/(1−λ²z/2)·₂F₁(½, 1; 2; (1−λ²)/(1−λ²z/2)²) for 0 ≤ z ≤ z₋.
pub fn progeny_pgf_hypergeometric(law: &ProgenyHalfLaw, z: f64) -> Result<f64> {
    if !(z >= 0.0 && z <= law.z_minus) {
        return Err(Error::domain(format!(
            "z must lie in [0, z_minus = {}], got {z}",
            law.z_minus
        )));
    }
    let d = 1.0 - 0.5 * law.lambda * law.lambda * z;
    let arg = if z == law.z_minus { 1.0 } else { law.q / (d * d) };
    if arg > 1.0 {
        return Err(Error::domain(format!("hypergeometric argument {arg} exceeds 1")));
    }
    Ok(0.5 * z / d * hyp2f1_half_one(2.0, arg)?.value)
}

/// p₁, …, p_order as power-series coefficients of the elementary PGF,
/// expanding √(1 − z + λ²z²/4) by the binomial series.
pub fn progeny_pmf_series_coefficients(law: &ProgenyHalfLaw, order: usize) -> Vec<f64> {
    let l = law.lambda;
    let l2 = l * l;
    let n = order.max(1) - 1;
    // −u with u = z − λ²z²/4
    let minus_u = Series::new(vec![0.0, -1.0, 0.25 * l2], n);
    let root = Series::binomial(&minus_u, 0.5);
    let linear = Series::new(vec![1.0, -0.5 * l2], n);
    let inner = &linear + &root.scale(-l);
    inner.coef().iter().map(|c| c / law.q).take(order).collect()
}

/// pℓ from the integral representation
/// pℓ = 1/(√(1−λ²)(ℓ−1)!)·∫₀^∞ u^(ℓ−2) e^(−2u/λ²) I₁((2u/λ²)√(1−λ²)) du.
///
/// With ρ = 2√(1−λ²)/λ² the integrand is rewritten as
/// ρ·u^(ℓ−1)·e^(−κu)·[e^(−ρu) I₁(ρu)/(ρu)], κ = 2/λ² − ρ, which is finite at
/// u = 0 for every ℓ and decays exponentially.
pub fn progeny_pmf_bessel_oracle(law: &ProgenyHalfLaw, ell: u64) -> Result<EvalResult> {
    if ell == 0 {
        return Err(Error::domain("total progeny starts at 1"));
    }
    let l2 = law.lambda * law.lambda;
    let sq = law.q.sqrt();
    let rho = 2.0 * sq / l2;
    let kappa = 2.0 / l2 - rho;
    let m = (ell - 1) as f64;
    let ln_norm = rho.ln() - sq.ln() - ln_gamma(m + 1.0);
    let ln_core = move |u: f64| m * u.ln() - kappa * u;
    // cut where the log-integrand is 45 below its maximum
    let peak = m / kappa;
    let ln_peak = if m > 0.0 { ln_core(peak) } else { 0.0 };
    let mut upper = (peak + 1.0 / kappa).max(1.0 / kappa);
    while ln_core(upper) > ln_peak - 45.0 {
        upper *= 1.5;
    }
    let f = move |u: f64| {
        if u <= 0.0 {
            return if m == 0.0 { (ln_norm).exp() * 0.5 } else { 0.0 };
        }
        let b = bessel_i1_over_z_scaled(rho * u).unwrap_or(f64::NAN);
        (ln_norm + ln_core(u)).exp() * b
    };
    let r = integrate_checked(f, 0.0, upper, 1e-15, 1e-9)?;
    Ok(EvalResult {
        value: r.value,
        abs_error_estimate: r.abs_error,
        terms_used: r.evaluations,
        method: Method::Quadrature,
    })
}

/// The class qℓ = ((c−3/2)/(c−1))·√x·(1−√x)^(ℓ−1)·₂F₁(ℓ/2, ℓ/2+½; c; x).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneralProgenyLaw {
    c: f64,
    x: f64,
}

impl GeneralProgenyLaw {
    pub fn new(c: f64, x: f64) -> Result<Self> {
        if !(c > 1.5 && c.is_finite()) {
            return Err(Error::domain(format!("c must exceed 3/2, got {c}")));
        }
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::domain(format!("x must lie in (0,1), got {x}")));
        }
        Ok(GeneralProgenyLaw { c, x })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// (c−3/2)/(c−1)·√x
    pub fn normalization(&self) -> f64 {
        (self.c - 1.5) / (self.c - 1.0) * self.x.sqrt()
    }

    fn weight(&self) -> f64 {
        1.0 - self.x.sqrt()
    }
}

pub fn general_progeny_pmf(law: &GeneralProgenyLaw, ell: u64) -> Result<f64> {
    if ell == 0 {
        return Err(Error::domain("support starts at 1"));
    }
    let k = ell - 1;
    let ln_w = law.weight().ln();
    match ln_weighted_half_step(k, law.c, law.x, ln_w) {
        Ok(v) => Ok(law.normalization() * v.exp()),
        Err(Error::NonConvergent { .. }) => general_progeny_pmf_asymptotic(law, ell),
        Err(e) => Err(e),
    }
}

/// Leading-order qℓ from the large-k approximant (ℓ ≥ 2).
pub fn general_progeny_pmf_asymptotic(law: &GeneralProgenyLaw, ell: u64) -> Result<f64> {
    if ell < 2 {
        return Err(Error::domain("asymptotic form needs ell >= 2"));
    }
    let k = ell - 1;
    let a = hyp2f1_large_k(k, law.c, law.x)?;
    Ok(law.normalization() * (a.ln_abs + k as f64 * law.weight().ln()).exp())
}

/// q₁, …, q_L by the weighted recurrence.
pub fn general_progeny_table(law: &GeneralProgenyLaw, len: usize) -> Result<Vec<f64>> {
    let norm = law.normalization();
    let it = HalfStepTerms::new(law.c, law.x, law.weight())?;
    Ok(it.take(len).map(|t| norm * t).collect())
}

const MASS_POINTS: [f64; 5] = [1000.0, 2000.0, 4000.0, 8000.0, 16000.0];

/// Σ qℓ. The tail decays only like ℓ^(3/2−c), so the partial sums S_L at
/// L = 1000·2ʲ (j = 0..4) are fitted exactly by
/// S_L = S∞ + L^(3/2−c)·(b₀ + b₁/L + b₂/L² + b₃/L³); the error estimate is
/// the change from the four-point fit without b₃.
pub fn general_total_mass(law: &GeneralProgenyLaw) -> Result<EvalResult> {
    let n = *MASS_POINTS.last().unwrap() as usize;
    let table = general_progeny_table(law, n)?;
    let mut partial = Vec::with_capacity(MASS_POINTS.len());
    let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
    let mut next = 0usize;
    for (i, q) in table.iter().enumerate() {
        // Neumaier summation
        let t = sum + q;
        comp += if sum.abs() >= q.abs() { (sum - t) + q } else { (q - t) + sum };
        sum = t;
        if i + 1 == MASS_POINTS[next] as usize {
            partial.push(sum + comp);
            next += 1;
        }
    }
    let e = 1.5 - law.c;
    // lengths in units of 1000 keep the system well scaled
    let row = |l: f64, cols: usize| -> Vec<f64> {
        let s = l / 1000.0;
        let mut r = vec![1.0];
        r.extend((0..cols - 1).map(|j| s.powf(e) / s.powi(j as i32)));
        r
    };
    let a5 = Matrix5::from_fn(|i, j| row(MASS_POINTS[i], 5)[j]);
    let s5 = Vector5::from_fn(|i, _| partial[i]);
    let fit5 = a5
        .lu()
        .solve(&s5)
        .ok_or_else(|| Error::domain("singular extrapolation system"))?;
    let a4 = Matrix4::from_fn(|i, j| row(MASS_POINTS[i + 1], 4)[j]);
    let s4 = Vector4::from_fn(|i, _| partial[i + 1]);
    let fit4 = a4
        .lu()
        .solve(&s4)
        .ok_or_else(|| Error::domain("singular extrapolation system"))?;
    Ok(EvalResult {
        value: fit5[0],
        abs_error_estimate: (fit5[0] - fit4[0]).abs() + 1e-15 * n as f64,
        terms_used: n,
        method: Method::Extrapolation,
    })
}

/// Root t_s0 > 1 of t^(α/(1−α))·(t−1) = v.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualRoot {
    pub v: f64,
    pub alpha: f64,
    pub t_s0: f64,
    /// t_s0 − 1, kept separately for accuracy when v is small.
    pub s: f64,
    pub iterations: usize,
}

/// ln(1+eˢ) without overflow.
fn softplus(sigma: f64) -> f64 {
    if sigma > 30.0 {
        sigma + (-sigma).exp().ln_1p()
    } else {
        sigma.exp().ln_1p()
    }
}

impl DualRoot {
    pub fn solve(v: f64, alpha: f64) -> Result<Self> {
        if !(v >= 0.0) {
            return Err(Error::domain(format!("v must be nonnegative, got {v}")));
        }
        Self::solve_ln(v.ln(), alpha)
    }

    /// Solves with ln v given. In σ = ln(t−1) the equation reads
    /// p·ln(1+e^σ) + σ = ln v, p = α/(1−α), whose left side is increasing
    /// with slope in [1, 1+p]; the root lies in [ln v − p·ln(1+v), ln v].
    pub fn solve_ln(ln_v: f64, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::domain(format!("alpha must lie in (0,1), got {alpha}")));
        }
        if ln_v == f64::NEG_INFINITY {
            return Ok(DualRoot {
                v: 0.0,
                alpha,
                t_s0: 1.0,
                s: 0.0,
                iterations: 0,
            });
        }
        if !ln_v.is_finite() {
            return Err(Error::domain(format!("ln v must be finite, got {ln_v}")));
        }
        let p = alpha / (1.0 - alpha);
        let fdf = |sig: f64| {
            let sp = softplus(sig);
            let logistic = 1.0 / (1.0 + (-sig).exp());
            (p * sp + sig - ln_v, p * logistic + 1.0)
        };
        let done = |sig: f64, h: f64| h.abs() <= f64::EPSILON * (sig.abs() + ln_v.abs());
        let lo = ln_v - p * softplus(ln_v);
        let root = bracketed_newton(fdf, lo, ln_v, done, 200)?;
        let s = root.x.exp();
        Ok(DualRoot {
            v: ln_v.exp(),
            alpha,
            t_s0: 1.0 + s,
            s,
            iterations: root.iterations,
        })
    }

    /// |t^p(t−1) − v| / v.
    pub fn relative_residual(&self) -> f64 {
        let p = self.alpha / (1.0 - self.alpha);
        if self.v == 0.0 {
            return self.s.abs();
        }
        ((p * self.s.ln_1p() + self.s.ln() - self.v.ln()).exp_m1()).abs()
    }
}

/// H_α(z) = (1 − (λ z t_s0)^(1/(1−α)))/(1 − λ^(1/(1−α))), with t_s0 from
/// [`DualRoot`] at v = (1−z)/(λz)^(1/(1−α)). H_α(0) = 0.
pub fn h_alpha_pgf(d: &ScaledSibuya, z: f64) -> Result<f64> {
    d.require_supercritical()?;
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::domain(format!("z must lie in [0,1], got {z}")));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z == 1.0 {
        return Ok(1.0);
    }
    let q_exp = 1.0 / (1.0 - d.alpha);
    let ln_lz = d.lambda.ln() + z.ln();
    let ln_v = (-z).ln_1p() - q_exp * ln_lz;
    let root = DualRoot::solve_ln(ln_v, d.alpha)?;
    let num = -(q_exp * (ln_lz + root.s.ln_1p())).exp_m1();
    Ok(num / extinction_prob(d)?)
}

/// |y − z·P(y)| with y = Q·H_α(z) and P the offspring PGF. Equivalently
/// Q·|H − z·P_dual(H)|: H is the PGF of the total progeny of the dual process.
pub fn functional_equation_residual(d: &ScaledSibuya, z: f64) -> Result<f64> {
    let q = extinction_prob(d)?;
    let y = q * h_alpha_pgf(d, z)?;
    Ok((y - z * sibuya_pgf(d, y)).abs())
}
