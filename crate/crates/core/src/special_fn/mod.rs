//! Special-function kernel: gamma family, Gauss hypergeometric evaluation,
//! the large-parameter approximants and the modified Bessel function I₁.

mod asymptotic;
mod bessel;
mod gamma;
mod hyp2f1;
mod recurrence;

use serde::Serialize;

pub use asymptotic::{hyp2f1_large_k, AsymptoticEval};
pub use bessel::{bessel_i0, bessel_i1, bessel_i1_over_z_scaled, bessel_i1_scaled};
pub use gamma::{gamma, ln_gamma, ln_gamma_sign, pochhammer, recip_gamma};
pub use hyp2f1::{
    gauss_point, half_one_closed_form, hyp1f0, hyp2f1_half_one, hyp2f1_half_one_with,
    hyp2f1_series, hyp2f1_series_scaled, HypParams, ScaledSum, SeriesOptions,
};
pub use recurrence::{half_step_hyp2f1, HalfStepTerms};

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    Series,
    EulerTransform,
    /// Connection formula at infinity (argument mapped to 1/χ).
    Connection,
    ClosedForm,
    GaussPoint,
    Asymptotic,
    Quadrature,
    RootFind,
    /// Contiguous three-term recurrence in the half-integer parameter shift.
    Recurrence,
    /// Analytic continuation of the closed form outside the summation domain.
    Continuation,
    /// Partial sums extrapolated with a fitted tail model.
    Extrapolation,
}

/// A computed value with its error estimate and the method used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub terms_used: usize,
    pub method: Method,
}

impl EvalResult {
    pub(crate) fn closed(value: f64, method: Method) -> Self {
        EvalResult {
            value,
            abs_error_estimate: 4.0 * f64::EPSILON * value.abs(),
            terms_used: 0,
            method,
        }
    }

    /// Scales value and error by a constant factor.
    pub(crate) fn scaled(self, factor: f64) -> Self {
        EvalResult {
            value: self.value * factor,
            abs_error_estimate: self.abs_error_estimate * factor.abs()
                + f64::EPSILON * (self.value * factor).abs(),
            ..self
        }
    }
}
