use thiserror::Error;

use crate::hypersum::VerdictReason;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series did not meet its tolerance within the term budget.
    #[error("series did not converge after {terms} terms (last partial sum {partial})")]
    NonConvergent { terms: usize, partial: f64 },

    /// The weighted sum is divergent for these parameters.
    #[error("sum is not convergent: {0:?}")]
    NotConvergent(VerdictReason),

    /// The sum converges but the term budget ran out before the tolerance was met.
    #[error("slow convergence: {terms} terms summed, partial sum {partial}, tail estimate {tail}")]
    SlowConvergence { terms: usize, partial: f64, tail: f64 },

    /// Result exceeds the floating-point range.
    #[error("overflow: {0}")]
    Overflow(String),

    #[error("root finding failed after {iterations} iterations (residual {residual})")]
    RootFindFailure { iterations: usize, residual: f64 },

    #[error("quadrature failed: error estimate {estimate} above {target}")]
    QuadratureFailure { estimate: f64, target: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for rejections of the inputs (domain, divergence), false for
    /// numerical failures on valid inputs.
    pub fn is_rejection(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::NotConvergent(_) | Error::InsufficientData(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
