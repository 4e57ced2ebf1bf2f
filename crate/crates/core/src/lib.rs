//! Weighted sums of Gauss hypergeometric functions, their convergence
//! domain and large-parameter asymptotics, and the Galton–Watson
//! total-progeny laws built on them.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod branching;
pub mod error;
pub mod hypersum;
pub mod mc_sim;
pub mod poly;
pub mod quadrature;
pub mod roots;
pub mod special_fn;
pub mod verify;

pub use error::{Error, Result};
