//! Special functions needed by the kernel catalogue, each with an absolute
//! error estimate.

mod airy;
mod bessel;
mod gamma;
mod hypergeometric;
mod orthopoly;

use serde::Serialize;

pub use airy::{airy_ai, airy_ai_both, airy_ai_prime, airy_bi, airy_bi_prime, AI_ZERO, NEG_AI_PRIME_ZERO};
pub use bessel::{bessel_j, bessel_j_prime, bessel_k, bessel_k_prime, bessel_k_scaled};
pub use gamma::{gamma_fn, ln_gamma};
pub use hypergeometric::gauss_2f1;
pub use orthopoly::{hermite_fn, laguerre};

pub(crate) use bessel::bessel_j_unchecked;
pub(crate) use orthopoly::{hermite_pair, laguerre_all, laguerre_derivative, laguerre_pair};

/// A function value together with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub est_abs_error: f64,
}

impl EvalResult {
    pub fn new(value: f64, est_abs_error: f64) -> Self {
        Self { value, est_abs_error: est_abs_error.abs() }
    }
}
