//! Numerical toolkit for Hankel operators that commute with second-order
//! differential operators: special functions, quadrature, a catalogue of
//! commuting kernel/operator pairs, discretized operators and spectral
//! diagnostics.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalogue;
pub mod error;
pub mod operators;
pub mod quadrature;
pub mod spectra;
pub mod specfun;

pub use error::{Error, Result};
