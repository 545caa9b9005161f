use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("family mismatch: a is {a}, b is {b}")]
    FamilyMismatch { a: String, b: String },

    #[error("point {at} lies within {tol:e} of a coefficient pole")]
    PoleProximity { at: f64, tol: f64 },

    #[error("unsupported case: {0}")]
    UnsupportedCase(String),

    #[error("domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: String, found: String },

    #[error("diffusion coefficient a({x}) = {value} is negative")]
    NegativeCoefficient { x: f64, value: f64 },

    #[error("kernel is not Hilbert-Schmidt: {0}")]
    NonIntegrable(String),

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("determinant product diverges: 1 + x s_{index}^2 = {factor} <= 0")]
    DivergentProduct { index: usize, factor: f64 },

    #[error("insufficient data: need {needed} values above the floor, found {found}")]
    InsufficientData { needed: usize, found: usize },
}

pub(crate) fn invalid_arg(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
