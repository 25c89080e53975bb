use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("coefficient rings differ")]
    RingMismatch,
    #[error("expansion size {predicted} exceeds the budget of {budget}")]
    BudgetExceeded { predicted: u128, budget: usize },
    #[error("degree {degree} exceeds the grid bound {bound}")]
    DegreeTooHigh { degree: usize, bound: usize },
    #[error("grid denominator is not invertible in the coefficient ring")]
    NonInvertibleDenominator,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInstance(msg.into())
}
