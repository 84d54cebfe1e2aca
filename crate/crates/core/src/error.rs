use thiserror::Error;

/// Errors raised by the solvers and their building blocks.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An operation was called with inconsistent inputs (mismatched rule,
    /// wrong dimension, wrong regime).
    #[error("usage error: {0}")]
    Usage(String),
    /// The initial datum does not satisfy what a solver requires of it.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// An integrand produced a non-finite value at a quadrature node.
    #[error("non-finite integrand value {value} at node {index}")]
    Evaluation { index: usize, value: f64 },
    /// An iterative numerical procedure did not converge.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
