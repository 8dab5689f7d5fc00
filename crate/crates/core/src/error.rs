use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("basis index {index} out of range for this algebra (dim {dim})")]
    BasisOutOfRange { index: usize, dim: usize },

    #[error("multiset subtraction underflow at basis index {0}")]
    MultisetUnderflow(usize),

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("invalid table file at {location}: {message}")]
    TableFormat { location: String, message: String },

    #[error("table axioms violated: {0}")]
    TableInvalid(String),

    #[error("tensor is not in the symmetric subspace")]
    NotSymmetric,

    #[error("not in span: residual at coordinate {0}")]
    NotInSpan(String),

    #[error("unknown basis label '{0}'")]
    UnknownLabel(String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
