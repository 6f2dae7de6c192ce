use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("not a subalgebra: {0}")]
    NotClosed(String),

    #[error("element does not lie in {0}")]
    NotContained(String),

    #[error("matrix is not Hermitian")]
    NotHermitian,

    #[error("CR algebra is not n-reductive")]
    NotNReductive,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// A mathematical identity that must hold did not; signals a bug or
    /// inconsistent input rather than a user error.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("numerical failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, CrError>;
