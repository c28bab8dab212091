use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("boundaries are not contained in the cycles: {0}")]
    BoundaryNotInCycles(String),
    #[error("expected a free module: {0}")]
    NonFree(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("lifting failed: {0}")]
    LiftFailure(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("computation cancelled")]
    Cancelled,
}

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
