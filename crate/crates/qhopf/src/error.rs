use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or structurally invalid input.
    #[error("{0}")]
    Invalid(String),
    #[error("inconsistent")]
    Inconsistent,
    #[error("singular")]
    Singular,
    #[error("not invertible")]
    NotInvertible,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// A mathematical verification failed while building a derived object.
    #[error("check failed: {0}")]
    Check(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
