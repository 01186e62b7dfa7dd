use thiserror::Error;

/// Errors raised by the numerical engines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FsqError {
    /// Input outside an operation's domain (shape, symmetry, positivity, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A linear system could not be solved because the matrix is singular.
    #[error("singular matrix (pivot {pivot:.3e} at column {column})")]
    Singular { column: usize, pivot: f64 },
    /// No truncation in the scanned range was invertible.
    #[error("no invertible truncation up to index {0}")]
    NoSolution(usize),
    /// The QL iteration failed to converge.
    #[error("eigensolver did not converge for eigenvalue {0}")]
    NoConvergence(usize),
    /// An exact-arithmetic quantity exceeded the configured bit bound.
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, FsqError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(FsqError::Domain(msg.into()))
}
