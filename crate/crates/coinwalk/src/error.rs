//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A matrix or state failed a validity check (Hermiticity, positivity, trace).
    #[error("invalid state: {0}")]
    InvalidState(String),
    /// An amplitude list or distribution is not normalized.
    #[error("normalization error: {0}")]
    Normalization(String),
    /// The requested operation is outside its supported parameter range.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Bad user-supplied configuration (CLI flags, input files).
    #[error("invalid configuration: {0}")]
    Config(String),
    /// A numerical invariant (trace preservation, Hermiticity drift) was violated at runtime.
    #[error("numerical invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
