//! Crate-wide error type. Operations return `Err` rather than panicking on
//! malformed input: dimension mismatches, out-of-range indices, mixed group
//! variants, or elements from different contexts.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("group element variant mismatch: {0}")]
    GroupVariant(String),

    #[error("context mismatch: {0}")]
    Context(String),

    #[error("singular matrix")]
    Singular,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("validation failed: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
