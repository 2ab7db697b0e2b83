//! Error type shared across the crate.

use thiserror::Error;

/// Errors reported by constructors, verifiers, and parsers.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input: bad shapes, non-partitions,
    /// constants outside their allowed region, unparsable text.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A constraint that the requested construction needs does not hold
    /// (for example a symmetry constraint on seeded constants).
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),

    /// The requested construction only supports checking constraints, not
    /// solving them, for this input.
    #[error("constraints can only be verified for this input: {0}")]
    VerifyOnly(String),

    /// An internal consistency check failed; indicates a bug rather than
    /// bad input.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
