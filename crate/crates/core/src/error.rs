use thiserror::Error;

/// Errors produced by the cone geometry routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed input: wrong dimension, asymmetric matrix, bad file contents.
    #[error("invalid input: {0}")]
    Input(String),
    /// Input is well formed but outside the domain of the operation,
    /// e.g. a point that is not in the interior of the cone.
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical procedure failed to reach its tolerance.
    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
