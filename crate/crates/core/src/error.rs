use thiserror::Error;

/// Errors raised by tensor construction, the file format, and the analysis
/// routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    Input(String),
    /// The requested class/system combination has no witness formulation.
    #[error("unsupported operation: {0}")]
    Capability(String),
    /// The tensor file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
