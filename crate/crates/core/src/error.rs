use thiserror::Error;

/// Errors raised by the library. The variants line up with the process exit
/// codes of the command-line tool.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-domain input.
    #[error("input error: {0}")]
    Input(String),
    /// A configured size bound was exceeded.
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    /// A computed object failed a mathematical check it must satisfy.
    #[error("validation failure: {0}")]
    Validation(String),
    /// An internal invariant broke. Indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
