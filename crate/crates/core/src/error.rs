use thiserror::Error;

use crate::structure::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid structure:\n{0}")]
    Invalid(ValidationReport),

    /// No admissible completion exists, so no distribution can be formed.
    #[error("empty support: {0}")]
    EmptySupport(String),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
