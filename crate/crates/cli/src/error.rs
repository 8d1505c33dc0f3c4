use thiserror::Error;

use crate::polyparse::ParseError;

/// Failure of a command, carrying its exit-code class.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    /// Malformed or semantically invalid input. Exit code 2.
    #[error("input error: {0}")]
    Input(String),
    /// A well-formed question with a negative mathematical answer, such as
    /// a form outside the image of the contraction. Exit code 1.
    #[error("{0}")]
    Negative(String),
    /// An internal cross-check failed. Exit code 3.
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Negative(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn input_at(location: &str, message: impl std::fmt::Display) -> Self {
        CliError::Input(format!("{location}: {message}"))
    }
}

impl From<multiphase::Error> for CliError {
    fn from(e: multiphase::Error) -> Self {
        match e {
            multiphase::Error::Internal(m) => CliError::Internal(m),
            e @ multiphase::Error::NotInImage(_) => CliError::Negative(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
