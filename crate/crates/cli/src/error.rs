use std::fmt;

use bayes_pricer::Error;

use crate::config::ConfigError;

/// Everything a command can fail with, and the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Exit 1.
    CheckFailed(String),
    /// Exit 2.
    Config(ConfigError),
    /// Exit 2 or 3 depending on the library error.
    Library(Error),
    /// Exit 3.
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Config(_) => 2,
            CliError::Library(e) => library_code(e),
            CliError::Output(_) => 3,
        }
    }
}

fn library_code(e: &Error) -> i32 {
    match e {
        // bad or unsupported inputs that the config parser cannot see
        Error::InvalidParams(_) | Error::Unsupported(_) => 2,
        Error::AtMaturity { source, .. } => library_code(source),
        _ => 3,
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::CheckFailed(m) => write!(f, "check failed: {m}"),
            CliError::Config(e) => write!(f, "config error: {e}"),
            CliError::Library(e) => write!(f, "{e}"),
            CliError::Output(m) => write!(f, "output error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Library(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}
