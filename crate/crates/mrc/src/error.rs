use mrc_core::MrcError;
use thiserror::Error;

/// Errors surfaced by the harness, split by process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or inconsistent input; exit code 2.
    #[error("input error: {0}")]
    Input(String),
    /// A solver or numeric routine failed; exit code 3.
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl From<MrcError> for CliError {
    fn from(e: MrcError) -> Self {
        match e {
            MrcError::BracketFailure
            | MrcError::InfeasibleLp(_)
            | MrcError::UnboundedLp(_)
            | MrcError::AlphaInfeasible(_) => CliError::Numeric(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
