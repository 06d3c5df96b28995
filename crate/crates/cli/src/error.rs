use smc_core::SmcError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("schedule was written for instance {found}, not {expected}")]
    HashMismatch { expected: String, found: String },
    #[error("strategy {strategy} does not apply: {reason}")]
    Inapplicable { strategy: &'static str, reason: String },
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("invalid schedule")]
    Invalid,
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("bench config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] SmcError),
}

impl CliError {
    /// 0 ok, 1 invalid schedule, 2 input or contract error, 3 resource budget.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid => 1,
            CliError::Resource(_) => 3,
            CliError::Core(SmcError::BudgetExhausted(_) | SmcError::SizeLimit { .. }) => 3,
            _ => 2,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        CliError::Parse { line, message: message.into() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
