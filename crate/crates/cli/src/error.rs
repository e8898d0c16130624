use mav_core::MavError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] MavError),
}

impl CliError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            line,
            message: message.into(),
        }
    }

    /// 2 for usage and input errors, 3 when an enumeration budget is hit,
    /// 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Core(MavError::BudgetExceeded { .. }) => 3,
            CliError::Core(
                MavError::InvalidEpsilon(_)
                | MavError::InvalidParameter(_)
                | MavError::InvalidCommitteeSize { .. }
                | MavError::LengthMismatch { .. }
                | MavError::NoBallots,
            ) => 2,
            CliError::Core(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
