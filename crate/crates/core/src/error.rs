use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MavError {
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("committee size {k} out of range 0..={m}")]
    InvalidCommitteeSize { k: usize, m: usize },

    #[error("election has no ballots")]
    NoBallots,

    #[error("vote subset is empty")]
    EmptySubset,

    #[error("ballot index {index} out of range for {n} ballots")]
    BallotIndex { index: usize, n: usize },

    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    InvalidEpsilon(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u64,
        limit: u64,
    },

    #[error("LP solver failure: {0}")]
    Solver(String),
}

pub type Result<T> = std::result::Result<T, MavError>;
