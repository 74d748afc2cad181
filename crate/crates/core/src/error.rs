use thiserror::Error;

use crate::tournament::Team;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("team {team} is out of range for a field of {teams} teams")]
    UnknownTeam { team: Team, teams: usize },

    #[error("illegal move: {0}")]
    IllegalMove(String),

    #[error("outcome {0}:{1} is not in the scoring model")]
    InvalidOutcome(u32, u32),

    #[error("invalid scoring model: {0}")]
    InvalidModel(String),

    #[error("scoring model not of form S={{(i,n-i)}}")]
    ModelNotSupported,

    #[error("operation requires win-loss results")]
    RequiresWinLoss,

    #[error("malformed cup tree: {0}")]
    MalformedTree(String),

    #[error("target cannot be made the winner")]
    NotAchievable,

    #[error("sink capacity for team {team} would be negative ({fixed} points already banked, cap {cap})")]
    InvalidCapacity { team: Team, fixed: i64, cap: i64 },

    #[error("malformed flow network: {0}")]
    MalformedNetwork(String),

    #[error("flow network has no feasible flow")]
    Infeasible,

    #[error("coalition of {size} exceeds the configured bound of {bound}")]
    CoalitionTooLarge { size: usize, bound: usize },

    #[error("malformed seeded field: {0}")]
    MalformedField(String),

    #[error("malformed bracket: {0}")]
    MalformedBracket(String),

    #[error("illegal throw: {0}")]
    IllegalThrow(String),

    #[error("instance too large for exhaustive search ({size} > {cap})")]
    TooLarge { size: usize, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Diagnostics for the line-oriented text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: {message}")]
    Validation { line: usize, message: String },
}

impl InputError {
    pub fn line(&self) -> usize {
        match self {
            InputError::Parse { line, .. } | InputError::Validation { line, .. } => *line,
        }
    }
}
