use thiserror::Error;

use crate::constructive::Stage;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    /// A structural rule of the data model was broken (loop, duplicate arc, ...).
    #[error("validation error: {0}")]
    Validation(String),

    #[error("parse error at line {line}, field `{field}`: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },

    /// The exact solver proved the answer exceeds the caller's limit.
    #[error("mu exceeds limit {limit}: lower bound {lower}, best upper bound {upper}")]
    LimitExceeded { limit: usize, lower: usize, upper: usize },

    #[error("mu oracle unavailable: {0}")]
    OracleUnavailable(String),

    /// A constructive step could not be completed. `stages` runs from the
    /// outermost operation to the step that failed.
    #[error("construction failed at {}: {detail}", format_trail(.stages))]
    Construction { stages: Vec<Stage>, detail: String },
}

fn format_trail(stages: &[Stage]) -> String {
    stages.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" > ")
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionViolation(msg.into())
    }

    pub(crate) fn construction(stage: Stage, detail: impl Into<String>) -> Self {
        Error::Construction {
            stages: vec![stage],
            detail: detail.into(),
        }
    }

    /// Prefixes `outer` to a construction failure; any other error becomes a
    /// construction failure at `outer`.
    pub(crate) fn within(self, outer: Stage) -> Self {
        match self {
            Error::Construction { mut stages, detail } => {
                stages.insert(0, outer);
                Error::Construction { stages, detail }
            }
            other => Error::construction(outer, other.to_string()),
        }
    }

    /// Innermost failing stage of a construction failure.
    pub fn failed_stage(&self) -> Option<&Stage> {
        match self {
            Error::Construction { stages, .. } => stages.last(),
            _ => None,
        }
    }
}
