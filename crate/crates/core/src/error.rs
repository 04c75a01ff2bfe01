use std::fmt;

/// Errors raised by the engine. Verdicts (violation found or not) are never
/// errors; these are invalid inputs and out-of-range queries.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A document or system failed validation; `path` is a JSON-style path
    /// to the offending field.
    #[error("{path}: {reason}")]
    Invalid { path: String, reason: String },

    #[error("stage {stage} is past the last declared stage {last}")]
    StageOutOfRange { stage: usize, last: usize },

    #[error("generator {generator}{inverse} has no stage map at stage {stage}",
        inverse = if *.inverse { "⁻¹" } else { "" })]
    HorizonExhausted {
        generator: usize,
        inverse: bool,
        stage: usize,
    },

    #[error("expected vector of length {expected} at stage {stage}, found {found}")]
    VectorLength {
        stage: usize,
        expected: usize,
        found: usize,
    },

    #[error("expected {expected} elements (one per generator), found {found}")]
    GeneratorCount { expected: usize, found: usize },

    #[error("requires a stationary system; {0}")]
    NotStationary(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(path: impl fmt::Display, reason: impl fmt::Display) -> Self {
        Error::Invalid {
            path: path.to_string(),
            reason: reason.to_string(),
        }
    }
}
