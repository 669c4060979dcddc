use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("power series: {0}")]
    Series(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("mixed weights: expected {expected}, found {found}")]
    MixedWeights { expected: usize, found: usize },

    #[error("weight {requested} exceeds the configured cutoff {cutoff}")]
    CutoffExceeded { requested: usize, cutoff: usize },

    #[error("presentation is not a shuffle bialgebra ({} violation(s))", .0.len())]
    InvalidPresentation(Vec<crate::rigidity::Violation>),

    #[error("rigidity failure for `{label}`: {reason}")]
    RigidityFailure { label: String, reason: String },

    #[error("presentation format: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
