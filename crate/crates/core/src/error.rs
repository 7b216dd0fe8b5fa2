use thiserror::Error;

/// Errors raised by construction, evaluation, and configuration parsing.
#[derive(Debug, Error)]
pub enum Error {
    /// A cascade needs at least one stage.
    #[error("empty cascade: at least one stage is required")]
    EmptyCascade,

    /// A stage violates a physical constraint.
    #[error("stage `{name}`: {reason}")]
    InvalidStage { name: String, reason: String },

    /// An input value lies outside its allowed range.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A numeric domain violation (e.g. the dB of a non-positive ratio).
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration document failed to parse or validate.
    #[error("config error at `{path}`: {reason}")]
    Config { path: String, reason: String },
}

impl Error {
    fn invalid_stage(name: &str, reason: impl Into<String>) -> Self {
        Error::InvalidStage {
            name: name.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn stage(name: &str, reason: impl Into<String>) -> Self {
        Self::invalid_stage(name, reason)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
