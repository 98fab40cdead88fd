use thiserror::Error;

/// Errors produced by the hazard kernels, the simulator and the CLI layer.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration value failed validation. `path` is the dotted field path.
    #[error("invalid value at `{path}`: {message}")]
    Validation { path: String, message: String },

    /// An operation was applied to a unit in the wrong state.
    #[error("state error: {0}")]
    State(String),

    /// Parallel composition was asked for a system with no surviving unit.
    #[error("composition error: {0}")]
    Composition(String),

    /// Malformed input to an analysis routine.
    #[error("input error: {0}")]
    Input(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by the user's configuration rather than by a
    /// numerical or I/O failure at run time.
    pub fn is_config_error(&self) -> bool {
        matches!(self, Error::Validation { .. } | Error::Config(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
