use thiserror::Error;

/// Errors raised by the laboratory operations and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the domain of the formula being evaluated.
    #[error("domain error: {0}")]
    Domain(String),

    /// The formula has a pole or branch point at the given input.
    #[error("singularity: {0}")]
    Singularity(String),

    /// The requested computation would exceed the configured size limits.
    #[error("resource limit: {0}")]
    Resource(String),

    /// Malformed user input (flags, parameter combinations).
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("constants file line {line}: {message}")]
    Config { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit status used by the CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Config { .. } => 2,
            Error::Domain(_) | Error::Singularity(_) => 3,
            Error::Resource(_) => 4,
            Error::Io(_) | Error::Json(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
