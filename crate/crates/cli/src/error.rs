use std::path::PathBuf;

use jones_asymptotics::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("cache mismatch at {}: {reason}", path.display())]
    CacheMismatch { path: PathBuf, reason: String },
    #[error("missing artifacts for {knot}: {missing}; run `jonesasym compute` or `verify` first")]
    MissingArtifacts { knot: String, missing: String },
    #[error("{0}")]
    CheckFailed(String),
    #[error("{0}")]
    Uncertified(String),
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: Error,
    },
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::MissingArtifacts { .. } | CliError::Io(_) => 2,
            CliError::CacheMismatch { .. } | CliError::CheckFailed(_) => 1,
            CliError::Uncertified(_) => 3,
            CliError::Core { source, .. } => match source {
                Error::PrecisionExhausted { .. } | Error::TailNotCertified { .. } => 3,
                Error::NotAKnot { .. } | Error::InvalidBraid(_) | Error::Parse(_) | Error::InvalidArgument(_) => 2,
                _ => 1,
            },
        }
    }
}

/// Attaches the name of the check being run to a library error.
pub trait Context<T> {
    fn context(self, what: impl Into<String>) -> Result<T, CliError>;
}

impl<T> Context<T> for Result<T, Error> {
    fn context(self, what: impl Into<String>) -> Result<T, CliError> {
        self.map_err(|source| CliError::Core {
            context: what.into(),
            source,
        })
    }
}

pub fn io_err(path: &std::path::Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}
