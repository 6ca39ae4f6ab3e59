use std::io;

/// Errors produced by the library.
///
/// The variants map onto three user-facing classes: bad input (`Domain`,
/// `Usage`, `UnknownIdentity`, `Constraint`), internal consistency failures
/// (`Integrity`) and I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("unknown identity `{id}`")]
    UnknownIdentity { id: String },

    #[error("identity `{id}`: {message}")]
    Constraint { id: String, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn integrity(msg: impl Into<String>) -> Self {
        Error::Integrity(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    /// True for errors caused by caller input rather than by the library or
    /// the environment.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::Usage(_) | Error::UnknownIdentity { .. } | Error::Constraint { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
