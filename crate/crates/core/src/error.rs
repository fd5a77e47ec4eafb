use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 1,
            Error::Precondition(_) => 2,
            Error::Internal(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Precondition(_) => "precondition",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
