use thiserror::Error;

/// Errors raised by the engine. Verification failures are never errors;
/// they are reported as failed checks.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "configuration is not simple normal crossing: pairing {pairing} between roots {i} and {j}"
    )]
    NotSimpleNormalCrossing { i: usize, j: usize, pairing: i64 },

    #[error("configuration is not negative definite: {0}")]
    NotNegativeDefinite(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("catalog load error in entry `{entry}`, field `{field}`: {msg}")]
    Load {
        entry: String,
        field: String,
        msg: String,
    },

    #[error("io error on {path}: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
