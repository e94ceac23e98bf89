use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("non-finite component at index {index}: {value}")]
    NonFinite { index: usize, value: f64 },

    #[error("invalid bounds at index {index}: lower {lower} is not below upper {upper}")]
    InvalidBounds { index: usize, lower: f64, upper: f64 },

    #[error("component {index} = {value} lies outside [{lower}, {upper}]")]
    OutOfBounds {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("{path}: file not found")]
    MissingFile { path: PathBuf },

    #[error("{path}: malformed content: {message}")]
    Malformed { path: PathBuf, message: String },

    #[error("{path}: field `{field}` is inconsistent: {message}")]
    Inconsistent {
        path: PathBuf,
        field: &'static str,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("empty input: {0}")]
    Empty(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
