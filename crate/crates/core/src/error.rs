use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An arithmetic result left the finite range of `f64`.
    #[error("numeric range error in {op}: result is not finite")]
    NumericRange { op: &'static str },

    #[error("non-finite value {value} supplied to {context}")]
    NonFinite { context: &'static str, value: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("coordinate {index} = {value} lies outside [{lower}, {upper}]")]
    OutOfBounds {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),

    #[error("unknown problem {0:?}")]
    UnknownProblem(String),

    #[error("unknown encoding mode {0:?}")]
    UnknownEncoding(String),

    #[error("encoding {mode} is not supported by {algorithm}")]
    UnsupportedEncoding { algorithm: String, mode: String },

    #[error("empty sample")]
    EmptySample,

    #[error("{0}")]
    Statistics(String),

    #[error("checkpoint cadence mismatch: {0}")]
    CadenceMismatch(String),

    #[error("failed to parse {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("{}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
