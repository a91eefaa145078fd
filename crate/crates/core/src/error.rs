use std::path::PathBuf;

/// Errors produced by the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Planes or maps whose dimensions disagree.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Out-of-range or otherwise invalid parameter.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Non-finite sample in an image that must be finite.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    /// Evaluation could not be performed (empty mask, empty report list, ...).
    #[error("evaluation error: {0}")]
    Evaluation(String),

    /// Bad key or value in a text configuration.
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Format(#[from] FormatError),

    #[error("missing {what}: {}", path.display())]
    Missing { what: String, path: PathBuf },

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// File-format failures, one class per failure mode.
#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("truncated payload: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },

    #[error("dimension overflow: {width}x{height}x{channels}")]
    DimensionOverflow {
        width: usize,
        height: usize,
        channels: usize,
    },

    #[error("missing or unsupported version tag: {0}")]
    Version(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("image codec: {0}")]
    Codec(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
