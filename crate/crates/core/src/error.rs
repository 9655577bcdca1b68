use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A coloring or assignment does not match the instance it is applied to.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Parameters outside their documented domain.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An exact search or enumeration would exceed a configured cap.
    #[error("too large for exact search: {0}")]
    TooLarge(String),

    /// The operation needs an explicit (or enumerable) edge set.
    #[error("edge set not enumerable: {0}")]
    NotEnumerable(String),

    /// No constraints exist between the requested layer pair.
    #[error("no constraints between layers {i} and {j}")]
    EmptyConstraints { i: usize, j: usize },

    /// Text-format parse failure with a 1-based line number.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line, msg: msg.into() }
    }
}
