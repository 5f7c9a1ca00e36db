use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Invalid pipeline configuration (window geometry, exponents, mode pairing).
    #[error("configuration error: {0}")]
    Config(String),

    /// A 1-based pixel index outside the image.
    #[error("index ({row}, {col}) outside {height}x{width} image")]
    Index {
        row: usize,
        col: usize,
        height: usize,
        width: usize,
    },

    /// Grid shape or value violates a type invariant.
    #[error("invalid field: {0}")]
    Field(String),

    /// Input outside an operation's domain, e.g. a negative magnitude.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("PGM parse error at byte {offset}: {message}")]
    Pgm { offset: usize, message: String },
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn pgm(offset: usize, msg: impl Into<String>) -> Self {
        Error::Pgm {
            offset,
            message: msg.into(),
        }
    }
}
