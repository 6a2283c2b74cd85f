use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid channel parameters: {0}")]
    InvalidChannel(String),

    #[error("operation requires a strict channel (0 < p <= q < 1/2)")]
    RequiresStrictChannel,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("word is not a codeword")]
    NotACodeword,

    #[error("{what}: n = {n} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },

    #[error("invalid threshold: {0}")]
    InvalidThreshold(String),

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("Plotkin bound inapplicable: 2d = {} <= n = {n}", 2 * .d)]
    PlotkinInapplicable { d: i64, n: usize },

    #[error("integer program is unbounded in variables {variables:?}")]
    Unbounded { variables: Vec<usize> },

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
