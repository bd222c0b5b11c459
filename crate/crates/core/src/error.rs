use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid nucleotide {found:?} at position {position}")]
    InvalidLetter { found: char, position: usize },

    #[error("word length {len} exceeds the supported maximum of {max}")]
    WordTooLong { len: usize, max: usize },

    #[error("empty word")]
    EmptyWord,

    #[error("shape error: {0}")]
    Shape(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("data error: {0}")]
    Data(String),
}
