use thiserror::Error;

/// Errors raised while ingesting or analysing arrangements and presentations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: malformed rational `{token}`")]
    MalformedRational { line: usize, token: String },

    #[error("line {line}: expected 3 coefficients `a b c`, found {found}")]
    WrongArity { line: usize, found: usize },

    #[error("line {index} is degenerate (a = b = 0)")]
    DegenerateLine { index: usize },

    #[error("lines {first} and {second} are the same line")]
    DuplicateLine { first: usize, second: usize },

    #[error("line {left} of the first arrangement equals line {right} of the second")]
    SharedLine { left: usize, right: usize },

    #[error("relation {relation} does not preserve word length")]
    NotHomogeneous { relation: usize },

    #[error("{words} words of length {length} exceed the size cap of {cap}")]
    SizeCapExceeded {
        length: usize,
        words: u128,
        cap: usize,
    },

    #[error("word of length {length} exceeds the enumerated maximum {max_length}")]
    WordTooLong { length: usize, max_length: usize },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid word syntax: {0}")]
    InvalidWord(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
