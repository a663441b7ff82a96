use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by vocabulary loading and the game engine.
#[derive(Debug, Error)]
pub enum WordleError {
    #[error("empty vocabulary: no {word_length}-letter words with distinct in-alphabet letters")]
    EmptyVocabulary { word_length: usize },

    #[error("vocabulary source is not valid UTF-8: {0}")]
    Decode(#[from] std::string::FromUtf8Error),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid word {word:?}: {reason}")]
    InvalidWord { word: String, reason: String },

    #[error("invalid pattern {pattern:?}: {reason}")]
    InvalidPattern { pattern: String, reason: String },

    #[error("length mismatch: expected {expected} letters, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("{0:?} is not in the vocabulary")]
    UnknownWord(String),

    #[error("move rejected: {0}")]
    Rejected(#[from] crate::game::MoveRejection),

    #[error("active word set is empty")]
    EmptyActiveSet,

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("malformed cache line {line}: {reason}")]
    CacheFormat { line: usize, reason: String },

    #[error("io error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl WordleError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        WordleError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = WordleError> = std::result::Result<T, E>;
