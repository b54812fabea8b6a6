use thiserror::Error;

use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("truncation level mismatch: expected {expected}, found {found}")]
    LevelMismatch { expected: usize, found: usize },

    #[error("letter {letter} outside alphabet 1..={dim}")]
    LetterOutOfRange { letter: u8, dim: usize },

    #[error("word {word} longer than truncation level {level}")]
    WordTooLong { word: Word, level: usize },

    #[error("exp needs a series with zero empty-word coefficient")]
    NonzeroConstantTerm,

    #[error("log needs a series with empty-word coefficient 1")]
    NotGroupLike,

    #[error("series is not a Lie element (residual on word {word})")]
    NotLieElement { word: Word },

    #[error("{0} is not a Lyndon word")]
    NotLyndon(Word),

    #[error("{op} is not available for dimension {dim}")]
    UnsupportedDimension { op: &'static str, dim: usize },

    #[error("matrix is not orthogonal (max |AA^T - I| = {deviation:e})")]
    NotOrthogonal { deviation: f64 },

    #[error("point lies outside the moving frame domain")]
    OutOfDomain,

    #[error("path needs at least one point")]
    EmptyPath,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
