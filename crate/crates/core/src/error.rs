//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed identifier {0:?}: no alphanumeric content")]
    MalformedIdentifier(String),

    #[error("malformed identifier {0:?}: non-ASCII characters are not supported")]
    NonAsciiIdentifier(String),

    #[error("word position {index} out of range 1..={count}")]
    PositionOutOfRange { index: usize, count: usize },

    #[error("word list {path}: {message}")]
    WordList { path: String, message: String },

    #[error("vector file is empty")]
    EmptyVectorFile,

    #[error("vector file line {line}: {message}")]
    VectorParse { line: usize, message: String },

    #[error("vector for {word:?} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        word: String,
        expected: usize,
        found: usize,
    },

    #[error("vector for {word:?} is all zeros")]
    ZeroVector { word: String },

    #[error("no word of the {concept} concept list is in the vector vocabulary")]
    ConceptOutOfVocabulary { concept: String },

    #[error("mean vector for the {concept} concept has zero norm")]
    DegenerateConcept { concept: String },

    #[error("stratified split: {0}")]
    Stratification(String),

    #[error("invalid fold count {k} for {size} examples")]
    InvalidFoldCount { k: usize, size: usize },

    #[error("degenerate training set: {0}")]
    DegenerateTraining(String),

    #[error("invalid hyperparameters: {0}")]
    InvalidHyperparameters(String),

    #[error("feature arity mismatch: model expects {expected}, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("model file: {0}")]
    ModelFormat(String),

    #[error("unknown tag code {0:?}")]
    UnknownTag(String),

    #[error("unknown identifier context {0:?}")]
    UnknownContext(String),

    #[error("evaluation requires at least one (gold, predicted) pair")]
    EmptyEvaluation,

    #[error("cache entry for {0:?} already exists")]
    DuplicateCacheEntry(String),

    #[error("cache unavailable: {0}")]
    CacheUnavailable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
