use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("rating {0} outside [-1, 1]")]
    RatingOutOfRange(f64),
    #[error("star value {0} outside 1..=5")]
    StarsOutOfRange(i64),
    #[error("no ratings")]
    NoRatings,
    #[error("undefined recall: ground truth is empty")]
    UndefinedRecall,
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("scenario complete")]
    ScenarioComplete,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
