use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Mathematical negatives (a disjoint pair of principal ideals, a failed
/// independence test) are reported through verdict types, never through
/// this enum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("elements or ideals belong to different models")]
    ModelMismatch,
    #[error("ideals belong to different rings")]
    RingMismatch,
    #[error("invalid element for model: {0}")]
    InvalidElement(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("budget misuse: {0}")]
    Budget(String),
    #[error("search budget exhausted after bound {bound}: {what}")]
    SearchExhausted { what: String, bound: u64 },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("word of length {len} needs interior depth {needed}, window has none left")]
    WordTooLong { len: usize, needed: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, LabError>;
