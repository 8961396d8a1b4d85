use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parameter out of range: {0}")]
    Param(String),

    #[error("operation requires an explicit (aux-free) polytope")]
    Lifted,

    #[error("integer hull has no facet description")]
    MissingFacets,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
