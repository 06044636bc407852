use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid samples: {0}")]
    InvalidSamples(String),

    #[error("vertex index {index} out of range for {len} vertices")]
    VertexOutOfRange { index: usize, len: usize },

    #[error("non-finite value {value} at vertex {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("size pair has no vertices")]
    EmptyPair,

    #[error("query ({x}, {y}) is not above the diagonal")]
    BelowDiagonal { x: f64, y: f64 },

    #[error("seminorm of an empty value list")]
    EmptyValues,

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("exhaustive matching budget exceeded: {points} points (limit {limit})")]
    BudgetExceeded { points: usize, limit: usize },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
