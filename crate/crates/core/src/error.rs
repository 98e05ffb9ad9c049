use thiserror::Error;

/// Errors produced anywhere in the homodim pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input at row {row}, column {column}: {message}")]
    MalformedInput {
        /// 1-based row; 0 when the whole input is affected.
        row: usize,
        /// 1-based column; 0 when the whole row is affected.
        column: usize,
        message: String,
    },

    #[error("invalid manifold spec: {0}")]
    InvalidSpec(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("capacity exceeded in dimension {dim}: more than {budget} simplices")]
    CapacityExceeded { dim: usize, budget: usize },

    #[error("face {face:?} of simplex {simplex:?} is missing from the filtration")]
    MissingFace { simplex: Vec<usize>, face: Vec<usize> },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("degenerate pair: birth {birth} is not below death {death}")]
    DegeneratePair { birth: f64, death: f64 },

    #[error("binomial coefficient C({q}, {k}) overflows u64")]
    Overflow { q: u64, k: u64 },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
