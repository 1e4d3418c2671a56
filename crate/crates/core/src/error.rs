use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("solver limit exceeded: graph has {vertices} vertices, limit is {limit}")]
    SizeLimit { vertices: usize, limit: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("invalid vector set: {0}")]
    InvalidVectors(String),

    #[error("vectors {0} and {1} are not orthogonal (|<u,v>| = {2:e})")]
    NonOrthogonal(String, String, f64),

    #[error("hyperedge has {size} members but the dimension is {dimension}")]
    EdgeTooLarge { size: usize, dimension: usize },

    #[error("unknown label: {0}")]
    UnknownLabel(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("state is not normalized (norm = {0})")]
    Unnormalized(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
