use thiserror::Error;

/// Errors produced by the planning library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid region: {0}")]
    InvalidRegion(String),

    #[error("invalid scene: {0}")]
    InvalidScene(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{n} points exceed the exact solver limit of {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("object `{id}` was not detected before reaching its center")]
    DegenerateDetection { id: String },

    #[error("only {kept} view samples reach score threshold {threshold}; at least {required} are needed")]
    InsufficientCoverage {
        kept: usize,
        required: usize,
        threshold: f64,
    },

    #[error("scene packing infeasible: placed {achieved} of {requested} objects")]
    Capacity { achieved: usize, requested: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unknown method `{0}`")]
    UnknownMethod(String),

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures caused by the filesystem rather than by the data.
    pub fn is_io(&self) -> bool {
        match self {
            Error::Io(_) => true,
            Error::Csv(e) => e.is_io_error(),
            Error::Json(e) => e.is_io(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
