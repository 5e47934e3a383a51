use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty dataset")]
    EmptyDataset,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("label {label} outside 1..={num_classes}")]
    LabelOutOfRange { label: usize, num_classes: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("training data contains a single class")]
    SingleClass,

    #[error("solver did not converge after {iterations} iterations (gap {gap:.3e})")]
    NoConvergence { iterations: usize, gap: f64 },

    #[error("training diverged (loss is not finite) at epoch {epoch}")]
    Diverged { epoch: usize },

    #[error("degenerate ranking")]
    DegenerateRanking,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("model file format error: {0}")]
    ModelFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
