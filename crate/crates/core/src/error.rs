use std::path::PathBuf;

use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("incompatible vectors: {0}")]
    IncompatibleVectors(String),

    #[error("empty input")]
    EmptyInput,

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    EigensolverFailure { sweeps: usize, off_norm: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension {0}")]
    InvalidDimension(usize),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("outcome index {index} out of range for measurement with {outcomes} outcomes")]
    IndexOutOfRange { index: usize, outcomes: usize },

    #[error("level {level} outside 1..={max}")]
    InvalidLevel { level: usize, max: usize },

    #[error("enumeration of {count} subset tuples exceeds the limit of {limit}")]
    EnumerationTooLarge { count: u128, limit: u128 },

    #[error("Renyi order must be positive, got {0}")]
    InvalidOrder(f64),

    #[error("vector is not majorized by the supplied bound")]
    NotUpperBound,

    #[error("unsupported dimension {0} (grid oracle is qubit-only)")]
    UnsupportedDimension(usize),

    #[error("problem file: {0}")]
    Schema(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
