use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid hysteron thresholds: alpha={alpha}, beta={beta} (need finite alpha >= beta)")]
    InvalidThresholds { alpha: f64, beta: f64 },

    #[error("non-finite input sample {value}")]
    NonFiniteInput { value: f64 },

    #[error("non-finite input at sample {index}: {value}")]
    NonFiniteSample { index: usize, value: f64 },

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("invalid density: {0}")]
    InvalidDensity(String),

    #[error("length mismatch for {what}: expected {expected}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("invalid relay state {0} (must be -1 or +1)")]
    InvalidState(f64),

    #[error("could not read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("worker pool: {0}")]
    Pool(String),

    #[error("benchmark checksum mismatch: timed run {timed:#018x}, reference {reference:#018x}")]
    ChecksumMismatch { timed: u64, reference: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
