use thiserror::Error;

/// Errors raised by the numerics and the scan engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian: max |m - m†| = {asymmetry:e} exceeds tolerance {tol:e}")]
    NonHermitian { asymmetry: f64, tol: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: String, found: String },

    #[error("entry count {found} does not match {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, found: usize },

    #[error("non-finite entry at index {0}")]
    NonFinite(usize),

    #[error("Pauli index {0} out of range 0..=3")]
    PauliIndex(usize),

    #[error("state vector not normalized: norm² = {0}")]
    NotNormalized(f64),

    #[error("invalid coupling parameters: {0}")]
    InvalidParams(String),

    #[error("not a density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid Bell weights: {0}")]
    InvalidWeights(String),

    #[error("quadrature order {0} is not exact for degree-2 integrands (need >= 2)")]
    InsufficientOrder(usize),

    #[error("Hilbert space dimension {0} is below 2")]
    DimensionTooSmall(usize),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid of {points} points exceeds the resource guard of {limit}")]
    ResourceGuard { points: u128, limit: u128 },

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
