use thiserror::Error;

/// Errors raised by the spectral routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Two eigenvalues coincide, or an eigenvalue of positive index vanishes
    /// (reported as a collision with index 0).
    #[error("degenerate spectrum: lambda_{first} = lambda_{second}")]
    DegenerateSpectrum { first: usize, second: usize },

    #[error("invalid eigen-system: {0}")]
    InvalidEigenSystem(String),

    /// The finite-order criterion failed at `delta_n^(k)`.
    #[error("no operator of order {order} fits the data: criterion fails at n = {n}, k = {k}")]
    NoFiniteOrderOperator { order: usize, n: usize, k: usize },

    /// A reconstructed operator did not reproduce the prescribed eigenpair.
    #[error("reconstructed operator fails the eigen-equation at n = {0}")]
    EigenpairMismatch(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
