use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported group kind: {0}")]
    UnsupportedKind(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("orthogonal kind requires a real matrix (max imaginary part {0:.3e})")]
    NotReal(f64),

    #[error("determinant {0:.6} is not +1")]
    WrongDeterminant(f64),

    #[error("matrix is not block diagonal (max off-block entry {0:.3e})")]
    NotBlockDiagonal(f64),

    #[error("not a Lie algebra element: {0}")]
    NotInAlgebra(String),

    #[error("group kind mismatch: {left} vs {right}")]
    KindMismatch { left: String, right: String },

    #[error("outside the logarithm domain: norm {norm:.6} >= {limit:.6}")]
    LogDomain { norm: f64, limit: f64 },

    #[error("subspace of dimension {k} in ambient dimension {n} is not proper and nontrivial")]
    DegenerateSubspace { k: usize, n: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search exhausted: best value {best:.6} below target {target:.6}")]
    SearchExhausted { best: f64, target: f64 },

    #[error("no sign change of the residual found on the scan interval")]
    NoBracket,

    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
