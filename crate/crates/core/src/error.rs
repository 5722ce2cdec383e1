use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("dimension {0} is not a power of two")]
    NotQubitDimension(usize),

    #[error("expected {expected} qubits, got {got}")]
    QubitCount { expected: usize, got: usize },

    #[error("not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("state vector is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("qubit index {index} out of range for {qubits} qubits")]
    QubitOutOfRange { index: usize, qubits: usize },

    #[error("duplicate qubit index {0}")]
    DuplicateQubit(usize),

    #[error("empty qubit list")]
    EmptyQubitList,

    #[error("measurement axis is not a unit vector (norm {0})")]
    NotUnitVector(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("alice Bloch vector is degenerate (|a| = {0:e}); use the direct residual")]
    DegenerateBloch(f64),

    #[error("operation needs a pure state vector")]
    NotPureState,

    #[error("malformed state file: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
