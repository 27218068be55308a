use thiserror::Error;

use crate::circuit::qasm::QasmError;

/// Convenience alias used throughout the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0} qubits exceeds the supported maximum of {max}", max = crate::qcore::MAX_QUBITS)]
    TooManyQubits(usize),

    #[error("a register needs at least one qubit")]
    EmptyRegister,

    #[error("qubit index {index} is out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("qubit {0} is listed more than once")]
    DuplicateQubit(usize),

    #[error("weight must be non-negative, got {0}")]
    NegativeWeight(f64),

    #[error("no qubits given to trace out")]
    NothingToTrace,

    #[error("cannot trace out every qubit of the register")]
    TraceOutAll,

    #[error("state is not normalized: squared norm is {0}")]
    NotNormalized(f64),

    #[error("operator is not Hermitian: expectation value has imaginary part {0:e}")]
    NotHermitian(f64),

    #[error("invalid protocol parameters: {0}")]
    InvalidParams(String),

    #[error("noise rate {0} is outside [0, 1]")]
    RateOutOfRange(f64),

    #[error("measurement outcome {0} is outside 1..=4")]
    InvalidOutcome(usize),

    #[error("invalid probability distribution: {0}")]
    InvalidProbabilities(String),

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("conditional output has zero trace; outcome cannot occur")]
    ZeroTrace,

    #[error(transparent)]
    Qasm(#[from] QasmError),
}
