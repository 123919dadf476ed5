use thiserror::Error;

use crate::statevec::MAX_QUBITS;

/// Errors raised by the simulation kernel and the protocol layers built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for a {num_qubits}-qubit state")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("{0} qubits requested, at most {MAX_QUBITS} are supported")]
    TooManyQubits(usize),

    #[error("a state needs at least one qubit")]
    NoQubits,

    #[error("invalid keep set: {0}")]
    InvalidKeepSet(String),

    #[error("invalid qubit permutation: {0}")]
    InvalidPermutation(String),

    #[error("gate is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("N = {n} is outside the supported range {min}..={max}")]
    PairsOutOfRange { n: usize, min: usize, max: usize },

    #[error("message {value} is out of range for N = {n} (need value < 2^{})", 2 * n)]
    MessageOutOfRange { value: u64, n: usize },

    #[error("generalized Bell index {0} is outside 1..=16")]
    GIndexOutOfRange(u32),

    #[error("state is not a generalized Bell state (best overlap probability {0})")]
    NotABasisState(f64),

    #[error("malformed bit string {0:?}")]
    MalformedBits(String),

    #[error("malformed Pauli string {0:?}")]
    MalformedPauli(String),

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
