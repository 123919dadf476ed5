//! Simulator for superdense coding over 2N-qubit generalized Bell states.
//!
//! Alice and Bob share `|s0⟩ = 2^{-N/2} Σ_x |x⟩_A |x⟩_B`. Alice encodes a
//! 2N-bit message `j` by applying a product of single-qubit Pauli operators
//! to her N qubits, sends them to Bob, and Bob recovers `j` with a projective
//! measurement in the generalized Bell basis `{|s_j⟩}`.
//!
//! Modules, bottom-up:
//! - [`statevec`]: dense kets, density matrices, single-qubit gates, partial
//!   trace, qubit permutation and a Jacobi eigensolver.
//! - [`bellbasis`]: Bell states, the sixteen four-qubit states `g1..g16`,
//!   the `|s_j⟩` family for any N, the GHZ family and Bell-pair factorizations.
//! - [`protocol`]: encoding, measurement, decoding, the 4-bit convention
//!   table and session transcripts.
//! - [`capacity`]: von Neumann entropy, dense-coding capacity and orbit counts.
//! - [`cli`]: the `superdense` command-line front end.

pub mod bellbasis;
pub mod capacity;
pub mod cli;
mod error;
pub mod protocol;
pub mod statevec;

pub use error::{Error, Result};
