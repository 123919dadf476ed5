//! Von Neumann entropy, dense-coding capacity and local-orbit counting.

use serde::{Deserialize, Serialize, Serializer};

use crate::bellbasis::{check_pairs, pauli_string, MAX_PAIRS};
use crate::error::{Error, Result};
use crate::statevec::{DensityMatrix, Ket};

/// Eigenvalues at or below this are treated as exact zeros in `λ log λ`.
pub const EIGENVALUE_FLOOR: f64 = 1e-12;
/// Overlap modulus below which two orbit states count as orthogonal.
pub const ORTHOGONALITY_TOL: f64 = 1e-8;

/// `S(ρ) = -Tr(ρ log2 ρ)` in bits. Results below [`EIGENVALUE_FLOOR`] are
/// reported as exactly zero.
pub fn von_neumann_entropy(m: &DensityMatrix) -> Result<f64> {
    let s: f64 = m
        .eigenvalues()?
        .into_iter()
        .filter(|&l| l > EIGENVALUE_FLOOR)
        .map(|l| -l * l.log2())
        .sum();
    if s < EIGENVALUE_FLOOR {
        return Ok(0.0);
    }
    Ok(s.min((m.dim() as f64).log2()))
}

/// `log2 d` bits.
pub fn holevo_bound(d: usize) -> Result<f64> {
    if d < 1 {
        return Err(Error::InvalidDimension(format!("dimension {d} < 1")));
    }
    Ok((d as f64).log2())
}

/// Serializes a real rounded to 12 significant digits.
pub(crate) fn twelve_significant<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rounded: f64 = format!("{v:.11e}").parse().unwrap_or(*v);
    // no "-0.0" in reports
    s.serialize_f64(rounded + 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport {
    #[serde(rename = "d_A")]
    pub d_a: usize,
    #[serde(rename = "S_B", serialize_with = "twelve_significant")]
    pub entropy_b: f64,
    #[serde(rename = "S_AB", serialize_with = "twelve_significant")]
    pub entropy_ab: f64,
    #[serde(serialize_with = "twelve_significant")]
    pub chi: f64,
    #[serde(serialize_with = "twelve_significant")]
    pub holevo: f64,
}

/// `χ(ρ^AB) = log2 d_A + S(ρ^B) - S(ρ^AB)`, with Alice as the leading factor
/// of a `d_A x bob_dims` bipartition.
pub fn dense_coding_capacity(rho_ab: &DensityMatrix, d_a: usize, bob_dims: usize) -> Result<CapacityReport> {
    if d_a == 0 || bob_dims == 0 || d_a * bob_dims != rho_ab.dim() {
        return Err(Error::DimensionMismatch { expected: rho_ab.dim(), found: d_a * bob_dims });
    }
    let rho_b = rho_ab.trace_out_leading(d_a)?;
    let entropy_b = von_neumann_entropy(&rho_b)?;
    let entropy_ab = von_neumann_entropy(rho_ab)?;
    Ok(CapacityReport {
        d_a,
        entropy_b,
        entropy_ab,
        chi: (d_a as f64).log2() + entropy_b - entropy_ab,
        holevo: holevo_bound(rho_ab.dim())?,
    })
}

/// Capacity of the pure state `k` with Alice holding its first `alice_qubits` qubits.
pub fn pure_state_capacity(k: &Ket, alice_qubits: usize) -> Result<CapacityReport> {
    if alice_qubits == 0 || alice_qubits >= k.num_qubits() {
        return Err(Error::InvalidKeepSet(format!(
            "Alice needs between 1 and {} of the {} qubits",
            k.num_qubits().saturating_sub(1),
            k.num_qubits()
        )));
    }
    let rho = DensityMatrix::from_pure(k);
    dense_coding_capacity(&rho, 1 << alice_qubits, 1 << (k.num_qubits() - alice_qubits))
}

/// Size of a maximal set of mutually orthogonal states among `P_j |k⟩` for all
/// `4^N` Pauli strings on Alice's N qubits, collected greedily in index order.
pub fn orthogonal_orbit_count(k: &Ket, n: usize) -> Result<usize> {
    check_pairs(n, MAX_PAIRS)?;
    if k.num_qubits() != 2 * n {
        return Err(Error::DimensionMismatch { expected: 2 * n, found: k.num_qubits() });
    }
    let mut kept: Vec<Ket> = Vec::new();
    for j in 0..1u64 << (2 * n) {
        let state = pauli_string(j, n)?.apply(k)?;
        let mut orthogonal = true;
        for other in &kept {
            if other.inner(&state)?.norm() >= ORTHOGONALITY_TOL {
                orthogonal = false;
                break;
            }
        }
        if orthogonal {
            kept.push(state);
        }
    }
    Ok(kept.len())
}
