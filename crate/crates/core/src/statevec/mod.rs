//! Dense state-vector and density-matrix kernel.
//!
//! Qubit 0 is the leftmost symbol in ket notation and the most significant
//! bit of the amplitude index: in `|q0 q1 … q(n-1)⟩` the amplitude index is
//! `Σ q_k · 2^(n-1-k)`.

mod density;
pub mod eigen;
mod gate;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use density::DensityMatrix;
pub use eigen::hermitian_eigenvalues;
pub use gate::OneQubitGate;

use crate::error::{Error, Result};

/// Largest supported register (2^26 amplitudes).
pub const MAX_QUBITS: usize = 26;
/// Tolerance for state normalization and state equality.
pub const STATE_TOL: f64 = 1e-10;
/// Tolerance for eigenvalue comparisons.
pub const EIGEN_TOL: f64 = 1e-9;

/// A normalized pure state of `num_qubits` qubits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KetRepr", into = "KetRepr")]
pub struct Ket {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct KetRepr {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl TryFrom<KetRepr> for Ket {
    type Error = Error;

    fn try_from(repr: KetRepr) -> Result<Self> {
        Ket::new(repr.num_qubits, repr.amplitudes)
    }
}

impl From<Ket> for KetRepr {
    fn from(k: Ket) -> Self {
        KetRepr { num_qubits: k.num_qubits, amplitudes: k.amplitudes }
    }
}

fn check_qubit_count(n: usize) -> Result<()> {
    match n {
        0 => Err(Error::NoQubits),
        n if n > MAX_QUBITS => Err(Error::TooManyQubits(n)),
        _ => Ok(()),
    }
}

impl Ket {
    /// Wraps an amplitude vector, checking its length and normalization.
    pub fn new(num_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(num_qubits)?;
        if amplitudes.len() != 1 << num_qubits {
            return Err(Error::DimensionMismatch { expected: 1 << num_qubits, found: amplitudes.len() });
        }
        let norm_sqr: f64 = amplitudes.iter().map(Complex64::norm_sqr).sum();
        if (norm_sqr - 1.0).abs() > STATE_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self { num_qubits, amplitudes })
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    pub fn normalized(num_qubits: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Self::new(num_qubits, amplitudes)
    }

    /// Computational basis state `|index⟩` on `num_qubits` qubits.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_qubit_count(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::DimensionMismatch { expected: dim, found: index });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amplitudes })
    }

    /// `|b0 b1 …⟩` with `bits[0]` as qubit 0. Any nonzero entry counts as 1.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        check_qubit_count(bits.len())?;
        let index = bits.iter().fold(0usize, |acc, &b| (acc << 1) | usize::from(b != 0));
        Self::basis(bits.len(), index)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.num_qubits {
            return Err(Error::QubitOutOfRange { index: q, num_qubits: self.num_qubits });
        }
        Ok(())
    }

    fn check_same_size(&self, other: &Ket) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch { expected: self.num_qubits, found: other.num_qubits });
        }
        Ok(())
    }

    /// `self ⊗ other`; `self` occupies the leading (more significant) qubits.
    pub fn tensor(&self, other: &Ket) -> Result<Ket> {
        let n = self.num_qubits + other.num_qubits;
        check_qubit_count(n)?;
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ok(Ket { num_qubits: n, amplitudes })
    }

    /// Applies `gate` to qubit `q` in place.
    pub fn apply_single_qubit_mut(&mut self, q: usize, gate: &OneQubitGate) -> Result<()> {
        self.check_qubit(q)?;
        let mask = 1usize << (self.num_qubits - 1 - q);
        let [[g00, g01], [g10, g11]] = *gate.entries();
        for i0 in 0..self.amplitudes.len() {
            if i0 & mask != 0 {
                continue;
            }
            let i1 = i0 | mask;
            let (a0, a1) = (self.amplitudes[i0], self.amplitudes[i1]);
            self.amplitudes[i0] = g00 * a0 + g01 * a1;
            self.amplitudes[i1] = g10 * a0 + g11 * a1;
        }
        Ok(())
    }

    /// `(I ⊗ … ⊗ gate ⊗ … ⊗ I)|self⟩` with `gate` on qubit `q`.
    pub fn apply_single_qubit(&self, q: usize, gate: &OneQubitGate) -> Result<Ket> {
        let mut out = self.clone();
        out.apply_single_qubit_mut(q, gate)?;
        Ok(out)
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Ket) -> Result<Complex64> {
        self.check_same_size(other)?;
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    /// True iff `|⟨self|other⟩| ≥ 1 - tol`.
    pub fn equal_up_to_global_phase(&self, other: &Ket, tol: f64) -> Result<bool> {
        Ok(self.inner(other)?.norm() >= 1.0 - tol)
    }

    /// Max entrywise `|self_i - e^{iφ} other_i|` after choosing the phase `e^{iφ}`
    /// that aligns `other` with `self`.
    pub fn phase_aligned_deviation(&self, other: &Ket) -> Result<f64> {
        let overlap = other.inner(self)?;
        let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { Complex64::new(1.0, 0.0) };
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - phase * b).norm())
            .fold(0.0, f64::max))
    }

    /// Max entrywise `|self_i - other_i|`.
    pub fn max_abs_diff(&self, other: &Ket) -> Result<f64> {
        self.check_same_size(other)?;
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// Reorders qubits: old qubit `q` moves to position `perm[q]`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Ket> {
        let n = self.num_qubits;
        if perm.len() != n {
            return Err(Error::InvalidPermutation(format!("length {} for {n} qubits", perm.len())));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidPermutation(format!("{perm:?} is not a bijection on 0..{n}")));
            }
            seen[p] = true;
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); self.amplitudes.len()];
        for (i, &amp) in self.amplitudes.iter().enumerate() {
            let mut j = 0usize;
            for (q, &p) in perm.iter().enumerate() {
                if i >> (n - 1 - q) & 1 == 1 {
                    j |= 1 << (n - 1 - p);
                }
            }
            amplitudes[j] = amp;
        }
        Ok(Ket { num_qubits: n, amplitudes })
    }

    /// Reduced density matrix on `keep`, with kept qubits in ascending order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.num_qubits;
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if kept.len() != keep.len() {
            return Err(Error::InvalidKeepSet(format!("duplicate qubits in {keep:?}")));
        }
        if kept.is_empty() || kept.len() >= n {
            return Err(Error::InvalidKeepSet(format!(
                "keep set must be a nonempty proper subset of the {n} qubits, got {keep:?}"
            )));
        }
        if let Some(&q) = kept.iter().find(|&&q| q >= n) {
            return Err(Error::QubitOutOfRange { index: q, num_qubits: n });
        }
        let traced: Vec<usize> = (0..n).filter(|q| !kept.contains(q)).collect();

        let extract = |i: usize, qubits: &[usize]| {
            qubits.iter().fold(0usize, |acc, &q| (acc << 1) | (i >> (n - 1 - q) & 1))
        };
        let kdim = 1usize << kept.len();
        let tdim = 1usize << traced.len();
        // rows[t][r] = ψ(r on kept, t on traced)
        let mut rows = vec![Complex64::new(0.0, 0.0); tdim * kdim];
        for (i, &amp) in self.amplitudes.iter().enumerate() {
            rows[extract(i, &traced) * kdim + extract(i, &kept)] = amp;
        }
        let mut rho = vec![Complex64::new(0.0, 0.0); kdim * kdim];
        for row in rows.chunks(kdim) {
            for r in 0..kdim {
                if row[r] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..kdim {
                    rho[r * kdim + c] += row[r] * row[c].conj();
                }
            }
        }
        Ok(DensityMatrix::from_parts(kdim, rho))
    }
}
