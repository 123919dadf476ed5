use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevec::eigen::{hermitian_deviation, hermitian_eigenvalues};
use crate::statevec::{Ket, STATE_TOL};

/// A Hermitian, positive semidefinite, unit-trace matrix over `log2(dim)` qubits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DensityRepr", into = "DensityRepr")]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct DensityRepr {
    dim: usize,
    entries: Vec<Vec<Complex64>>,
}

impl TryFrom<DensityRepr> for DensityMatrix {
    type Error = Error;

    fn try_from(repr: DensityRepr) -> Result<Self> {
        if repr.entries.len() != repr.dim || repr.entries.iter().any(|row| row.len() != repr.dim) {
            return Err(Error::InvalidDensityMatrix(format!(
                "entries are not a {0}x{0} matrix",
                repr.dim
            )));
        }
        DensityMatrix::new(repr.dim, repr.entries.into_iter().flatten().collect())
    }
}

impl From<DensityMatrix> for DensityRepr {
    fn from(m: DensityMatrix) -> Self {
        let dim = m.dim;
        DensityRepr { dim, entries: m.entries.chunks(dim).map(<[_]>::to_vec).collect() }
    }
}

impl DensityMatrix {
    /// Validates and wraps a row-major `dim x dim` matrix.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::InvalidDimension(format!("{dim} is not a power of two")));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        let dev = hermitian_deviation(dim, &entries);
        if dev > STATE_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let trace: Complex64 = (0..dim).map(|k| entries[k * dim + k]).sum();
        if (trace - 1.0).norm() > STATE_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace is {trace}, expected 1")));
        }
        let eig = hermitian_eigenvalues(dim, &entries)?;
        if let Some(&min) = eig.last() {
            if min < -STATE_TOL {
                return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {min:e}")));
            }
        }
        Ok(Self { dim, entries })
    }

    /// `|k⟩⟨k|`
    pub fn from_pure(k: &Ket) -> Self {
        let amps = k.amplitudes();
        let dim = amps.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in amps {
            entries.extend(amps.iter().map(|c| r * c.conj()));
        }
        Self { dim, entries }
    }

    /// `I / dim`
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for k in 0..dim {
            entries[k * dim + k] = Complex64::new(1.0 / dim as f64, 0.0);
        }
        Self::new(dim, entries)
    }

    /// Matrix built from reduced-state accumulation; already known to be valid.
    pub(crate) fn from_parts(dim: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|k| self.get(k, k)).sum()
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(self.dim, &self.entries)
    }

    /// Max entrywise distance to another matrix of the same dimension.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Traces out the leading factor of a `first_dim x (dim / first_dim)` bipartition,
    /// returning the state of the trailing factor.
    pub fn trace_out_leading(&self, first_dim: usize) -> Result<DensityMatrix> {
        if first_dim == 0 || !self.dim.is_multiple_of(first_dim) {
            return Err(Error::InvalidDimension(format!(
                "{first_dim} does not divide the matrix dimension {}",
                self.dim
            )));
        }
        let rest = self.dim / first_dim;
        let mut out = vec![Complex64::new(0.0, 0.0); rest * rest];
        for a in 0..first_dim {
            for r in 0..rest {
                for c in 0..rest {
                    out[r * rest + c] += self.get(a * rest + r, a * rest + c);
                }
            }
        }
        DensityMatrix::new(rest, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn rejects_bad_trace_and_negative_eigenvalues() {
        assert!(DensityMatrix::new(2, vec![c(1.0), c(0.0), c(0.0), c(1.0)]).is_err());
        assert!(DensityMatrix::new(2, vec![c(1.5), c(0.0), c(0.0), c(-0.5)]).is_err());
        assert!(DensityMatrix::new(3, vec![c(1.0); 9]).is_err());
    }

    #[test]
    fn json_layout_is_nested_rows() {
        let m = DensityMatrix::maximally_mixed(2).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"dim":2,"entries":[[[0.5,0.0],[0.0,0.0]],[[0.0,0.0],[0.5,0.0]]]}"#);
        let back: DensityMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<DensityMatrix>(r#"{"dim":2,"entries":[[[1,0]]]}"#).is_err());
    }

    #[test]
    fn trace_out_leading_of_product() {
        // |1⟩⟨1| ⊗ I/2 -> I/2
        let mut e = vec![c(0.0); 16];
        e[2 * 4 + 2] = c(0.5);
        e[3 * 4 + 3] = c(0.5);
        let m = DensityMatrix::new(4, e).unwrap();
        let red = m.trace_out_leading(2).unwrap();
        assert!(red.max_abs_diff(&DensityMatrix::maximally_mixed(2).unwrap()).unwrap() < 1e-15);
        assert!(m.trace_out_leading(3).is_err());
    }
}
