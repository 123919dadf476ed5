//! Cyclic Jacobi eigenvalue solver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a[p][q]` with a
//! diagonal unitary, then applies the real symmetric Jacobi rotation that
//! annihilates it. Sweeps run over all pairs `p < q` in row order until the
//! off-diagonal Frobenius norm drops below [`OFF_DIAGONAL_TOL`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::statevec::STATE_TOL;

pub const OFF_DIAGONAL_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Max entrywise deviation `|a_ij - conj(a_ji)|` of a row-major square matrix.
pub fn hermitian_deviation(dim: usize, entries: &[Complex64]) -> f64 {
    let mut dev: f64 = 0.0;
    for r in 0..dim {
        for c in r..dim {
            dev = dev.max((entries[r * dim + c] - entries[c * dim + r].conj()).norm());
        }
    }
    dev
}

fn off_diagonal_norm(dim: usize, a: &[Complex64]) -> f64 {
    let mut sum = 0.0;
    for r in 0..dim {
        for c in 0..dim {
            if r != c {
                sum += a[r * dim + c].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Eigenvalues of a Hermitian `dim x dim` row-major matrix, sorted descending.
pub fn hermitian_eigenvalues(dim: usize, entries: &[Complex64]) -> Result<Vec<f64>> {
    if dim == 0 || entries.len() != dim * dim {
        return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
    }
    let dev = hermitian_deviation(dim, entries);
    if dev > STATE_TOL {
        return Err(Error::NotHermitian(dev));
    }

    // Work on the exactly Hermitian part.
    let mut a = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        a[r * dim + r] = Complex64::new(entries[r * dim + r].re, 0.0);
        for c in r + 1..dim {
            let v = (entries[r * dim + c] + entries[c * dim + r].conj()) * 0.5;
            a[r * dim + c] = v;
            a[c * dim + r] = v.conj();
        }
    }

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(dim, &a) < OFF_DIAGONAL_TOL {
            let mut eig: Vec<f64> = (0..dim).map(|k| a[k * dim + k].re).collect();
            eig.sort_by(|x, y| y.total_cmp(x));
            return Ok(eig);
        }
        for p in 0..dim {
            for q in p + 1..dim {
                rotate(dim, &mut a, p, q);
            }
        }
    }
    Err(Error::NoConvergence(MAX_SWEEPS))
}

fn rotate(dim: usize, a: &mut [Complex64], p: usize, q: usize) {
    let apq = a[p * dim + q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }

    // Diagonal unitary D = diag(.., 1 at p, e^{-iθ} at q, ..); D† A D makes a_pq = r.
    let phase = apq / r;
    for i in 0..dim {
        a[i * dim + q] *= phase.conj();
    }
    for j in 0..dim {
        a[q * dim + j] *= phase;
    }

    let app = a[p * dim + p].re;
    let aqq = a[q * dim + q].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for i in 0..dim {
        let aip = a[i * dim + p];
        let aiq = a[i * dim + q];
        a[i * dim + p] = aip * c - aiq * s;
        a[i * dim + q] = aip * s + aiq * c;
    }
    for j in 0..dim {
        let apj = a[p * dim + j];
        let aqj = a[q * dim + j];
        a[p * dim + j] = apj * c - aqj * s;
        a[q * dim + j] = apj * s + aqj * c;
    }
    a[p * dim + q] = Complex64::new(0.0, 0.0);
    a[q * dim + p] = Complex64::new(0.0, 0.0);
    a[p * dim + p].im = 0.0;
    a[q * dim + q].im = 0.0;
}
