use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::statevec::STATE_TOL;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A unitary 2x2 operator acting on a single qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneQubitGate {
    entries: [[Complex64; 2]; 2],
}

impl OneQubitGate {
    /// Builds a gate from row-major entries, rejecting non-unitary matrices.
    pub fn new(entries: [[Complex64; 2]; 2]) -> Result<Self> {
        let gate = Self { entries };
        let dev = gate.unitarity_deviation();
        if dev > STATE_TOL {
            return Err(Error::NotUnitary(dev));
        }
        Ok(gate)
    }

    pub const fn identity() -> Self {
        Self { entries: [[ONE, ZERO], [ZERO, ONE]] }
    }

    /// σ^x
    pub const fn pauli_x() -> Self {
        Self { entries: [[ZERO, ONE], [ONE, ZERO]] }
    }

    /// σ^y
    pub fn pauli_y() -> Self {
        Self { entries: [[ZERO, -I], [I, ZERO]] }
    }

    /// σ^z
    pub fn pauli_z() -> Self {
        Self { entries: [[ONE, ZERO], [ZERO, -ONE]] }
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.entries
    }

    /// Max entrywise deviation of U†U from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let m = &self.entries;
        let mut dev: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                let v = m[0][r].conj() * m[0][c] + m[1][r].conj() * m[1][c];
                let target = if r == c { ONE } else { ZERO };
                dev = dev.max((v - target).norm());
            }
        }
        dev
    }

    /// Multiplies every entry by a unit-modulus phase.
    pub fn with_phase(mut self, phase: Complex64) -> Result<Self> {
        for row in self.entries.iter_mut() {
            for v in row.iter_mut() {
                *v *= phase;
            }
        }
        Self::new(self.entries)
    }
}

/// Operator product `self · rhs` (rhs acts first).
impl Mul for OneQubitGate {
    type Output = OneQubitGate;

    fn mul(self, rhs: Self) -> Self {
        let a = &self.entries;
        let b = &rhs.entries;
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        OneQubitGate { entries: out }
    }
}
