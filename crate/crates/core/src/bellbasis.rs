//! Bell states, the sixteen four-qubit generalized Bell states, the `|s_j⟩`
//! family for arbitrary N, the four-qubit GHZ family and Bell-pair
//! factorizations.
//!
//! Alice holds qubits `0..N` and Bob holds qubits `N..2N`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevec::{Ket, OneQubitGate, STATE_TOL};

/// Largest N for which `|s0⟩` fits in the register limit.
pub const MAX_PAIRS: usize = 13;
/// Largest N accepted by exhaustive factorization checks.
pub const MAX_FACTORIZE_PAIRS: usize = 6;

pub(crate) fn check_pairs(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::PairsOutOfRange { n, min: 1, max });
    }
    Ok(())
}

fn ket_from_terms(num_qubits: usize, terms: &[(usize, f64)]) -> Ket {
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
    for &(index, coeff) in terms {
        amps[index] = Complex64::new(coeff, 0.0);
    }
    Ket::new(num_qubits, amps).expect("fixed coefficient tables are normalized")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellLabel {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [Self::PhiPlus, Self::PhiMinus, Self::PsiPlus, Self::PsiMinus];

    pub fn symbol(self) -> &'static str {
        match self {
            Self::PhiPlus => "Φ+",
            Self::PhiMinus => "Φ-",
            Self::PsiPlus => "Ψ+",
            Self::PsiMinus => "Ψ-",
        }
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `|Φ±⟩ = (|00⟩ ± |11⟩)/√2`, `|Ψ±⟩ = (|01⟩ ± |10⟩)/√2`.
pub fn bell(label: BellLabel) -> Ket {
    let h = FRAC_1_SQRT_2;
    let terms = match label {
        BellLabel::PhiPlus => [(0b00, h), (0b11, h)],
        BellLabel::PhiMinus => [(0b00, h), (0b11, -h)],
        BellLabel::PsiPlus => [(0b01, h), (0b10, h)],
        BellLabel::PsiMinus => [(0b01, h), (0b10, -h)],
    };
    ket_from_terms(2, &terms)
}

/// Index `1..=16` of a four-qubit generalized Bell state `|g_i⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct GIndex(u8);

impl GIndex {
    pub fn new(i: u32) -> Result<Self> {
        if (1..=16).contains(&i) {
            Ok(Self(i as u8))
        } else {
            Err(Error::GIndexOutOfRange(i))
        }
    }

    pub fn get(self) -> u32 {
        u32::from(self.0)
    }

    /// Group 1..=4: states sharing the same four basis kets.
    pub fn group(self) -> u32 {
        (self.get() - 1) / 4 + 1
    }

    pub fn all() -> impl Iterator<Item = GIndex> {
        (1..=16).map(GIndex)
    }
}

impl TryFrom<u32> for GIndex {
    type Error = Error;

    fn try_from(i: u32) -> Result<Self> {
        GIndex::new(i)
    }
}

impl From<GIndex> for u32 {
    fn from(g: GIndex) -> u32 {
        g.get()
    }
}

impl fmt::Display for GIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

/// Basis kets of each group, in the order they are written.
const G_GROUP_KETS: [[usize; 4]; 4] = [
    [0b0000, 0b0101, 0b1010, 0b1111],
    [0b0001, 0b0100, 0b1011, 0b1110],
    [0b0010, 0b0111, 0b1000, 0b1101],
    [0b0011, 0b0110, 0b1001, 0b1100],
];

/// Sign patterns of the four states within a group.
const G_SIGNS: [[f64; 4]; 4] = [
    [1.0, 1.0, 1.0, 1.0],
    [1.0, 1.0, -1.0, -1.0],
    [1.0, -1.0, 1.0, -1.0],
    [1.0, -1.0, -1.0, 1.0],
];

/// The four-qubit generalized Bell state `|g_i⟩`, all coefficients ±1/2.
pub fn g_state(i: GIndex) -> Ket {
    let k = usize::from(i.0 - 1);
    let kets = G_GROUP_KETS[k / 4];
    let signs = G_SIGNS[k % 4];
    let terms: Vec<(usize, f64)> = kets.iter().zip(signs).map(|(&idx, s)| (idx, 0.5 * s)).collect();
    ket_from_terms(4, &terms)
}

/// `|s0⟩ = 2^{-N/2} Σ_x |x⟩_A |x⟩_B` over 2N qubits.
pub fn s0(n: usize) -> Result<Ket> {
    check_pairs(n, MAX_PAIRS)?;
    let amp = Complex64::new((0.5f64).powf(n as f64 / 2.0), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << (2 * n)];
    for x in 0..1usize << n {
        amps[(x << n) | x] = amp;
    }
    Ket::new(2 * n, amps)
}

/// Exponents of `Z^z X^x` acting on one of Alice's qubits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PauliFactor {
    pub z: bool,
    pub x: bool,
}

impl PauliFactor {
    /// `Z^z · X^x` (X acts first).
    pub fn gate(self) -> OneQubitGate {
        let mut g = OneQubitGate::identity();
        if self.x {
            g = OneQubitGate::pauli_x() * g;
        }
        if self.z {
            g = OneQubitGate::pauli_z() * g;
        }
        g
    }
}

/// A product of per-qubit `Z^z X^x` factors on Alice's N qubits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    factors: Vec<PauliFactor>,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self { factors: vec![PauliFactor::default(); n] }
    }

    pub fn from_factors(factors: Vec<PauliFactor>) -> Self {
        Self { factors }
    }

    pub fn factors(&self) -> &[PauliFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.iter().all(|f| !f.x && !f.z)
    }

    /// Message index `j` that selects this string: the factor on qubit `k`
    /// (0-based) holds bit `2k` as its Z exponent and bit `2k+1` as its X exponent.
    pub fn message_index(&self) -> u64 {
        self.factors.iter().enumerate().fold(0u64, |acc, (k, f)| {
            acc | u64::from(f.z) << (2 * k) | u64::from(f.x) << (2 * k + 1)
        })
    }

    /// Applies the string to qubits `0..len` of `k` in place.
    pub fn apply_mut(&self, k: &mut Ket) -> Result<()> {
        for (q, f) in self.factors.iter().enumerate() {
            if f.x {
                k.apply_single_qubit_mut(q, &OneQubitGate::pauli_x())?;
            }
            if f.z {
                k.apply_single_qubit_mut(q, &OneQubitGate::pauli_z())?;
            }
        }
        Ok(())
    }

    pub fn apply(&self, k: &Ket) -> Result<Ket> {
        let mut out = k.clone();
        self.apply_mut(&mut out)?;
        Ok(out)
    }
}

/// Whitespace-separated `Z<k>` / `X<k>` tokens with 1-based qubit numbers,
/// Z before X on each qubit. The identity renders as an empty string.
impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tokens = Vec::new();
        for (q, factor) in self.factors.iter().enumerate() {
            if factor.z {
                tokens.push(format!("Z{}", q + 1));
            }
            if factor.x {
                tokens.push(format!("X{}", q + 1));
            }
        }
        f.write_str(&tokens.join(" "))
    }
}

impl PauliString {
    /// Parses the token form produced by `Display` for an `n`-qubit string.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let bad = || Error::MalformedPauli(s.to_string());
        let mut factors = vec![PauliFactor::default(); n];
        let mut last: Option<(usize, char)> = None;
        for tok in s.split_whitespace() {
            let mut chars = tok.chars();
            let op = chars.next().ok_or_else(bad)?;
            let q: usize = chars.as_str().parse().map_err(|_| bad())?;
            if q == 0 || q > n {
                return Err(bad());
            }
            // canonical order: ascending qubit, Z then X, no repeats
            if let Some((lq, lop)) = last {
                if q < lq || (q == lq && !(lop == 'Z' && op == 'X')) {
                    return Err(bad());
                }
            }
            match op {
                'Z' => factors[q - 1].z = true,
                'X' => factors[q - 1].x = true,
                _ => return Err(bad()),
            }
            last = Some((q, op));
        }
        Ok(Self { factors })
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses with the qubit count taken from the highest qubit mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let n = s
            .split_whitespace()
            .filter_map(|t| t.get(1..).and_then(|q| q.parse::<usize>().ok()))
            .max()
            .unwrap_or(0);
        Self::parse(s, n)
    }
}

pub(crate) fn check_message(j: u64, n: usize) -> Result<()> {
    if 2 * n >= 64 || j >> (2 * n) != 0 {
        return Err(Error::MessageOutOfRange { value: j, n });
    }
    Ok(())
}

/// The Alice-side operation selecting `|s_j⟩`.
///
/// Counting bits of `j` from the right starting at 1, qubit `k` (1-based)
/// gets `Z^{j_{2k-1}} X^{j_{2k}}`.
pub fn pauli_string(j: u64, n: usize) -> Result<PauliString> {
    check_pairs(n, MAX_PAIRS)?;
    check_message(j, n)?;
    let factors = (0..n)
        .map(|k| PauliFactor { z: j >> (2 * k) & 1 == 1, x: j >> (2 * k + 1) & 1 == 1 })
        .collect();
    Ok(PauliString { factors })
}

/// `|s_j⟩ = P_j |s0⟩` with `P_j = pauli_string(j, n)` on Alice's qubits.
pub fn s_state(j: u64, n: usize) -> Result<Ket> {
    let p = pauli_string(j, n)?;
    let mut k = s0(n)?;
    p.apply_mut(&mut k)?;
    Ok(k)
}

/// `g` index of `|s_j⟩` for N = 2, position `j`. Verified against
/// [`compute_s_to_g`] in tests.
pub const S_TO_G: [u8; 16] = [1, 2, 9, 10, 3, 4, 11, 12, 5, 6, 13, 14, 7, 8, 15, 16];

/// The `g_i` equal (up to global phase) to `|s_j⟩` at N = 2.
pub fn g_index_of_message(j: u64) -> Result<GIndex> {
    check_message(j, 2)?;
    Ok(GIndex(S_TO_G[j as usize]))
}

/// The N = 2 message `j` with `|s_j⟩ ≃ |g_i⟩`.
pub fn message_of_g_index(i: GIndex) -> u64 {
    S_TO_G.iter().position(|&g| g == i.0).expect("S_TO_G is a permutation of 1..=16") as u64
}

/// Rebuilds the `s_j ↔ g_i` correspondence by matching states up to phase.
pub fn compute_s_to_g() -> Result<[u8; 16]> {
    let mut table = [0u8; 16];
    for (j, slot) in table.iter_mut().enumerate() {
        let s = s_state(j as u64, 2)?;
        for i in GIndex::all() {
            if s.equal_up_to_global_phase(&g_state(i), STATE_TOL)? {
                *slot = i.0;
                break;
            }
        }
    }
    Ok(table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GhzLabel {
    GhzPlus,
    GhzMinus,
    GPlus,
    GMinus,
    HPlus,
    HMinus,
    ZPlus,
    ZMinus,
}

impl GhzLabel {
    pub const ALL: [GhzLabel; 8] = [
        Self::GhzPlus,
        Self::GhzMinus,
        Self::GPlus,
        Self::GMinus,
        Self::HPlus,
        Self::HMinus,
        Self::ZPlus,
        Self::ZMinus,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Self::GhzPlus => "GHZ+",
            Self::GhzMinus => "GHZ-",
            Self::GPlus => "G+",
            Self::GMinus => "G-",
            Self::HPlus => "H+",
            Self::HMinus => "H-",
            Self::ZPlus => "Z+",
            Self::ZMinus => "Z-",
        }
    }
}

/// The eight four-qubit states reachable from `|GHZ+⟩` by Alice's Paulis.
pub fn ghz_family(label: GhzLabel) -> Ket {
    let h = FRAC_1_SQRT_2;
    let (a, b, sign) = match label {
        GhzLabel::GhzPlus => (0b0000, 0b1111, 1.0),
        GhzLabel::GhzMinus => (0b0000, 0b1111, -1.0),
        GhzLabel::GPlus => (0b0100, 0b1011, 1.0),
        GhzLabel::GMinus => (0b0100, 0b1011, -1.0),
        GhzLabel::HPlus => (0b1000, 0b0111, 1.0),
        GhzLabel::HMinus => (0b1000, 0b0111, -1.0),
        GhzLabel::ZPlus => (0b1100, 0b0011, 1.0),
        GhzLabel::ZMinus => (0b1100, 0b0011, -1.0),
    };
    ket_from_terms(4, &[(a, h), (b, sign * h)])
}

/// `|g_i⟩` regrouped as `|bell(first)⟩_{A1B1} |bell(second)⟩_{A2B2}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Factorization {
    pub g_index: GIndex,
    pub first: BellLabel,
    pub second: BellLabel,
    pub max_deviation: f64,
}

/// Swaps qubits 1 and 2 so that `A1 A2 B1 B2` becomes `A1 B1 A2 B2`.
pub const SWAP_MIDDLE: [usize; 4] = [0, 2, 1, 3];

/// Finds the Bell pair whose product matches `|g_i⟩` after swapping the
/// middle qubits, by trying all sixteen candidates.
pub fn factorize(i: GIndex) -> Factorization {
    let target = g_state(i).permute_qubits(&SWAP_MIDDLE).expect("4-qubit permutation");
    let mut best: Option<Factorization> = None;
    for first in BellLabel::ALL {
        for second in BellLabel::ALL {
            let candidate = bell(first).tensor(&bell(second)).expect("4 qubits");
            let dev = target.phase_aligned_deviation(&candidate).expect("same size");
            if best.is_none_or(|b| dev < b.max_deviation) {
                best = Some(Factorization { g_index: i, first, second, max_deviation: dev });
            }
        }
    }
    best.expect("sixteen candidates")
}

/// Result of comparing interleaved `|s0⟩` with `|Φ+⟩^{⊗N}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct S0FactorizationReport {
    pub n: usize,
    pub pass: bool,
    pub max_deviation: f64,
}

/// Permutation taking `A1..AN B1..BN` to `A1 B1 A2 B2 …`.
pub fn interleave_permutation(n: usize) -> Vec<usize> {
    (0..2 * n).map(|q| if q < n { 2 * q } else { 2 * (q - n) + 1 }).collect()
}

pub fn factorize_s0(n: usize) -> Result<S0FactorizationReport> {
    check_pairs(n, MAX_FACTORIZE_PAIRS)?;
    let interleaved = s0(n)?.permute_qubits(&interleave_permutation(n))?;
    let phi = bell(BellLabel::PhiPlus);
    let mut product = phi.clone();
    for _ in 1..n {
        product = product.tensor(&phi)?;
    }
    let max_deviation = interleaved.max_abs_diff(&product)?;
    Ok(S0FactorizationReport { n, pass: max_deviation <= STATE_TOL, max_deviation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevec::DensityMatrix;

    fn g(i: u32) -> Ket {
        g_state(GIndex::new(i).unwrap())
    }

    #[test]
    fn bell_states_have_expected_signs() {
        let h = FRAC_1_SQRT_2;
        let phi = bell(BellLabel::PhiPlus);
        assert_eq!(phi.amplitudes()[0].re, h);
        assert_eq!(phi.amplitudes()[3].re, h);
        let psi = bell(BellLabel::PsiMinus);
        assert_eq!(psi.amplitudes()[1].re, h);
        assert_eq!(psi.amplitudes()[2].re, -h);
        for a in BellLabel::ALL {
            for b in BellLabel::ALL {
                let ip = bell(a).inner(&bell(b)).unwrap();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((ip - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn g_states_match_written_coefficients() {
        let g1 = g(1);
        for idx in [0b0000, 0b0101, 0b1010, 0b1111] {
            assert_eq!(g1.amplitudes()[idx].re, 0.5);
        }
        let g12 = g(12);
        assert_eq!(g12.amplitudes()[0b0010].re, 0.5);
        assert_eq!(g12.amplitudes()[0b0111].re, -0.5);
        assert_eq!(g12.amplitudes()[0b1000].re, -0.5);
        assert_eq!(g12.amplitudes()[0b1101].re, 0.5);
        assert_eq!(g12.amplitudes().iter().filter(|a| a.norm() > 0.0).count(), 4);
    }

    #[test]
    fn g_index_bounds() {
        assert!(GIndex::new(0).is_err());
        assert!(GIndex::new(17).is_err());
        assert_eq!(GIndex::new(12).unwrap().group(), 3);
        assert_eq!(GIndex::all().count(), 16);
    }

    #[test]
    fn s0_small_cases() {
        assert_eq!(s0(1).unwrap(), bell(BellLabel::PhiPlus));
        assert!(s0(2).unwrap().max_abs_diff(&g(1)).unwrap() < 1e-15);
        assert!(s0(0).is_err());
        assert!(s0(14).is_err());

        // brute-force enumeration of all 64 indices for N = 3
        let k = s0(3).unwrap();
        let amp = 2f64.powf(-1.5);
        for idx in 0..64usize {
            let (alice, bob) = (idx >> 3, idx & 0b111);
            let want = if alice == bob { amp } else { 0.0 };
            assert!((k.amplitudes()[idx].re - want).abs() < 1e-15, "index {idx}");
        }
    }

    #[test]
    fn pauli_string_bit_layout() {
        assert!(pauli_string(0, 3).unwrap().is_identity());
        let p = pauli_string(2, 2).unwrap();
        assert_eq!(p.factors(), &[PauliFactor { z: false, x: true }, PauliFactor::default()]);
        assert_eq!(p.to_string(), "X1");
        let p = pauli_string(3, 2).unwrap();
        assert_eq!(p.factors()[0], PauliFactor { z: true, x: true });
        assert_eq!(p.to_string(), "Z1 X1");
        assert_eq!(pauli_string(15, 2).unwrap().to_string(), "Z1 X1 Z2 X2");
        assert!(pauli_string(16, 2).is_err());
        for j in 0..64 {
            assert_eq!(pauli_string(j, 3).unwrap().message_index(), j);
        }
    }

    #[test]
    fn pauli_string_parses_its_display() {
        for j in 0..64 {
            let p = pauli_string(j, 3).unwrap();
            assert_eq!(PauliString::parse(&p.to_string(), 3).unwrap(), p);
        }
        assert_eq!("Z1 X2".parse::<PauliString>().unwrap().message_index(), 0b1001);
        for bad in ["X1 Z1", "Z0", "Y1", "Z3", "Z1 Z1", "X2 X1", "Z"] {
            assert!(PauliString::parse(bad, 2).is_err(), "{bad}");
        }
    }

    #[test]
    fn s_states_for_listed_indices() {
        assert!(s_state(0, 2).unwrap().max_abs_diff(&g(1)).unwrap() < 1e-15);
        assert!(s_state(1, 2).unwrap().max_abs_diff(&g(2)).unwrap() < 1e-15);
        assert!(s_state(2, 2).unwrap().max_abs_diff(&g(9)).unwrap() < 1e-15);
        assert!(s_state(3, 2).unwrap().equal_up_to_global_phase(&g(10), 1e-10).unwrap());
        assert!(s_state(16, 2).is_err());
    }

    #[test]
    fn s_to_g_table_matches_computation() {
        assert_eq!(compute_s_to_g().unwrap(), S_TO_G);
        for i in GIndex::all() {
            assert_eq!(g_index_of_message(message_of_g_index(i)).unwrap(), i);
        }
    }

    #[test]
    fn pauli_factor_gate_is_z_times_x() {
        let f = PauliFactor { z: true, x: true };
        assert_eq!(f.gate(), OneQubitGate::pauli_z() * OneQubitGate::pauli_x());
        assert_eq!(PauliFactor::default().gate(), OneQubitGate::identity());
    }

    #[test]
    fn ghz_family_is_orthonormal() {
        let ghz = ghz_family(GhzLabel::GhzPlus);
        assert_eq!(ghz.amplitudes()[0].re, FRAC_1_SQRT_2);
        assert_eq!(ghz.amplitudes()[15].re, FRAC_1_SQRT_2);
        let z = ghz_family(GhzLabel::ZMinus);
        assert_eq!(z.amplitudes()[0b1100].re, FRAC_1_SQRT_2);
        assert_eq!(z.amplitudes()[0b0011].re, -FRAC_1_SQRT_2);
        for a in GhzLabel::ALL {
            for b in GhzLabel::ALL {
                let ip = ghz_family(a).inner(&ghz_family(b)).unwrap();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((ip - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn ghz_orbit_stays_in_family_span() {
        let ghz = ghz_family(GhzLabel::GhzPlus);
        for j in 0..16 {
            let k = pauli_string(j, 2).unwrap().apply(&ghz).unwrap();
            let weight: f64 = GhzLabel::ALL.iter().map(|&l| ghz_family(l).inner(&k).unwrap().norm_sqr()).sum();
            assert!((weight - 1.0).abs() < 1e-10, "j = {j}");
        }
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(GIndex::new(1).unwrap());
        assert_eq!((f.first, f.second), (BellLabel::PhiPlus, BellLabel::PhiPlus));
        let f = factorize(GIndex::new(8).unwrap());
        assert_eq!((f.first, f.second), (BellLabel::PhiMinus, BellLabel::PsiMinus));
        let f = factorize(GIndex::new(14).unwrap());
        assert_eq!((f.first, f.second), (BellLabel::PsiMinus, BellLabel::PsiPlus));
        for i in GIndex::all() {
            assert!(factorize(i).max_deviation < 1e-10);
        }
    }

    #[test]
    fn swap_middle_of_g5() {
        let swapped = g(5).permute_qubits(&SWAP_MIDDLE).unwrap();
        let want = bell(BellLabel::PhiPlus).tensor(&bell(BellLabel::PsiPlus)).unwrap();
        assert!(swapped.max_abs_diff(&want).unwrap() < 1e-15);
    }

    #[test]
    fn factorize_s0_small() {
        let r = factorize_s0(1).unwrap();
        assert!(r.pass);
        assert_eq!(r.max_deviation, 0.0);
        for n in 2..=4 {
            assert!(factorize_s0(n).unwrap().pass);
        }
        assert!(factorize_s0(7).is_err());
        assert_eq!(interleave_permutation(3), vec![0, 2, 4, 1, 3, 5]);
    }

    #[test]
    fn basis_is_orthonormal_complete_and_locally_mixed() {
        for n in 1..=3usize {
            let dim = 1usize << (2 * n);
            let states: Vec<Ket> = (0..dim as u64).map(|j| s_state(j, n).unwrap()).collect();
            for (a, sa) in states.iter().enumerate() {
                for (b, sb) in states.iter().enumerate() {
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((sa.inner(sb).unwrap() - want).norm() < 1e-10);
                }
            }
            // Σ_j |s_j⟩⟨s_j| = I
            let mut sum = vec![Complex64::new(0.0, 0.0); dim * dim];
            for s in &states {
                let p = DensityMatrix::from_pure(s);
                for (acc, v) in sum.iter_mut().zip(p.entries()) {
                    *acc += v;
                }
            }
            for r in 0..dim {
                for c in 0..dim {
                    let want = if r == c { 1.0 } else { 0.0 };
                    assert!((sum[r * dim + c] - want).norm() < 1e-10);
                }
            }
            let mixed = DensityMatrix::maximally_mixed(1 << n).unwrap();
            let alice: Vec<usize> = (0..n).collect();
            for s in &states {
                let red = s.partial_trace(&alice).unwrap();
                assert!(red.max_abs_diff(&mixed).unwrap() < 1e-10);
            }
        }
    }
}
