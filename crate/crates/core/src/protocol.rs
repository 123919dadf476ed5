//! Encoding, generalized Bell measurement, decoding and session transcripts.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bellbasis::{self, check_message, check_pairs, message_of_g_index, GIndex, MAX_PAIRS};
use crate::error::{Error, Result};
use crate::statevec::Ket;

/// Largest N for exhaustive round trips and sessions.
pub const MAX_PROTOCOL_PAIRS: usize = 6;
/// Minimum best-overlap probability for [`decode`] to accept a state.
pub const DECODE_THRESHOLD: f64 = 1.0 - 1e-8;
/// Allowed drift of the total outcome probability from 1.
pub const PROBABILITY_TOL: f64 = 1e-9;

/// A 2N-bit classical message, also the index of `|s_j⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Message {
    value: u64,
    n: usize,
}

impl Message {
    pub fn new(value: u64, n: usize) -> Result<Self> {
        check_pairs(n, MAX_PAIRS)?;
        check_message(value, n)?;
        Ok(Self { value, n })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    /// Number of Bell pairs N; the message is 2N bits wide.
    pub fn pairs(self) -> usize {
        self.n
    }

    pub fn width(self) -> usize {
        2 * self.n
    }
}

/// Binary, most significant bit first, zero padded to 2N digits.
impl fmt::Display for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.value, width = self.width())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementOutcome {
    pub index: Message,
    pub probability: f64,
}

/// Alice's side: applies `pauli_string(m)` to a fresh `|s0⟩`.
pub fn encode(m: Message) -> Result<Ket> {
    bellbasis::s_state(m.value, m.n)
}

fn check_register(k: &Ket, n: usize) -> Result<()> {
    check_pairs(n, MAX_PAIRS)?;
    if k.num_qubits() != 2 * n {
        return Err(Error::DimensionMismatch { expected: 2 * n, found: k.num_qubits() });
    }
    Ok(())
}

/// In-place Walsh-Hadamard transform: `f[z] <- Σ_c (-1)^{popcount(z & c)} f[c]`.
fn walsh_hadamard(f: &mut [Complex64]) {
    let mut h = 1;
    while h < f.len() {
        for block in (0..f.len()).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (f[i], f[i + h]);
                f[i] = a + b;
                f[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Message index of the Pauli string with the given Z and X masks over
/// Alice's register (qubit `q` at bit `n - 1 - q`).
fn message_from_masks(z_mask: usize, x_mask: usize, n: usize) -> u64 {
    (0..n).fold(0u64, |acc, q| {
        let bit = n - 1 - q;
        acc | ((z_mask >> bit & 1) as u64) << (2 * q) | ((x_mask >> bit & 1) as u64) << (2 * q + 1)
    })
}

/// All overlaps `⟨s_j|k⟩`, indexed by `j`.
///
/// Uses `|s_j⟩ = 2^{-N/2} Σ_c (-1)^{z·c} |c⟩_A |c ⊕ x⟩_B`, where `x` and `z`
/// are the X and Z masks of `pauli_string(j)`, so that for each `x` the
/// overlaps over all `z` are one Walsh-Hadamard transform.
pub fn basis_overlaps(k: &Ket, n: usize) -> Result<Vec<Complex64>> {
    check_register(k, n)?;
    let side = 1usize << n;
    let scale = (0.5f64).powf(n as f64 / 2.0);
    let amps = k.amplitudes();
    let mut out = vec![Complex64::new(0.0, 0.0); side * side];
    let mut f = vec![Complex64::new(0.0, 0.0); side];
    for x in 0..side {
        for (c, v) in f.iter_mut().enumerate() {
            *v = amps[(c << n) | (c ^ x)] * scale;
        }
        walsh_hadamard(&mut f);
        for (z, &v) in f.iter().enumerate() {
            out[message_from_masks(z, x, n) as usize] = v;
        }
    }
    Ok(out)
}

/// Outcome distribution `|⟨s_j|k⟩|²` of a generalized Bell measurement.
pub fn outcome_probabilities(k: &Ket, n: usize) -> Result<Vec<f64>> {
    let probs: Vec<f64> = basis_overlaps(k, n)?.iter().map(Complex64::norm_sqr).collect();
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > PROBABILITY_TOL {
        return Err(Error::NotNormalized(total));
    }
    Ok(probs)
}

/// Samples a generalized Bell measurement outcome with the given generator,
/// by inverse CDF over outcomes in ascending index order.
pub fn measure_with_rng<R: Rng + ?Sized>(k: &Ket, n: usize, rng: &mut R) -> Result<MeasurementOutcome> {
    let probs = outcome_probabilities(k, n)?;
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut chosen = None;
    for (j, &p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            chosen = Some(j);
            break;
        }
    }
    // u landed in the rounding gap above the accumulated total
    let j = chosen.unwrap_or_else(|| probs.iter().rposition(|&p| p > 0.0).unwrap_or(0));
    Ok(MeasurementOutcome { index: Message { value: j as u64, n }, probability: probs[j] })
}

/// Bob's measurement in the `{|s_j⟩}` basis, reproducible for a given seed.
pub fn measure_generalized_bell(k: &Ket, n: usize, seed: u64) -> Result<MeasurementOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    measure_with_rng(k, n, &mut rng)
}

/// Recovers `j` from a state equal to `|s_j⟩` up to global phase.
pub fn decode(k: &Ket, n: usize) -> Result<Message> {
    let overlaps = basis_overlaps(k, n)?;
    let (j, best) = overlaps
        .iter()
        .map(Complex64::norm_sqr)
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least four outcomes");
    if best < DECODE_THRESHOLD {
        return Err(Error::NotABasisState(best));
    }
    Ok(Message { value: j as u64, n })
}

/// The agreed 4-bit labels of `g1..g16`, in index order.
pub const TABLE2: [&str; 16] = [
    "0000", "0001", "0010", "0100", "1000", "0011", "0110", "1100", "0101", "1001", "1010", "0111", "1011",
    "1101", "1110", "1111",
];

fn parse_bits(bits: &str, width: usize) -> Result<u64> {
    if bits.len() != width || !bits.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::MalformedBits(bits.to_string()));
    }
    u64::from_str_radix(bits, 2).map_err(|_| Error::MalformedBits(bits.to_string()))
}

/// 4-bit label to the generalized Bell state carrying it.
pub fn table2_encode(bits: &str) -> Result<GIndex> {
    parse_bits(bits, 4)?;
    let pos = TABLE2.iter().position(|&b| b == bits).expect("TABLE2 covers all 4-bit strings");
    GIndex::new(pos as u32 + 1)
}

pub fn table2_decode(i: GIndex) -> &'static str {
    TABLE2[i.get() as usize - 1]
}

/// How a bit string is mapped onto a message index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Convention {
    /// The bit string is the binary form of `j`.
    #[default]
    Canonical,
    /// The 4-bit table of labels for `g1..g16`; N = 2 only.
    Table2,
}

impl Convention {
    fn check(self, n: usize) -> Result<()> {
        if self == Convention::Table2 && n != 2 {
            return Err(Error::PairsOutOfRange { n, min: 2, max: 2 });
        }
        Ok(())
    }

    pub fn bits_to_message(self, bits: &str, n: usize) -> Result<Message> {
        self.check(n)?;
        match self {
            Convention::Canonical => Message::new(parse_bits(bits, 2 * n)?, n),
            Convention::Table2 => Message::new(message_of_g_index(table2_encode(bits)?), 2),
        }
    }

    pub fn message_to_bits(self, m: Message) -> Result<String> {
        self.check(m.n)?;
        match self {
            Convention::Canonical => Ok(m.to_string()),
            Convention::Table2 => Ok(table2_decode(bellbasis::g_index_of_message(m.value)?).to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundtripReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub messages: u64,
    pub qubits_per_message: usize,
    pub bits_per_message: usize,
    pub bits_per_qubit: f64,
    pub failures: Vec<u64>,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Encodes and decodes every 2N-bit message.
pub fn roundtrip_all(n: usize) -> Result<RoundtripReport> {
    check_pairs(n, MAX_PROTOCOL_PAIRS)?;
    let count = 1u64 << (2 * n);
    let mut failures = Vec::new();
    for j in 0..count {
        let m = Message::new(j, n)?;
        match decode(&encode(m)?, n) {
            Ok(d) if d == m => {}
            _ => failures.push(j),
        }
    }
    Ok(RoundtripReport {
        n,
        messages: count,
        qubits_per_message: n,
        bits_per_message: 2 * n,
        bits_per_qubit: (2 * n) as f64 / n as f64,
        failures,
    })
}

/// One Alice-to-Bob exchange.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptStep {
    pub message: u64,
    /// Alice's operation in `Z<k>`/`X<k>` token form; empty for the identity.
    pub pauli: String,
    /// Qubits whose custody moved from Alice to Bob.
    pub transmitted: usize,
    pub outcome: u64,
    pub success: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    #[serde(rename = "N")]
    pub n: usize,
    pub seed: u64,
    pub steps: Vec<TranscriptStep>,
}

impl Transcript {
    pub fn all_successful(&self) -> bool {
        self.steps.iter().all(|s| s.success)
    }
}

/// Runs the protocol once per message over a noiseless channel. Each message
/// consumes a freshly prepared `|s0⟩`; one seeded generator drives every
/// measurement in the session.
pub fn session(n: usize, messages: &[u64], seed: u64) -> Result<Transcript> {
    check_pairs(n, MAX_PROTOCOL_PAIRS)?;
    let messages = messages.iter().map(|&j| Message::new(j, n)).collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps = Vec::with_capacity(messages.len());
    for m in messages {
        let mut shared = bellbasis::s0(n)?;
        let op = bellbasis::pauli_string(m.value, n)?;
        op.apply_mut(&mut shared)?;
        // Alice's qubits 0..N now sit with Bob, who measures all 2N.
        let outcome = measure_with_rng(&shared, n, &mut rng)?;
        steps.push(TranscriptStep {
            message: m.value,
            pauli: op.to_string(),
            transmitted: n,
            outcome: outcome.index.value,
            success: outcome.index == m,
        });
    }
    Ok(Transcript { n, seed, steps })
}

/// `count` uniformly random messages, reproducible for a given seed. Uses a
/// separate ChaCha stream from [`session`] so both can share one seed.
pub fn random_messages(n: usize, count: usize, seed: u64) -> Result<Vec<u64>> {
    check_pairs(n, MAX_PROTOCOL_PAIRS)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    Ok((0..count).map(|_| rng.random_range(0..1u64 << (2 * n))).collect())
}
