//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 for usage
//! or input errors. Every table is regenerated from the library at run time.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

use crate::bellbasis::{self, bell, factorize, g_state, ghz_family, BellLabel, GIndex, GhzLabel, SWAP_MIDDLE};
use crate::capacity::{self, twelve_significant};
use crate::protocol::{self, Transcript};
use crate::statevec::{DensityMatrix, Ket, STATE_TOL};
use crate::Error;

pub const DEFAULT_SEED: u64 = 0x5DC0DE;
/// Largest N for which `basis` will print the whole basis.
pub const MAX_EMIT_PAIRS: usize = 4;
/// Largest state, in qubits, that `capacity` will build a density matrix for.
pub const MAX_CAPACITY_QUBITS: usize = 10;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "superdense", version, about = "Generalized superdense coding simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Number of shared Bell pairs (messages are 2N bits, N qubits are sent)
    #[arg(long = "n", global = true, default_value_t = 2)]
    pub n: usize,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Output format; each subcommand has its own default
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to this file instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the generalized Bell basis for N pairs
    Basis,
    /// Encode and decode every 2N-bit message
    Roundtrip,
    /// Dense-coding capacity of a shared state
    Capacity {
        /// g1, ghz4, s0:<N> or file:<path> (Ket or density matrix JSON)
        #[arg(long, default_value = "g1")]
        state: StateSelector,
        /// Dimension of Alice's subsystem
        #[arg(long = "d-a")]
        d_a: Option<usize>,
    },
    /// Bell-pair decomposition of g1..g16
    Factorize,
    /// Simulate an Alice-to-Bob session and emit its transcript
    Session {
        /// Comma-separated messages; `a..b` and `a..=b` ranges are accepted
        #[arg(long, value_delimiter = ',', conflicts_with = "random")]
        messages: Vec<MessageSpec>,
        /// Draw this many random messages from the seed instead
        #[arg(long)]
        random: Option<usize>,
    },
    /// Compare orbit sizes and capacities of g1 and the four-qubit GHZ state
    GhzCompare,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateSelector {
    G1,
    Ghz4,
    S0(usize),
    File(PathBuf),
}

impl FromStr for StateSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "g1" => Ok(Self::G1),
            "ghz4" => Ok(Self::Ghz4),
            _ => {
                if let Some(n) = s.strip_prefix("s0:") {
                    n.parse().map(Self::S0).map_err(|_| format!("bad N in {s:?}"))
                } else if let Some(path) = s.strip_prefix("file:") {
                    Ok(Self::File(PathBuf::from(path)))
                } else {
                    Err(format!("unknown state {s:?}; expected g1, ghz4, s0:N or file:PATH"))
                }
            }
        }
    }
}

/// A single message or a range of messages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MessageSpec(Vec<u64>);

impl FromStr for MessageSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("bad message {s:?}"));
        if let Some((a, b)) = s.split_once("..=") {
            Ok(Self((num(a)?..=num(b)?).collect()))
        } else if let Some((a, b)) = s.split_once("..") {
            Ok(Self((num(a)?..num(b)?).collect()))
        } else {
            Ok(Self(vec![num(s)?]))
        }
    }
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("malformed state file {path}: {message}")]
    MalformedState { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => EXIT_VERIFICATION,
            CliError::Core(Error::NoConvergence(_) | Error::NotABasisState(_)) => EXIT_VERIFICATION,
            _ => EXIT_USAGE,
        }
    }
}

/// Text produced by a command and whether its checks passed.
struct Emission {
    text: String,
    passed: bool,
}

impl Emission {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Basis => cmd_basis(cli.n, cli.format.unwrap_or(Format::Table)),
        Command::Roundtrip => cmd_roundtrip(cli.n, cli.format.unwrap_or(Format::Table)),
        Command::Capacity { state, d_a } => cmd_capacity(state, *d_a, cli.format.unwrap_or(Format::Json)),
        Command::Factorize => cmd_factorize(cli.format.unwrap_or(Format::Table)),
        Command::Session { messages, random } => {
            cmd_session(cli.n, messages, *random, cli.seed, cli.format.unwrap_or(Format::Json))
        }
        Command::GhzCompare => cmd_ghz_compare(cli.format.unwrap_or(Format::Json)),
    };
    let emission = match result {
        Ok(e) => e,
        Err(err) => {
            return Outcome { code: err.exit_code(), stdout: String::new(), stderr: format!("error: {err}\n") };
        }
    };
    let code = if emission.passed { EXIT_OK } else { EXIT_VERIFICATION };
    match &cli.out {
        Some(path) => match std::fs::write(path, &emission.text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(source) => {
                let err = CliError::Write { path: path.clone(), source };
                Outcome { code: err.exit_code(), stdout: String::new(), stderr: format!("error: {err}\n") }
            }
        },
        None => Outcome { code, stdout: emission.text, stderr: String::new() },
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// `±1`, `±1/2`, `±1/√2`, `±1/(2√2)`, … when within tolerance of `2^{-k/2}`,
/// decimals otherwise.
fn format_real(x: f64) -> String {
    let sign = if x < 0.0 { '-' } else { '+' };
    let a = x.abs();
    for k in 0..=52 {
        if (a - 0.5f64.powf(k as f64 / 2.0)).abs() < STATE_TOL {
            let m = 1u64 << (k / 2);
            return match (k % 2, m) {
                (0, 1) => format!("{sign}1"),
                (0, m) => format!("{sign}1/{m}"),
                (_, 1) => format!("{sign}1/√2"),
                (_, m) => format!("{sign}1/({m}√2)"),
            };
        }
    }
    format!("{sign}{a:.10}")
}

fn format_coefficient(c: Complex64) -> String {
    if c.im.abs() < STATE_TOL {
        format_real(c.re)
    } else if c.re.abs() < STATE_TOL {
        format!("{}i", format_real(c.im))
    } else {
        format!("+({:.10}{:+.10}i)", c.re, c.im)
    }
}

fn format_ket(k: &Ket) -> String {
    let n = k.num_qubits();
    k.amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > STATE_TOL)
        .map(|(i, &a)| format!("{}|{:0n$b}⟩", format_coefficient(a), i))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct BasisEntry {
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<u32>,
    s_index: u64,
    ket: Ket,
}

fn basis_entries(n: usize) -> Result<Vec<BasisEntry>, CliError> {
    match n {
        1 => BellLabel::ALL
            .iter()
            .map(|&label| {
                let ket = bell(label);
                let s_index = protocol::decode(&ket, 1)?.value();
                Ok(BasisEntry { label: label.symbol().to_string(), group: None, s_index, ket })
            })
            .collect(),
        2 => Ok(GIndex::all()
            .map(|i| BasisEntry {
                label: i.to_string(),
                group: Some(i.group()),
                s_index: bellbasis::message_of_g_index(i),
                ket: g_state(i),
            })
            .collect()),
        _ => (0..1u64 << (2 * n))
            .map(|j| Ok(BasisEntry { label: format!("s{j}"), group: None, s_index: j, ket: bellbasis::s_state(j, n)? }))
            .collect(),
    }
}

fn cmd_basis(n: usize, format: Format) -> Result<Emission, CliError> {
    if n == 0 || n > MAX_EMIT_PAIRS {
        return Err(CliError::Usage(format!(
            "basis emission is capped at N = {MAX_EMIT_PAIRS} (got N = {n})"
        )));
    }
    let entries = basis_entries(n)?;
    if format == Format::Json {
        return Ok(Emission::ok(to_json(&entries)));
    }
    let mut out = String::new();
    let width = entries.iter().map(|e| e.label.chars().count()).max().unwrap_or(0);
    let mut group = None;
    for e in &entries {
        if e.group != group {
            if let Some(g) = e.group {
                if group.is_some() {
                    out.push('\n');
                }
                writeln!(out, "Group {g}:").unwrap();
            }
            group = e.group;
        }
        let pad = width - e.label.chars().count();
        writeln!(out, "|{}⟩{} = {}", e.label, " ".repeat(pad), format_ket(&e.ket)).unwrap();
    }
    Ok(Emission::ok(out))
}

fn cmd_roundtrip(n: usize, format: Format) -> Result<Emission, CliError> {
    let report = protocol::roundtrip_all(n).map_err(|e| CliError::Usage(e.to_string()))?;
    let passed = report.passed();
    let text = match format {
        Format::Json => to_json(&report),
        Format::Table => {
            let mut s = format!(
                "N={}: {} messages, {} bits via {} qubits, {} bits per qubit, {} failures\n",
                report.n,
                report.messages,
                report.bits_per_message,
                report.qubits_per_message,
                report.bits_per_qubit,
                report.failures.len()
            );
            if !passed {
                writeln!(s, "failed messages: {:?}", report.failures).unwrap();
            }
            s
        }
    };
    Ok(Emission { text, passed })
}

enum SharedState {
    Pure(Ket),
    Mixed(DensityMatrix),
}

fn load_state(path: &PathBuf) -> Result<SharedState, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.clone(), source })?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::MalformedState { path: path.clone(), message: e.to_string() })?;
    let malformed = |e: serde_json::Error| CliError::MalformedState { path: path.clone(), message: e.to_string() };
    if value.get("amplitudes").is_some() {
        Ok(SharedState::Pure(serde_json::from_value(value).map_err(malformed)?))
    } else if value.get("entries").is_some() {
        Ok(SharedState::Mixed(serde_json::from_value(value).map_err(malformed)?))
    } else {
        Err(CliError::MalformedState {
            path: path.clone(),
            message: "expected a Ket (amplitudes) or density matrix (entries) object".into(),
        })
    }
}

fn cmd_capacity(selector: &StateSelector, d_a: Option<usize>, format: Format) -> Result<Emission, CliError> {
    let state = match selector {
        StateSelector::G1 => SharedState::Pure(g_state(GIndex::new(1)?)),
        StateSelector::Ghz4 => SharedState::Pure(ghz_family(GhzLabel::GhzPlus)),
        StateSelector::S0(n) if 2 * n > MAX_CAPACITY_QUBITS => {
            return Err(CliError::Usage(format!("capacity is capped at {MAX_CAPACITY_QUBITS} qubits (s0:{n})")))
        }
        StateSelector::S0(n) => SharedState::Pure(bellbasis::s0(*n).map_err(|e| CliError::Usage(e.to_string()))?),
        StateSelector::File(path) => load_state(path)?,
    };
    let qubits = match &state {
        SharedState::Pure(k) => k.num_qubits(),
        SharedState::Mixed(m) => m.num_qubits(),
    };
    if qubits > MAX_CAPACITY_QUBITS {
        return Err(CliError::Usage(format!("capacity is capped at {MAX_CAPACITY_QUBITS} qubits (got {qubits})")));
    }
    let rho = match state {
        SharedState::Pure(k) => DensityMatrix::from_pure(&k),
        SharedState::Mixed(m) => m,
    };
    let dim = rho.dim();
    let d_a = match d_a {
        Some(d) => d,
        None if rho.num_qubits() % 2 == 0 => 1 << (rho.num_qubits() / 2),
        None => {
            return Err(CliError::Usage(format!(
                "state has an odd number of qubits ({}); pass --d-a",
                rho.num_qubits()
            )))
        }
    };
    if d_a == 0 || dim % d_a != 0 {
        return Err(CliError::Usage(format!("--d-a {d_a} does not divide the state dimension {dim}")));
    }
    let report = capacity::dense_coding_capacity(&rho, d_a, dim / d_a)?;
    let text = match format {
        Format::Json => to_json(&report),
        Format::Table => format!(
            "d_A     = {}\nS(ρ^B)  = {:.12}\nS(ρ^AB) = {:.12}\nχ       = {:.12}\nHolevo  = {:.12}\n",
            report.d_a, report.entropy_b, report.entropy_ab, report.chi, report.holevo
        ),
    };
    Ok(Emission::ok(text))
}

fn cmd_factorize(format: Format) -> Result<Emission, CliError> {
    let mut rows = Vec::new();
    for i in GIndex::all() {
        let f = factorize(i);
        // independent reconstruction check before emitting
        let rebuilt = bell(f.first).tensor(&bell(f.second))?;
        let target = g_state(i).permute_qubits(&SWAP_MIDDLE)?;
        if f.max_deviation > STATE_TOL || !rebuilt.equal_up_to_global_phase(&target, STATE_TOL)? {
            return Err(CliError::Verification(format!(
                "{i} does not factorize (best candidate {} {}, deviation {:e})",
                f.first, f.second, f.max_deviation
            )));
        }
        rows.push(f);
    }
    let text = match format {
        Format::Json => to_json(&rows),
        Format::Table => {
            let mut s = String::new();
            for f in &rows {
                let label = f.g_index.to_string();
                writeln!(s, "|{label}⟩{} = |{}⟩_AB |{}⟩_AB", " ".repeat(3 - label.len()), f.first, f.second).unwrap();
            }
            s
        }
    };
    Ok(Emission::ok(text))
}

fn cmd_session(
    n: usize,
    messages: &[MessageSpec],
    random: Option<usize>,
    seed: u64,
    format: Format,
) -> Result<Emission, CliError> {
    let usage = |e: Error| CliError::Usage(e.to_string());
    let messages: Vec<u64> = match random {
        Some(count) => protocol::random_messages(n, count, seed).map_err(usage)?,
        None => messages.iter().flat_map(|m| m.0.iter().copied()).collect(),
    };
    let transcript: Transcript = protocol::session(n, &messages, seed).map_err(usage)?;
    let passed = transcript.all_successful();
    let text = match format {
        Format::Json => to_json(&transcript),
        Format::Table => {
            let mut s = format!("N={} seed={} steps={}\n", transcript.n, transcript.seed, transcript.steps.len());
            for (k, step) in transcript.steps.iter().enumerate() {
                let pauli = if step.pauli.is_empty() { "I" } else { step.pauli.as_str() };
                writeln!(
                    s,
                    "{k:>4}  message {:>w$}  op {pauli:<w2$}  sent {}  outcome {:>w$}  {}",
                    step.message,
                    step.transmitted,
                    step.outcome,
                    if step.success { "ok" } else { "FAIL" },
                    w = (1u64 << (2 * n)).to_string().len(),
                    w2 = 6 * n,
                )
                .unwrap();
            }
            s
        }
    };
    Ok(Emission { text, passed })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResourceSummary {
    pub orbit: usize,
    #[serde(serialize_with = "twelve_significant")]
    pub chi: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GhzComparison {
    pub g1: ResourceSummary,
    pub ghz: ResourceSummary,
}

pub fn ghz_comparison() -> crate::Result<GhzComparison> {
    let summarize = |k: &Ket| -> crate::Result<ResourceSummary> {
        Ok(ResourceSummary {
            orbit: capacity::orthogonal_orbit_count(k, 2)?,
            chi: capacity::pure_state_capacity(k, 2)?.chi,
        })
    };
    Ok(GhzComparison {
        g1: summarize(&g_state(GIndex::new(1)?))?,
        ghz: summarize(&ghz_family(GhzLabel::GhzPlus))?,
    })
}

fn cmd_ghz_compare(format: Format) -> Result<Emission, CliError> {
    let cmp = ghz_comparison()?;
    let text = match format {
        Format::Json => to_json(&cmp),
        Format::Table => format!(
            "state  orthogonal orbit  capacity χ\ng1     {:>16}  {:>10.6}\nGHZ    {:>16}  {:>10.6}\n",
            cmp.g1.orbit, cmp.g1.chi, cmp.ghz.orbit, cmp.ghz.chi
        ),
    };
    Ok(Emission::ok(text))
}
