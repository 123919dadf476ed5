use std::process::{Command, Output};

use serde_json::Value;
use superdense::bellbasis::{bell, g_state, BellLabel, GIndex};
use superdense::capacity::CapacityReport;
use superdense::cli::{run_from, GhzComparison, EXIT_OK, EXIT_USAGE};
use superdense::protocol::Transcript;
use superdense::statevec::Ket;

fn superdense(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superdense")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn basis_json_emits_parseable_kets() {
    let out = superdense(&["basis", "--n", "2", "--format", "json"]);
    assert!(out.status.success());
    let entries: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(entries.len(), 16);
    for (k, e) in entries.iter().enumerate() {
        let ket: Ket = serde_json::from_value(e["ket"].clone()).unwrap();
        let i = GIndex::new(k as u32 + 1).unwrap();
        assert_eq!(ket, g_state(i));
        assert_eq!(e["group"], i.group());
        assert_eq!(e["label"], format!("g{}", k + 1));
    }

    let out = superdense(&["basis", "--n", "3", "--format", "json"]);
    let entries: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(entries.len(), 64);
}

#[test]
fn basis_cap() {
    let out = superdense(&["basis", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("capped"));
}

#[test]
fn roundtrip_reports_rate() {
    for (n, line) in [("1", "2 bits via 1 qubits"), ("2", "4 bits via 2 qubits"), ("3", "6 bits via 3 qubits")] {
        let out = superdense(&["roundtrip", "--n", n]);
        assert_eq!(out.status.code(), Some(0));
        assert!(stdout(&out).contains(line), "{}", stdout(&out));
        assert!(stdout(&out).contains("0 failures"));
    }
    let out = superdense(&["roundtrip", "--n", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["messages"], 64);
    assert_eq!(v["bits_per_qubit"], 2.0);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn capacity_selectors() {
    let report = |args: &[&str]| -> CapacityReport {
        let out = superdense(args);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        serde_json::from_str(&stdout(&out)).unwrap()
    };
    let r = report(&["capacity", "--state", "g1"]);
    assert_eq!((r.d_a, r.chi, r.entropy_b, r.holevo), (4, 4.0, 2.0, 4.0));
    assert_eq!(report(&["capacity", "--state", "ghz4"]).chi, 3.0);
    assert_eq!(report(&["capacity", "--state", "s0:3"]).chi, 6.0);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.json");
    std::fs::write(&path, serde_json::to_string(&bell(BellLabel::PhiPlus)).unwrap()).unwrap();
    let sel = format!("file:{}", path.display());
    let r = report(&["capacity", "--state", &sel, "--d-a", "2"]);
    assert_eq!((r.chi, r.entropy_b, r.entropy_ab), (2.0, 1.0, 0.0));

    // a density-matrix file works too: maximally mixed two qubits has chi = 1 + 1 - 2 = 0
    let path = dir.path().join("mixed.json");
    let mixed = superdense::statevec::DensityMatrix::maximally_mixed(4).unwrap();
    std::fs::write(&path, serde_json::to_string(&mixed).unwrap()).unwrap();
    let r = report(&["capacity", "--state", &format!("file:{}", path.display())]);
    assert_eq!(r.chi, 0.0);
}

#[test]
fn capacity_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"num_qubits": 2, "amplitudes": [[1, 0], [1, 0], [0, 0], [0, 0]]}"#).unwrap();
    let out = superdense(&["capacity", "--state", &format!("file:{}", bad.display())]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));

    let missing = dir.path().join("missing.json");
    let out = superdense(&["capacity", "--state", &format!("file:{}", missing.display())]);
    assert_eq!(out.status.code(), Some(2));

    let out = superdense(&["capacity", "--state", "g1", "--d-a", "3"]);
    assert_eq!(out.status.code(), Some(2));

    let out = superdense(&["capacity", "--state", "s0:6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("capped"));
}

#[test]
fn factorize_table_and_json() {
    let out = superdense(&["factorize"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 16);
    assert!(text.lines().next().unwrap().ends_with("|Φ+⟩_AB |Φ+⟩_AB"));
    assert!(text.lines().last().unwrap().starts_with("|g16⟩ = |Ψ-⟩_AB |Ψ-⟩_AB"));

    let out = superdense(&["factorize", "--format", "json"]);
    let rows: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 16);
    assert_eq!(rows[0]["g_index"], 1);
    assert_eq!(rows[0]["first"], "PhiPlus");
    assert_eq!(rows[15]["second"], "PsiMinus");
    assert!(rows.iter().all(|r| r["max_deviation"].as_f64().unwrap() <= 1e-10));
}

#[test]
fn session_transcripts() {
    let out = superdense(&["session", "--n", "2", "--messages", "0..=15"]);
    assert!(out.status.success());
    let t: Transcript = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(t.seed, 0x5DC0DE);
    assert_eq!(t.steps.iter().map(|s| s.outcome).collect::<Vec<_>>(), (0..16).collect::<Vec<_>>());
    assert!(t.all_successful());

    // parse(emit(x)) == x, and emit(parse(..)) reproduces the bytes
    let again = serde_json::to_string_pretty(&t).unwrap() + "\n";
    assert_eq!(again, stdout(&out));

    let out = superdense(&["session", "--n", "2", "--random", "10", "--seed", "7"]);
    let t: Transcript = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(t.steps.len(), 10);
    assert!(t.all_successful());

    let out = superdense(&["session", "--n", "2"]);
    let t: Transcript = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(t.steps.is_empty());

    let out = superdense(&["session", "--n", "2", "--messages", "3,99"]);
    assert_eq!(out.status.code(), Some(2));
    let out = superdense(&["session", "--messages", "1", "--random", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn session_out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let out = superdense(&["session", "--random", "5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let printed = superdense(&["session", "--random", "5"]);
    assert_eq!(std::fs::read(&path).unwrap(), printed.stdout);
}

#[test]
fn ghz_compare_schema() {
    let out = superdense(&["ghz-compare"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let obj = v.as_object().unwrap();
    assert_eq!(obj.keys().collect::<Vec<_>>(), vec!["g1", "ghz"]);
    for key in ["g1", "ghz"] {
        let entry = v[key].as_object().unwrap();
        assert_eq!(entry.len(), 2);
        assert!(entry["orbit"].is_u64());
        assert!(entry["chi"].is_f64());
    }
    let cmp: GhzComparison = serde_json::from_value(v).unwrap();
    assert_eq!((cmp.g1.orbit, cmp.ghz.orbit), (16, 8));
    assert_eq!((cmp.g1.chi, cmp.ghz.chi), (4.0, 3.0));
}

#[test]
fn in_process_runner_matches_binary() {
    let args = ["superdense", "ghz-compare", "--format", "table"];
    let outcome = run_from(args);
    assert_eq!(outcome.code, EXIT_OK);
    let bin = superdense(&args[1..]);
    assert_eq!(outcome.stdout, stdout(&bin));
    assert_eq!(run_from(["superdense", "--n"]).code, EXIT_USAGE);
}
