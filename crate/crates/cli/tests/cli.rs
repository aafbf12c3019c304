use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qcorr::io::{to_json, StateFile};
use qcorr::linalg::{c, pauli_z, CMatrix, CVector};
use qcorr::monogamy::example_family_state;
use qcorr::{PureState, QuantumState, SubsystemLayout, UnitaryMatrix};

fn qcorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcorr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn state_file(dir: &Path, name: &str, state: QuantumState) -> PathBuf {
    write(dir, name, &to_json(&StateFile::from_state(&state)))
}

fn unitary_file(dir: &Path, name: &str, u: &UnitaryMatrix) -> PathBuf {
    write(dir, name, &to_json(&StateFile::from_unitary(u)))
}

/// Rows of a CSV report as maps from column name to value.
fn csv_rows(text: &str) -> Vec<std::collections::HashMap<String, String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    r.records()
        .map(|rec| {
            let rec = rec.unwrap();
            assert_eq!(rec.len(), header.len());
            header
                .iter()
                .cloned()
                .zip(rec.iter().map(String::from))
                .collect()
        })
        .collect()
}

fn f(row: &std::collections::HashMap<String, String>, key: &str) -> f64 {
    row[key]
        .parse()
        .unwrap_or_else(|_| panic!("{key} = {:?}", row[key]))
}

#[test]
fn conservation_header_and_summary() {
    let o = qcorr(&["conservation", "--samples", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(
        text.lines().next().unwrap(),
        "seed,focus,e_ab,e_ae,d_ab,d_ae,r1,r2,r3,r4,r5,spread_ab,spread_ae"
    );
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 2 * 3 + 1);
    assert_eq!(rows[0]["seed"], "42");
    assert_eq!(rows[3]["seed"], "43");
    let focuses: Vec<&str> = rows[..3].iter().map(|r| r["focus"].as_str()).collect();
    assert_eq!(focuses, ["A", "B", "E"]);
    let summary = rows.last().unwrap();
    assert_eq!(summary["seed"], "max");
    assert!(f(summary, "r5") <= 1e-4);
}

#[test]
fn conservation_tolerance_failure_names_the_seed() {
    let o = qcorr(&["conservation", "--samples", "2", "--tol", "1e-12"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("seed 4"), "{}", stderr(&o));
    assert!(!stdout(&o).is_empty(), "the report is still written");
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = qcorr(&[
        "conservation",
        "--samples",
        "1",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let again = qcorr(&["conservation", "--samples", "1", "--format", "json"]);
    assert_eq!(std::fs::read(&out).unwrap(), again.stdout);
    let v: serde_json::Value = serde_json::from_slice(&again.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["summary"]["passed"], true);
}

#[test]
fn invalid_flags_and_paths_exit_two() {
    assert_eq!(
        qcorr(&["conservation", "--samples", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qcorr(&["conservation", "--tol", "-1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qcorr(&["ssa-sweep", "--lambda", "1.5"]).status.code(),
        Some(2)
    );
    assert_eq!(qcorr(&["dqc1", "--n", "4"]).status.code(), Some(2));
    let o = qcorr(&[
        "conservation",
        "--samples",
        "1",
        "--out",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cannot write"));
}

#[test]
fn dqc1_random_unitaries() {
    let o = qcorr(&["dqc1", "--n", "2", "--samples", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 2);
    for r in &rows {
        assert!((f(r, "estimate_re") - f(r, "exact_re")).abs() <= 1e-9);
        assert!((f(r, "estimate_im") - f(r, "exact_im")).abs() <= 1e-9);
        assert_eq!(r["eof_method"], "koashi-winter");
    }
}

#[test]
fn dqc1_three_qubits_reports_entropies_only() {
    let o = qcorr(&["dqc1", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0]["d_ba"], "");
    assert!((f(&rows[0], "e_b_ae") - 3.0).abs() < 1e-9);
}

#[test]
fn dqc1_fixed_unitaries() {
    let dir = tempfile::tempdir().unwrap();
    let z = unitary_file(
        dir.path(),
        "z.json",
        &UnitaryMatrix::new(pauli_z()).unwrap(),
    );
    let o = qcorr(&["dqc1", "--unitary", z.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = &csv_rows(&stdout(&o))[0];
    assert!(f(r, "d_ba").abs() <= 1e-6);
    // entanglement moves from B:E to A:(BE)
    assert!(f(r, "e_be").abs() <= 1e-9);
    assert!((f(r, "e_a_be") - 1.0).abs() <= 1e-9);

    let id = unitary_file(
        dir.path(),
        "id.json",
        &UnitaryMatrix::new(CMatrix::identity(2, 2)).unwrap(),
    );
    let o = qcorr(&["dqc1", "--unitary", id.to_str().unwrap()]);
    let r = &csv_rows(&stdout(&o))[0];
    assert_eq!(r["exact_re"], "2");
    for k in ["d_ab", "d_ba", "d_ae"] {
        assert!(f(r, k).abs() <= 1e-6, "{k}");
    }
    // B and E stay a Bell pair
    assert!((f(r, "d_be") - 1.0).abs() <= 1e-6);
    assert!((f(r, "e_be") - 1.0).abs() <= 1e-9);
}

#[test]
fn dqc1_malformed_unitary() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"kind": "unitary", "entries": [[1, 0], [0, 0], [0, "x"], [1, 0]]}"#,
    );
    let o = qcorr(&["dqc1", "--unitary", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("entries[2]"), "{}", stderr(&o));
    let skew = write(
        dir.path(),
        "skew.json",
        r#"{"kind": "unitary", "entries": [[1, 0], [1, 0], [0, 0], [1, 0]]}"#,
    );
    let o = qcorr(&["dqc1", "--unitary", skew.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unitar"), "{}", stderr(&o));
}

#[test]
fn sweep_limits() {
    let o = qcorr(&["ssa-sweep", "--lambda", "0", "--alpha-steps", "11"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 11);
    for r in &rows {
        assert!(f(r, "delta").abs() <= 1e-6);
    }
    let o = qcorr(&["ssa-sweep", "--lambda", "1", "--alpha-steps", "11"]);
    let rows = csv_rows(&stdout(&o));
    let last = rows.last().unwrap();
    assert_eq!(last["alpha"], "1");
    for k in [
        "s_ab", "s_ae", "s_b", "s_e", "e_ab", "e_ae", "d_ab", "d_ae", "delta", "i1", "i2",
    ] {
        assert!(f(last, k).abs() <= 1e-9, "{k}");
    }
}

#[test]
fn sweep_arrow_flag_and_json() {
    let o = qcorr(&[
        "ssa-sweep",
        "--alpha-steps",
        "3",
        "--arrow",
        "measure-first",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["arrow"], "measure-first");
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert!(v["rows"][0]["i1"].is_number());
}

#[test]
fn state_info_bell_pair_with_spectator() {
    let dir = tempfile::tempdir().unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amp = CVector::zeros(8);
    amp[0] = c(h, 0.0);
    amp[6] = c(h, 0.0);
    let psi = PureState::new(amp, SubsystemLayout::qubits(&["A", "B", "E"]).unwrap()).unwrap();
    let path = state_file(dir.path(), "phi.json", QuantumState::Pure(psi));
    let o = qcorr(&["state-info", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], true);
    assert!((v["ledger"]["e_ab"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!(v["ledger"]["d_ae"].as_f64().unwrap().abs() < 1e-6);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 3);
}

#[test]
fn state_info_rejects_bad_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "bad.json",
        r#"{"dims": [2], "labels": ["A"], "kind": "density", "entries": [[0.49, 0], [0, 0], [0, 0], [0.49, 0]]}"#,
    );
    let o = qcorr(&["state-info", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("trace"), "{}", stderr(&o));
}

#[test]
fn state_info_agrees_with_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let rho = example_family_state(0.2, 0.9).unwrap();
    let path = state_file(dir.path(), "family.json", QuantumState::Mixed(rho));
    let o = qcorr(&["state-info", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let info_delta = v["balance"]["delta"].as_f64().unwrap();
    let sweep = qcorr(&["ssa-sweep", "--lambda", "0.9", "--alpha-steps", "11"]);
    let rows = csv_rows(&stdout(&sweep));
    let row = rows.iter().find(|r| r["alpha"] == "0.2").unwrap();
    assert!((f(row, "delta") - info_delta).abs() <= 1e-6);
}
