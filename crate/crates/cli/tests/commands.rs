use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn indecomp(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indecomp"))
        .current_dir(dir)
        .env_remove("INDECOMP_SEED")
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn payload(dir: &Path, file: &str) -> Value {
    let text = std::fs::read_to_string(dir.join(file)).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    v["payload"].clone()
}

fn build(dir: &Path, family: &[&str], out: &str) {
    let mut args = vec!["--reproducible", "maps", "build"];
    args.extend_from_slice(family);
    args.extend_from_slice(&["--out", out]);
    let o = indecomp(dir, &args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn build_writes_map_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let o = indecomp(
        dir.path(),
        &["maps", "build", "--family", "extended-reduction", "--dim", "4", "--phases", "0,0", "--out", "re.json"],
    );
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("min -2.0"));
    let map = payload(dir.path(), "re.json");
    assert_eq!(map["dim_in"], 4);
    assert_eq!(map["kraus_basis"].as_array().unwrap().len(), 6);
    let witness = payload(dir.path(), "re.witness.json");
    assert_eq!(witness["shape"]["dimA"], 4);
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("re.json")).unwrap()).unwrap();
    assert!(raw.get("created_unix").is_some());
}

#[test]
fn odd_dimension_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = indecomp(dir.path(), &["maps", "build", "--family", "extended-reduction", "--dim", "3"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("antisymmetric"));
    let o = indecomp(dir.path(), &["unitary", "antisym", "--dim", "5"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn piani_conditions_are_checked() {
    let dir = tempfile::tempdir().unwrap();
    let o = indecomp(
        dir.path(),
        &["maps", "build", "--family", "piani", "--lambda2", "1,1,1,1"],
    );
    assert_eq!(code(&o), 2);
    build(dir.path(), &["--family", "piani", "--d1", "2", "--d2", "3"], "p.json");
    assert_eq!(payload(dir.path(), "p.json")["dim_in"], 6);
}

#[test]
fn certify_exit_codes_follow_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    build(d, &["--family", "extended-reduction", "--dim", "4"], "re.json");
    build(d, &["--family", "reduction", "--dim", "4"], "r.json");
    build(d, &["--family", "choi"], "c.json");
    for (map, expected, verdict) in [
        ("re.json", 0, "CertifiedIndecomposable"),
        ("r.json", 3, "CriterionNotSatisfied"),
        ("c.json", 4, "Inapplicable"),
    ] {
        let o = indecomp(d, &["certify", "--map", map, "--trials", "100", "--out", "cert.json"]);
        assert_eq!(code(&o), expected, "{map}");
        assert_eq!(payload(d, "cert.json")["verdict"], verdict);
    }
}

#[test]
fn decompose_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    build(d, &["--family", "reduction", "--dim", "4"], "r.json");
    build(d, &["--family", "extended-reduction", "--dim", "4"], "re.json");
    let o = indecomp(d, &["decompose", "--witness", "r.witness.json", "--out", "dr.json"]);
    assert_eq!(code(&o), 0);
    assert!(payload(d, "dr.json")["residual"].as_f64().unwrap() < 1e-6);
    let o = indecomp(d, &["decompose", "--map", "re.json", "--out", "dre.json"]);
    assert_eq!(code(&o), 5);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no decomposition found"));
    assert!(payload(d, "dre.json")["residual"].as_f64().unwrap() > 0.1);
}

#[test]
fn search_and_verify_state() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    build(d, &["--family", "extended-reduction", "--dim", "4"], "re.json");
    let o = indecomp(d, &["search", "--witness", "re.witness.json", "--out", "s.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report = payload(d, "s.json");
    assert_eq!(report["certified"], true);
    assert!(report["witness_value"].as_f64().unwrap() < -1e-4);
    let o = indecomp(d, &["verify-state", "--map", "re.json", "--state", "s.json", "--out", "v.json"]);
    assert_eq!(code(&o), 0);
    assert!(payload(d, "v.json")["min_eigenvalue"].as_f64().unwrap() < 0.0);
}

#[test]
fn reduction_witness_yields_no_violation() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    build(d, &["--family", "reduction", "--dim", "3"], "r.json");
    let o = indecomp(d, &["search", "--map", "r.json", "--restarts", "2", "--max-iter", "60"]);
    assert_eq!(code(&o), 5);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["payload"]["witness_value"].as_f64().unwrap() >= -1e-6);
}

#[test]
fn seed_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_indecomp"))
        .current_dir(dir.path())
        .env("INDECOMP_SEED", "42")
        .args(["--reproducible", "unitary", "antisym", "--dim", "4", "--random"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 42);
    assert!(v.get("created_unix").is_none());
}

#[test]
fn gellmann_basis_command() {
    let dir = tempfile::tempdir().unwrap();
    let o = indecomp(dir.path(), &["bases", "gellmann", "--dim", "3"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["payload"]["elements"].as_array().unwrap().len(), 9);
}

#[test]
fn malformed_input_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\"dim_in\": 2}").unwrap();
    let o = indecomp(dir.path(), &["certify", "--map", "bad.json"]);
    assert_eq!(code(&o), 2);
    let o = indecomp(dir.path(), &["certify", "--map", "missing.json"]);
    assert_eq!(code(&o), 2);
}
