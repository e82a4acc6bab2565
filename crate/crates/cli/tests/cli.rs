//! Exit codes and output of the `uob` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn catalog(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../catalog")
        .join(format!("{name}.json"))
}

fn uob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uob"))
        .args(args)
        .env_remove("UOB_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn basis_file(dir: &TempDir, spec: &str, method: &str) -> PathBuf {
    let out = dir.path().join(format!("{spec}.{method}.json"));
    let o = uob(&[
        "basis",
        catalog(spec).to_str().unwrap(),
        "--method",
        method,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn check_reports_failing_spectral_condition_with_exit_zero() {
    let o = uob(&["check", catalog("c2_in_m3").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("spectral: FAILS"), "{s}");
    assert!(!s.contains("entropy"));
}

#[test]
fn check_reports_d_and_entropy() {
    let o = uob(&["check", catalog("c_in_m1_m2").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("d=5, entropy=ln 5 ≈ 1.6094"), "{s}");
    assert!(s.contains("markov trace: [1, 2]"));
    assert!(s.contains("quadratic identity: HOLDS"));
}

#[test]
fn entropy_subcommand() {
    let o = uob(&["entropy", catalog("c_in_m3").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "d=9, entropy=ln 9 ≈ 2.1972");
    let o = uob(&["entropy", catalog("c2_in_m3").to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn parse_errors_exit_two_and_invalid_specs_exit_one() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{ \"name\": ");
    assert_eq!(code(&uob(&["check", bad.to_str().unwrap()])), 2);
    let unknown = write(
        &dir,
        "unknown.json",
        r#"{"name":"x","inclusion_matrix":[[1]],"sub_dims":[1],"extra":1}"#,
    );
    assert_eq!(code(&uob(&["check", unknown.to_str().unwrap()])), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&uob(&["check", missing.to_str().unwrap()])), 2);
    let mismatch = write(
        &dir,
        "mismatch.json",
        r#"{"name":"x","inclusion_matrix":[[1],[2]],"sub_dims":[1],"super_dims":[1,3]}"#,
    );
    let o = uob(&["check", mismatch.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("valid: no"));
    let zero_col = write(
        &dir,
        "zero.json",
        r#"{"name":"x","inclusion_matrix":[[1,0]],"sub_dims":[1,1]}"#,
    );
    assert_eq!(code(&uob(&["check", zero_col.to_str().unwrap()])), 1);
    assert_eq!(code(&uob(&["basis", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&uob(&["verify", bad.to_str().unwrap()])), 2);
    assert_eq!(
        code(&uob(&[
            "basis",
            catalog("c2_in_m2").to_str().unwrap(),
            "--method",
            "nope"
        ])),
        2
    );
}

#[test]
fn abelian_basis_document_for_c2_in_m2() {
    let o = uob(&["basis", catalog("c2_in_m2").to_str().unwrap(), "--method", "abelian"]);
    assert_eq!(code(&o), 0);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["d"], 2);
    assert_eq!(doc["elements"].as_array().unwrap().len(), 2);
    assert_eq!(doc["spec"]["name"], "c2_in_m2");
}

#[test]
fn auto_picks_full_matrix_sub_for_m2_in_m2_m4() {
    let dir = TempDir::new().unwrap();
    let p = basis_file(&dir, "m2_in_m2_m4", "auto");
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    assert_eq!(doc["provenance"], "full_matrix_sub");
    assert_eq!(doc["d"], 5);
}

#[test]
fn basis_exit_codes() {
    let dir = TempDir::new().unwrap();
    let mixed = write(
        &dir,
        "mixed.json",
        r#"{"name":"mixed","inclusion_matrix":[[1,1],[1,1]],"sub_dims":[2,2]}"#,
    );
    let o = uob(&["basis", mixed.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no known construction"));
    assert_eq!(code(&uob(&["basis", mixed.to_str().unwrap(), "--method", "tensor"])), 0);
    assert_eq!(code(&uob(&["basis", catalog("c2_in_m3").to_str().unwrap()])), 1);
    assert_eq!(
        code(&uob(&[
            "basis",
            catalog("m2_in_m2_m4").to_str().unwrap(),
            "--method",
            "abelian"
        ])),
        1
    );
}

#[test]
fn verify_accepts_fresh_documents_of_every_method() {
    let dir = TempDir::new().unwrap();
    for (spec, method) in [
        ("c_in_m1_m2", "abelian"),
        ("c_in_m3", "weyl"),
        ("c2_in_m2_m2", "tensor"),
        ("m2_in_m2_m4", "full-matrix-sub"),
        ("m2_m2_in_m4", "full-matrix-super"),
        ("c_in_m1_m2", "basic"),
    ] {
        let p = basis_file(&dir, spec, method);
        let o = uob(&["verify", p.to_str().unwrap(), "--json"]);
        assert_eq!(code(&o), 0, "{spec} {method}: {}", stdout(&o));
        assert!(stdout(&o).contains("verification: PASS"));
    }
}

fn edit_document(p: &Path, f: impl FnOnce(&mut Value)) {
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    f(&mut doc);
    std::fs::write(p, serde_json::to_string(&doc).unwrap()).unwrap();
}

#[test]
fn verify_rejects_perturbed_entry() {
    let dir = TempDir::new().unwrap();
    let p = basis_file(&dir, "c_in_m1_m2", "abelian");
    edit_document(&p, |doc| {
        let re = doc["elements"][2][1][0][0].as_f64().unwrap();
        doc["elements"][2][1][0][0] = Value::from(re + 1e-3);
    });
    let o = uob(&["verify", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let s = stdout(&o);
    assert!(s.contains("FAIL unitary"), "{s}");
    // a loose enough tolerance accepts the same document
    let loose = Command::new(env!("CARGO_BIN_EXE_uob"))
        .args(["verify", p.to_str().unwrap()])
        .env("UOB_TOL", "1e-1")
        .output()
        .unwrap();
    assert_eq!(code(&loose), 0, "{}", stdout(&loose));
    assert_eq!(code(&uob(&["--tol", "1e-1", "verify", p.to_str().unwrap()])), 0);
}

#[test]
fn verify_rejects_wrong_cardinality_as_theorem_a_failure() {
    let dir = TempDir::new().unwrap();
    let p = basis_file(&dir, "c_in_m1_m2", "abelian");
    edit_document(&p, |doc| {
        doc["elements"].as_array_mut().unwrap().pop();
        doc["d"] = Value::from(4);
    });
    let o = uob(&["verify", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let s = stdout(&o);
    assert!(s.contains("FAIL theorem_a.dimension_identity"), "{s}");
}

#[test]
fn verify_rejects_inconsistent_documents_as_parse_errors() {
    let dir = TempDir::new().unwrap();
    let p = basis_file(&dir, "c2_in_m2", "abelian");
    edit_document(&p, |doc| doc["d"] = Value::from(3));
    assert_eq!(code(&uob(&["verify", p.to_str().unwrap()])), 2);
    let p = basis_file(&dir, "c2_in_m2", "weyl");
    edit_document(&p, |doc| {
        doc["elements"][0][0].as_array_mut().unwrap().pop();
    });
    assert_eq!(code(&uob(&["verify", p.to_str().unwrap()])), 2);
}

#[test]
fn verify_honours_seed() {
    let dir = TempDir::new().unwrap();
    let p = basis_file(&dir, "c3_cyclic", "auto");
    for seed in ["1", "42"] {
        assert_eq!(code(&uob(&["--seed", seed, "verify", p.to_str().unwrap()])), 0);
    }
}

#[test]
fn channel_decompositions() {
    let o = uob(&["channel", catalog("c2_in_m2").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("K phases: 0/2, 1/2"), "{s}");
    assert!(s.contains("VERIFIED"));

    let o = uob(&["channel", catalog("c2_in_m2_m2").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("T=4"), "{s}");
    assert_eq!(s.matches("2-cycle").count(), 2);

    let o = uob(&["channel", catalog("c_in_m1_m2").to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("standard trace"));
}
