use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn grfrob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grfrob")).args(args).output().expect("binary runs")
}

fn construct_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    let out = grfrob(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let path = dir.join(name);
    std::fs::write(&path, &out.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn dual_numbers_sigma_set() {
    let dir = tempfile::tempdir().unwrap();
    // E(k) = k ⊕ k* is GF(3)[x]/(x²) with deg x = c.
    let a = construct_to(dir.path(), "d.json", &["trivial-extension", "--inner", "field", "--p", "3"]);
    let r = json(&grfrob(&["analyze", &a]));
    assert_eq!(r["frobenius"]["graded_qf"], true);
    assert_eq!(r["frobenius"]["sigma_set"], serde_json::json!(["c"]));
    // For E(k[x]/x²) the identity is not in the sigma-set.
    let t = construct_to(dir.path(), "t.json", &["trivial-extension", "--inner", "dual-numbers", "--p", "3"]);
    let r = json(&grfrob(&["analyze", &t]));
    let set: Vec<&str> = r["frobenius"]["sigma_set"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(!set.contains(&"e"));
}

#[test]
fn matrix_example_classifies() {
    let dir = tempfile::tempdir().unwrap();
    let a = construct_to(
        dir.path(),
        "m.json",
        &["matrix", "--group", "C4", "--support", "c2", "--shifts", "e,c", "--p", "3"],
    );
    let c = json(&grfrob(&["classify", &a]));
    assert_eq!(c["classification"]["t"], 1);
    assert_eq!(c["classification"]["multiplicities"], serde_json::json!([2]));
    let r = json(&grfrob(&["analyze", &a]));
    assert_eq!(r["radical"]["graded_semisimple"], true);
    assert!(r["frobenius"]["sigma_set"].as_array().unwrap().contains(&Value::from("e")));
    let text = grfrob(&["analyze", &a, "--format", "text"]);
    assert!(text.status.success());
    assert!(String::from_utf8_lossy(&text.stdout).contains("graded QF yes"));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = construct_to(dir.path(), "s3.json", &["group-algebra", "--group", "S3", "--p", "3"]);
    assert_eq!(grfrob(&["analyze", &a]).stdout, grfrob(&["analyze", &a]).stdout);
}

#[test]
fn division_and_product() {
    let dir = tempfile::tempdir().unwrap();
    let d = construct_to(dir.path(), "d.json", &["division", "--group", "C2", "--support", "full", "--p", "2"]);
    let c = json(&grfrob(&["classify", &d]));
    assert_eq!(c["classification"]["t"], 1);
    assert_eq!(c["classification"]["multiplicities"], serde_json::json!([1]));
    let q = construct_to(
        dir.path(),
        "q.json",
        &["division", "--group", "V4", "--support", "full", "--p", "3", "--cocycle", "quaternion"],
    );
    let p = construct_to(dir.path(), "p.json", &["product", &q, &q]);
    let c = json(&grfrob(&["classify", &p]));
    assert_eq!(c["classification"]["t"], 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"field\": {\"p\": 3}}").unwrap();
    assert_eq!(grfrob(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(grfrob(&["analyze", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(grfrob(&["construct", "group-algebra", "--group", "C2", "--p", "101"]).status.code(), Some(3));
    assert_eq!(grfrob(&["construct", "group-algebra", "--group", "Q8", "--p", "3"]).status.code(), Some(2));
    assert_eq!(grfrob(&["construct", "bogus"]).status.code(), Some(2));
}

#[test]
fn verify_rejects_non_associative_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let a = construct_to(dir.path(), "t.json", &["trivial-extension", "--inner", "upper-triangular-2", "--p", "3"]);
    let mut alg: Value = serde_json::from_str(&std::fs::read_to_string(&a).unwrap()).unwrap();
    let good = alg.clone();
    let c = alg["structure"][1][3].as_u64().unwrap();
    alg["structure"][1][3] = (c % 2 + 1).into();
    let corpus = serde_json::json!({"instances": [{"name": "ok", "algebra": good}, {"name": "broken", "algebra": alg}]});
    let path = dir.path().join("corpus.json");
    std::fs::write(&path, corpus.to_string()).unwrap();
    assert_eq!(grfrob(&["verify", "--corpus", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_file_corpus_emits_route_table() {
    let dir = tempfile::tempdir().unwrap();
    let a = construct_to(dir.path(), "t.json", &["trivial-extension", "--inner", "dual-numbers", "--p", "3"]);
    let alg: Value = serde_json::from_str(&std::fs::read_to_string(&a).unwrap()).unwrap();
    let corpus = serde_json::json!({"instances": [{"name": "E(k[x]/x^2)", "algebra": alg}]});
    let path = dir.path().join("corpus.json");
    std::fs::write(&path, corpus.to_string()).unwrap();
    let s = json(&grfrob(&["verify", "--suite", "frobenius", "--corpus", path.to_str().unwrap()]));
    assert_eq!(s["passed"], true);
    assert_eq!(s["route_table"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_builtin_passes() {
    let out = grfrob(&["verify", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let s: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(s["instances"].as_u64().unwrap() >= 30);
}
