//! End-to-end tests of the ringrank binary: schemas, exit codes, report
//! determinism, construct/analyze round trips.

use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ringrank"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_job(dir: &tempfile::TempDir, name: &str, content: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, content).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON document")
}

#[test]
fn analyze_nonmaximal_order() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_job(
        &dir,
        "m2.json",
        r#"{"kind":"order","minpoly":[-2,0,1],"suborder_basis":[[1,0],[0,2]],"normalization":"ambient"}"#,
    );
    let out = run(&["analyze", &f, "--deterministic"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["rank"], 2);
    assert_eq!(doc["normal"], false);
    assert_eq!(doc["conductor_index"], "2");
    assert_eq!(doc["singular_primes"][0]["p"], 2);
    assert_eq!(doc["singular_primes"][0]["z"], 2);
    assert_eq!(doc["singular_primes"][0]["e"], 2);
    assert_eq!(doc["witness"]["mu"], 2);
    assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn analyze_maximal_order_reports_interval() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_job(&dir, "max.json", r#"{"kind":"order","minpoly":[-2,0,1]}"#);
    let out = run(&["analyze", &f, "--deterministic"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["normal"], true);
    assert_eq!(doc["rank"]["interval"], serde_json::json!([1, 2]));
    assert_eq!(doc["witness"], Value::Null);
}

#[test]
fn analyze_finite_ring() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_job(
        &dir,
        "z8.json",
        r#"{"kind":"finring","divisors":[8],"table":[[[1]]],"one":[1]}"#,
    );
    let out = run(&["analyze", &f, "--deterministic"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["rank"], 1);
    assert_eq!(doc["length"], 3);
    assert_eq!(doc["nilpotency_elementwise"], 3);
    assert_eq!(doc["nilpotency_idealwise"], 3);
    assert_eq!(doc["maximal_ideals"][0]["p"], 2);
}

#[test]
fn schema_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    // non-closed suborder lattice
    let f = write_job(
        &dir,
        "bad.json",
        r#"{"kind":"order","minpoly":[-2,0,0,1],"suborder_basis":[[1,0,0],[0,1,0],[0,0,2]]}"#,
    );
    let out = run(&["analyze", &f]);
    assert_eq!(out.status.code(), Some(2));
    let doc = stdout_json(&out);
    assert!(doc["error"]["message"].as_str().unwrap().contains("not closed"));

    // malformed JSON
    let f = write_job(&dir, "bad2.json", r#"{"kind":"order""#);
    let out = run(&["analyze", &f]);
    assert_eq!(out.status.code(), Some(2));

    // non-monic polynomial
    let f = write_job(&dir, "bad3.json", r#"{"kind":"order","minpoly":[1,2]}"#);
    let out = run(&["analyze", &f]);
    assert_eq!(out.status.code(), Some(2));

    // invalid finite ring table
    let f = write_job(
        &dir,
        "bad4.json",
        r#"{"kind":"finring","divisors":[2,4],"table":[[[1,0],[0,1]],[[0,1],[1,0]]],"one":[1,0]}"#,
    );
    let out = run(&["analyze", &f]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn deterministic_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_job(&dir, "m2.json", r#"{"kind":"order","minpoly":[-2,0,1],"suborder_basis":[[1,0],[0,2]]}"#);
    let a = run(&["analyze", &f, "--deterministic"]);
    let b = run(&["analyze", &f, "--deterministic"]);
    assert_eq!(a.stdout, b.stdout);
    // without the flag a timestamp appears
    let c = run(&["analyze", &f]);
    let doc = stdout_json(&c);
    assert!(doc["timestamp"].is_string());
}

#[test]
fn construct_and_reanalyze() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m3.json");
    let out = run(&["construct", "matson", "3", "--emit", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["analyze", path.to_str().unwrap(), "--deterministic"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["rank"], 3);
    assert_eq!(doc["singular_primes"].as_array().unwrap().len(), 1);

    let path = dir.path().join("t.json");
    let out = run(&["construct", "trunc-poly", "2", "2", "3", "--emit", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["analyze", path.to_str().unwrap(), "--deterministic"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["size"], "64");
    assert_eq!(doc["rank"], 2);

    // constructions with an ambient order
    let path = dir.path().join("pb.json");
    let out = run(&[
        "construct", "pullback", "3", "7", "--minpoly", "1,0,1", "--emit", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["analyze", path.to_str().unwrap(), "--deterministic"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["rank"], 2);
    assert_eq!(doc["singular_primes"].as_array().unwrap().len(), 2);
}

#[test]
fn construction_jobs_analyze_directly() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_job(
        &dir,
        "w.json",
        r#"{"kind":"construction","name":"trunc-witness","args":[2,3,4]}"#,
    );
    let out = run(&["analyze", &f, "--deterministic"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let witness_check = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "witness-generators")
        .expect("witness check present");
    assert_eq!(witness_check["pass"], true);
    assert!(witness_check["detail"].as_str().unwrap().contains("3 generators"));

    // construction input errors map to exit 2
    let f = write_job(&dir, "bad.json", r#"{"kind":"construction","name":"matson","args":[1]}"#);
    let out = run(&["analyze", &f]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_reads_stdin() {
    let mut child = bin()
        .args(["analyze", "-", "--deterministic"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"kind":"finring","divisors":[6],"table":[[[1]]],"one":[1]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["length"], 2);
    assert_eq!(doc["rank"], 1);
}

#[test]
fn size_cap_flag_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_job(
        &dir,
        "z8.json",
        r#"{"kind":"finring","divisors":[8],"table":[[[1]]],"one":[1]}"#,
    );
    let out = run(&["analyze", &f, "--deterministic", "--max-ring-size", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["rank"], Value::Null);
    assert!(doc["notes"].as_array().unwrap().iter().any(|n| n
        .as_str()
        .unwrap()
        .contains("exhaustive rank skipped")));

    let out = bin()
        .args(["analyze", &f, "--deterministic"])
        .env("RINGRANK_MAX_RING_SIZE", "4")
        .output()
        .unwrap();
    let doc = stdout_json(&out);
    assert_eq!(doc["rank"], Value::Null);
}

#[test]
fn demo_subcommand() {
    let out = run(&["demo", "--filter", "matson-rank"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS  matson-rank-2"));
    assert!(text.contains("4 of 4 checks passed"));

    let out = run(&["demo", "--filter", "no-such-check"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("warning"));
}
