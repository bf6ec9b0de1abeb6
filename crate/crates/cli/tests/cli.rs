use std::process::{Command, Output};

use serde_json::Value;

fn coble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coble")).args(args).output().expect("binary runs")
}

fn certificate(args: &[&str]) -> (i32, Value) {
    let out = coble(args);
    let json = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    (out.status.code().expect("exit code"), json)
}

fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../schema/certificate.schema.json");
    let schema: Value = serde_json::from_str(text).expect("schema parses");
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

const PASSING: &[&[&str]] = &[
    &["invariants", "dim", "--degree", "3"],
    &["invariants", "dim", "--degree", "6"],
    &["invariants", "basis", "--degree", "3"],
    &["coble", "check"],
    &["nu", "charts", "--mode", "annexe"],
    &["nu", "rank", "--mode", "annexe"],
    &["nu", "kernel", "--mode", "all_lifts"],
    &["hesse", "dual", "--lambda", "2", "--oracle-prime", "997"],
    &["hesse", "dual", "--lambda", "1/2"],
    &["enum", "degree-dual"],
    &["enum", "verlinde", "--kmax", "12"],
    &["enum", "quadric-count"],
    &["enum", "zagier", "--h", "1"],
    &["prym", "check"],
    &["prym", "genus", "--n", "3", "--g", "2"],
];

#[test]
fn passing_commands_exit_zero_and_validate() {
    let schema = schema();
    for args in PASSING {
        let (code, cert) = certificate(args);
        assert_eq!(code, 0, "{args:?}: {cert:#}");
        assert!(schema.is_valid(&cert), "{args:?} violates the schema");
        assert_eq!(cert["pass"], Value::Bool(true));
    }
}

#[test]
fn expected_values_carry_provenance() {
    let (_, cert) = certificate(&["invariants", "dim", "--degree", "6"]);
    let check = &cert["checks"][0];
    assert_eq!(check["expected"]["value"], "43");
    assert_eq!(check["expected"]["provenance"], "PAPER");
    assert_eq!(cert["outputs"]["dimension"], 43);
}

#[test]
fn nu_rank_reports_the_verdict() {
    let (_, cert) = certificate(&["nu", "rank", "--mode", "annexe"]);
    assert_eq!(cert["outputs"]["rows"], 160);
    assert_eq!(cert["outputs"]["rank"], 39);
    assert_eq!(cert["outputs"]["verdict"], "text_claim");
}

#[test]
fn failed_check_exits_one() {
    let schema = schema();
    for args in [
        &["prym", "genus", "--n", "2", "--g", "2", "--t", "6"][..],
        &["hesse", "dual", "--lambda", "3", "--oracle-prime", "13"][..],
        &["hesse", "dual", "--lambda", "1"][..],
    ] {
        let (code, cert) = certificate(args);
        assert_eq!(code, 1, "{args:?}");
        assert!(schema.is_valid(&cert));
        assert_eq!(cert["pass"], Value::Bool(false));
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bogus"][..],
        &["invariants", "dim", "--degree", "4"][..],
        &["hesse", "dual", "--lambda", "x/y"][..],
        &["hesse", "dual", "--lambda", "2", "--oracle-prime", "12"][..],
        &["enum", "verlinde", "--kmax", "13"][..],
        &["nu", "rank", "--mode", "sideways"][..],
        &["prym", "genus", "--n", "1", "--g", "2"][..],
        &["prym", "genus", "--n", "4", "--g", "2"][..],
    ] {
        let out = coble(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?} wrote to stdout");
    }
}

#[test]
fn artifact_hash_is_reproducible() {
    for args in [&["enum", "verlinde"][..], &["nu", "kernel"][..], &["prym", "check"][..]] {
        let (_, a) = certificate(args);
        let (_, b) = certificate(args);
        assert_eq!(a["artifact_hash"], b["artifact_hash"], "{args:?}");
    }
    let (_, a) = certificate(&["enum", "zagier", "--h", "1"]);
    let (_, b) = certificate(&["enum", "zagier", "--h", "2"]);
    assert_ne!(a["artifact_hash"], b["artifact_hash"]);
}

#[test]
fn text_format() {
    let out = coble(&["--format", "text", "enum", "degree-dual"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("enum degree-dual\n"));
    assert!(text.contains("PASS (3H-2e)(2H-e)^7: 6"));
    assert!(text.lines().last().unwrap().starts_with("PASS in "));
}

#[test]
fn verify_all_certificate() {
    let out = coble(&["verify-all"]);
    let cert: Value = serde_json::from_slice(&out.stdout).expect("JSON");
    assert!(schema().is_valid(&cert));
    let criteria = cert["outputs"]["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 11);
    let failing: Vec<u64> = criteria.iter().filter(|c| c["pass"] == false).map(|c| c["id"].as_u64().unwrap()).collect();
    // Criteria 4 and 6 cannot be met; see the acceptance harness.
    assert_eq!(failing, vec![4, 6]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("criterion 11"));
}
