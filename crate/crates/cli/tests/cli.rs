use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn hh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hh")).args(args).output().unwrap()
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = hh(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

#[test]
fn cyclic_homology_dimensions() {
    let (code, r) = report(&["compute", "--group", &data("z2.json"), "--ring", "f2", "--max-degree", "5"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["dimensions"], serde_json::json!([2, 2, 2, 2, 2, 2]));
    assert_eq!(r["result"]["oracles_agree"], true);
    let (_, t) = report(&["compute", "--group", &data("trivial.json")]);
    assert_eq!(t["result"]["dimensions"], serde_json::json!([1, 0, 0, 0]));
}

#[test]
fn free_abelian_compute_reports_free_ranks() {
    let (code, r) = report(&["compute", "--group", &data("free_abelian_3.json")]);
    assert_eq!(code, 0);
    let ranks: Vec<u64> = r["result"]["degrees"].as_array().unwrap().iter().map(|d| d["free_rank_over_A"].as_u64().unwrap()).collect();
    assert_eq!(ranks, vec![1, 3, 3, 1]);
}

#[test]
fn exit_codes() {
    let cases: Vec<(Vec<String>, i32)> = vec![
        (vec!["bv".into(), "--group".into(), data("free_abelian_1.json")], 0),
        (vec!["axioms".into(), "--spec".into(), data("exterior1.json")], 0),
        (vec!["axioms".into(), "--spec".into(), data("mutated.json")], 1),
        (vec!["compute".into(), "--group".into(), data("missing.json")], 2),
        (vec!["compute".into(), "--group".into(), data("z2.json"), "--ring".into(), "f4".into()], 2),
        (vec!["compute".into(), "--group".into(), data("z2.json"), "--max-degree".into(), "99".into()], 2),
        (vec!["bv".into(), "--group".into(), data("free_abelian_1.json"), "--trunc-k".into(), "0".into()], 2),
        (vec!["axioms".into(), "--spec".into(), data("z2.json")], 2),
        (vec!["bv".into(), "--group".into(), data("free_abelian_3.json")], 3),
        (vec!["bv".into(), "--group".into(), data("z3.json")], 3),
        (vec!["compare-group".into(), "--group".into(), data("free_abelian_1.json")], 3),
        (vec!["cy-check".into(), "--group".into(), data("free_abelian_2.json")], 3),
        (vec!["cy-check".into(), "--group".into(), data("free_abelian_1.json")], 0),
    ];
    for (args, expect) in cases {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = hh(&a);
        assert_eq!(out.status.code(), Some(expect), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn failing_axioms_print_a_witness() {
    let out = hh(&["axioms", "--spec", &data("mutated.json")]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("witness"));
}

#[test]
fn reports_are_reproducible_and_hash_ignores_output_options() {
    let dir = std::env::temp_dir().join(format!("hh-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let p = path.display().to_string();
    let base = ["compare-group", "--group", &data("z3.json"), "--ring", "f3", "--max-degree", "1"];
    let stdout = hh(&base).stdout;
    let mut with_out = base.to_vec();
    with_out.extend(["--out", &p, "--jobs", "3"]);
    let table = hh(&with_out);
    assert_eq!(table.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&table.stdout).starts_with("compare-group pass"));
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn envelope_fields() {
    let (_, r) = report(&["cy-check", "--group", &data("free_abelian_1.json")]);
    for key in ["tool", "version", "command", "config", "config_hash", "status", "result"] {
        assert!(r.get(key).is_some(), "{key}");
    }
    assert_eq!(r["config_hash"].as_str().unwrap().len(), 64);
    let (_, other) = report(&["cy-check", "--group", &data("free_abelian_1.json"), "--ring", "f3"]);
    assert_ne!(r["config_hash"], other["config_hash"]);
}

#[test]
fn golden_corpus_outcomes() {
    let expected: Value = serde_json::from_str(&std::fs::read_to_string(data("specs/expected.json")).unwrap()).unwrap();
    let expected = expected.as_object().unwrap();
    assert!(expected.len() >= 20);
    for (name, expect) in expected {
        let (code, _) = report(&["axioms", "--spec", &data(&format!("specs/{name}.json"))]);
        assert_eq!(code == 0, expect.as_bool().unwrap(), "{name}");
    }
}
