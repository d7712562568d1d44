use std::process::{Command, Output};

use serde_json::Value;

fn ringfunc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringfunc"))
        .args(args)
        .env_remove("RINGFUNC_CAP")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = ringfunc(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn test_command_examples() {
    let v = json(&[
        "test",
        "--ring",
        "zpn:2,2",
        "--poly",
        "(x^2-x)^2",
        "--prop",
        "null",
    ]);
    assert_eq!(v["result"], true);
    let v = json(&[
        "test",
        "--ring",
        "zpn:2,2",
        "--poly",
        "x",
        "--prop",
        "unit-valued",
    ]);
    assert_eq!(v["result"], false);
    let v = json(&[
        "test",
        "--ring",
        "fq:3",
        "--poly",
        "2x^3+2x",
        "--prop",
        "perm-dual",
        "--oracle",
    ]);
    assert_eq!(v["result"], true);
    assert_eq!(v["oracle_agrees"], true);
    let v = json(&[
        "test", "--ring", "zpn:2,2", "--poly", "x^2", "--prop", "perm", "--oracle",
    ]);
    assert_eq!(v["result"], false);
    assert_eq!(v["oracle_agrees"], true);
}

#[test]
fn count_command_examples() {
    let v = json(&["count", "--what", "uvpf", "--p", "2", "--n", "2"]);
    assert_eq!(v["value"], 16);
    let v = json(&["count", "--what", "beta", "--p", "3", "--n", "2"]);
    assert_eq!(v["value"], 6);
    let v = json(&[
        "count",
        "--what",
        "uvpf",
        "--p",
        "3",
        "--n",
        "2",
        "--brute-force",
    ]);
    assert_eq!(v["value"], 5832);
    assert_eq!(v["brute_force"], 5832);
    assert_eq!(v["agrees"], true);
    let v = json(&[
        "count",
        "--what",
        "kernel",
        "--ring",
        "zpn:2,3",
        "--brute-force",
    ]);
    assert_eq!(v["value"], 16);
    assert_eq!(v["agrees"], true);
    let v = json(&["count", "--what", "polyfun", "--p", "2", "--n", "40"]);
    assert!(v["value"].is_string());
}

#[test]
fn canonical_command() {
    let v = json(&["canonical", "--poly", "x^2", "--p", "2", "--n", "2"]);
    assert_eq!(v.to_string(), r#"{"p":2,"n":2,"terms":[[0,1,1],[0,2,1]]}"#);
    let v = json(&["canonical", "--poly", "3", "--p", "2", "--n", "2", "--uv"]);
    assert_eq!(v["layers"]["2"], serde_json::json!([[1, 0, 1]]));
    let out = ringfunc(&["canonical", "--poly", "2x", "--p", "2", "--n", "2", "--uv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn enumerate_examples() {
    let v = json(&["enumerate", "--what", "stabilizer", "--ring", "zpn:2,2"]);
    assert_eq!(v["order"], 4);
    let v = json(&["enumerate", "--what", "group", "--ring", "fq:2", "--dual"]);
    assert_eq!(v["order"], 2);
    let v = json(&["enumerate", "--what", "uvpf-forms", "--p", "2", "--n", "1"]);
    assert_eq!(v["count"], 1);
    let v = json(&["enumerate", "--what", "group", "--ring", "zpn:2,2"]);
    assert_eq!(v["order"], 8);
    let v = json(&["enumerate", "--what", "kernel", "--p", "3", "--n", "2"]);
    assert_eq!(v["count"], 729);
}

#[test]
fn export_writes_files_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = ringfunc(&[
            "export",
            "--what",
            "group",
            "--ring",
            "fq:3",
            "--dual",
            "--format",
            "csv",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert_eq!(text.lines().count(), 49);
    let v = json(&["export", "--what", "semidirect", "--ring", "fq:2"]);
    assert_eq!(
        v["multiplication_table"],
        serde_json::json!([[0, 1], [1, 0]])
    );
}

#[test]
fn verify_suites() {
    let v = json(&["verify", "--suite", "groups", "--max-size", "9"]);
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["name"].as_str().unwrap().contains("fq:3")));
    assert!(checks
        .iter()
        .all(|c| !c["name"].as_str().unwrap().contains("fq:2,2")));
    let v = json(&["verify", "--suite", "counting"]);
    assert_eq!(v["passed"], true);
    let first = ringfunc(&["verify", "--suite", "canonical"]);
    let second = ringfunc(&["verify", "--suite", "canonical"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(
        ringfunc(&["test", "--ring", "zm:1", "--poly", "x", "--prop", "null"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        ringfunc(&["test", "--ring", "zm:4", "--poly", "x^", "--prop", "null"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(ringfunc(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        ringfunc(&["count", "--what", "uvpf"]).status.code(),
        Some(1)
    );
    assert_eq!(ringfunc(&["--help"]).status.code(), Some(0));
    assert_eq!(
        ringfunc(&["test", "--ring", "fq:2,20", "--poly", "x", "--prop", "null"])
            .status
            .code(),
        Some(3)
    );
    let capped = Command::new(env!("CARGO_BIN_EXE_ringfunc"))
        .args([
            "count",
            "--what",
            "uvpf",
            "--p",
            "3",
            "--n",
            "2",
            "--brute-force",
        ])
        .env("RINGFUNC_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    let allowed = ringfunc(&[
        "--allow-large",
        "enumerate",
        "--what",
        "kernel",
        "--p",
        "2",
        "--n",
        "2",
    ]);
    assert!(allowed.status.success());
}
