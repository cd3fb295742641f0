use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_darboux-thermo"))
        .args(args)
        .env_remove(darboux_thermo::cli::OUT_DIR_ENV)
        .output()
        .expect("binary runs")
}

fn schema() -> jsonschema::JSONSchema {
    let raw = include_str!("../schema/output.schema.json");
    let schema: Value = serde_json::from_str(raw).expect("schema parses");
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

fn assert_valid(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    let s = schema();
    if let Err(errors) = s.validate(&v) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("schema violations: {msgs:?}");
    }
    v
}

#[test]
fn action_csv_shape() {
    let out = bin(&["action", "--family", "planck", "--hbar", "1", "--grid", "0.5:5:10", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("x,f,f_prime"));
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn planck_origin_is_named_and_rejected() {
    let out = bin(&["action", "--family", "planck", "--grid", "-1:1:3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("x = 0"));
}

#[test]
fn json_outputs_match_schema() {
    let cases: [&[&str]; 5] = [
        &["action", "--family", "thermal", "--grid", "-1:1:3", "--permissive", "--omega", "2", "--format", "json"],
        &["family", "--seed", "vacuum", "--lambda", "1,2", "--include-seed", "--grid", "-2:2:9", "--format", "json"],
        &["spectrum", "--omega", "0.1:5:6", "--beta", "2", "--lambda", "inf,2", "--seed", "vacuum", "--resistance", "rlc:1,0.5,2", "--format", "json"],
        &["verify", "--suite", "all", "--format", "json"],
        &["verify", "--suite", "riccati", "--tolerance", "1e-30", "--format", "json"],
    ];
    for args in cases {
        let out = bin(args);
        assert!(matches!(out.status.code(), Some(0) | Some(2) | Some(3)), "{args:?}");
        assert_valid(&out);
    }
}

#[test]
fn verify_all_reports_every_check() {
    let out = bin(&["verify", "--suite", "all", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = assert_valid(&out);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() > 100);
    assert_eq!(v["overall"], true);
    for suite in ["riccati.", "darboux.", "limits.", "entropy.", "fdt."] {
        assert!(checks.iter().any(|c| c["name"].as_str().unwrap().starts_with(suite)), "{suite}");
    }
}

#[test]
fn verify_failure_exit_code() {
    let out = bin(&["verify", "--suite", "riccati", "--tolerance", "1e-30"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn family_violation_is_reported() {
    let out = bin(&["family", "--seed", "vacuum", "--lambda", "0.5", "--grid", "-2:2:5"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("brackets"), "{err}");
}

#[test]
fn parse_errors_exit_one() {
    assert_eq!(bin(&["action", "--family", "planck"]).status.code(), Some(1));
    assert_eq!(bin(&["verify", "--suite", "nope"]).status.code(), Some(1));
    assert_eq!(bin(&["spectrum", "--omega", "1:2:3", "--beta", "1", "--resistance", "bad"]).status.code(), Some(1));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}

#[test]
fn outputs_are_byte_identical() {
    let args = ["spectrum", "--omega", "0.01:50:40", "--log", "--beta", "1", "--lambda", "2,inf,10", "--seed", "vacuum"];
    assert_eq!(bin(&args).stdout, bin(&args).stdout);
}

#[test]
fn output_directory_from_environment() {
    let dir = std::env::temp_dir().join(format!("darboux-thermo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_darboux-thermo"))
        .args(["action", "--family", "vacuum", "--grid", "0:1:3"])
        .env(darboux_thermo::cli::OUT_DIR_ENV, &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(dir.join("action.csv")).unwrap();
    assert!(written.starts_with("x,f,f_prime\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}
