use std::path::PathBuf;
use std::process::Command as Process;

use clap::Parser;
use paradd_cli::{execute, Cli, Report};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Report {
    let mut argv = vec!["paradd"];
    argv.extend_from_slice(args);
    execute(&Cli::try_parse_from(argv).unwrap())
}

fn reparse(report: &Report) -> Report {
    serde_json::from_str(&report.to_json()).unwrap()
}

#[test]
fn minus_sqrt5_system_fails_analysis() {
    let r = run(&["analyze", &fixture("minus_sqrt5_system.json")]);
    assert_eq!(r.exit_code, 1);
    assert_eq!(r.details["lower_bound"], "6");
    assert_eq!(r.details["coverage_base_minus_one"]["pass"], false);
    assert_eq!(r.details["coverage_base_minus_one"]["class_count"], "4");
    assert_eq!(r.details["base_min_poly"], serde_json::json!(["-5", "0", "1"]));
}

#[test]
fn avizienis_certificate_verifies() {
    let r = run(&["verify-rule", &fixture("avizienis_system.json"), &fixture("avizienis_rule.json")]);
    assert_eq!((r.verdict.as_str(), r.exit_code), ("certified_correct", 0));
    assert_eq!(r.details["windows_checked"], 625);
}

#[test]
fn missing_zero_is_invalid_input() {
    let r = run(&["analyze", &fixture("no_zero_system.json")]);
    assert_eq!(r.exit_code, 2);
    assert_eq!(r.details["error"], "ZeroMissing");
}

#[test]
fn parse_errors_name_file_and_offset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"min_poly\": [1,\n  ]}").unwrap();
    let r = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(r.exit_code, 2);
    assert_eq!(r.details["file"], path.to_str().unwrap());
    assert_eq!(r.details["offset"], 19);
}

#[test]
fn tiny_precision_is_exhausted() {
    let r = run(&["analyze", &fixture("sqrt5_system.json"), "--precision", "1e-5000"]);
    assert_eq!(r.exit_code, 3);
}

#[test]
fn reports_round_trip() {
    let sys = fixture("avizienis_system.json");
    let rule = fixture("avizienis_rule.json");
    let word = fixture("word.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["analyze", &sys],
        vec!["classes", &sys],
        vec!["verify-rule", &sys, &rule],
        vec!["test-rule", &sys, &rule, "--max-len", "3", "--samples", "5"],
        vec!["lint-rule", &sys, &rule],
        vec!["add", &sys, &rule, &word, &word],
        vec!["convert", &sys, &rule, &word],
        vec!["kblock", &sys, "--k", "2", "--word", &word],
        vec!["member", &sys, "--element", "-123"],
        vec!["ring-eq", &sys],
        vec!["analyze", "/does/not/exist.json"],
    ];
    for args in cases {
        let r = run(&args);
        assert_eq!(reparse(&r), r, "{args:?}");
    }
}

#[test]
fn witness_reproduces_discrepancy() {
    let dir = tempfile::tempdir().unwrap();
    let sys = fixture("avizienis_system.json");
    let mut rule: Value = serde_json::from_str(&std::fs::read_to_string(fixture("avizienis_rule.json")).unwrap()).unwrap();
    // window (6, 0) should give -4; index 6 of the output alphabet is 0
    let entry = rule["table"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|e| e["window"] == serde_json::json!([18, 12]))
        .unwrap();
    entry["out"] = 6.into();
    rule.as_object_mut().unwrap().remove("certificate");
    let rule_path = dir.path().join("bad_rule.json");
    std::fs::write(&rule_path, rule.to_string()).unwrap();
    let rule_path = rule_path.to_str().unwrap();

    let r = run(&["test-rule", &sys, rule_path, "--max-len", "3", "--samples", "0"]);
    assert_eq!((r.verdict.as_str(), r.exit_code), ("refuted", 1));
    let witness_path = dir.path().join("witness.json");
    std::fs::write(&witness_path, r.details["witness"].to_string()).unwrap();
    let c = run(&["convert", &sys, rule_path, witness_path.to_str().unwrap()]);
    assert_eq!((c.verdict.as_str(), c.exit_code), ("value_changed", 1));
    assert_eq!(c.details["output"], r.details["converted"]);
    assert_eq!(c.details["input_value"], r.details["input_value"]);
    assert_eq!(c.details["output_value"], r.details["output_value"]);
    assert_ne!(c.details["input_value"], c.details["output_value"]);
}

#[test]
fn uncertified_rule_cannot_be_verified() {
    let dir = tempfile::tempdir().unwrap();
    let mut rule: Value = serde_json::from_str(&std::fs::read_to_string(fixture("binary_signed_rule.json")).unwrap()).unwrap();
    rule.as_object_mut().unwrap().remove("certificate");
    let path = dir.path().join("rule.json");
    std::fs::write(&path, rule.to_string()).unwrap();
    let r = run(&["verify-rule", &fixture("binary_signed_system.json"), path.to_str().unwrap()]);
    assert_eq!(r.exit_code, 2);
}

#[test]
fn searched_rule_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("found.json");
    let sys = fixture("binary_012_system.json");
    let r = run(&["search-rule", &sys, "--carry-bound", "2", "--rule-out", out.to_str().unwrap()]);
    assert_eq!((r.verdict.as_str(), r.exit_code), ("found", 0));
    let v = run(&["verify-rule", &sys, out.to_str().unwrap()]);
    assert_eq!(v.verdict, "certified_correct");
    let none = run(&["search-rule", &fixture("binary_01_system.json"), "--carry-bound", "2"]);
    assert_eq!((none.verdict.as_str(), none.exit_code), ("not_found", 1));
}

#[test]
fn transfer_to_other_conjugate() {
    let r = run(&[
        "transfer",
        &fixture("sqrt5_system.json"),
        &fixture("sqrt5_rule.json"),
        "--embedding",
        "0",
    ]);
    assert_eq!(r.exit_code, 0);
    assert_eq!(r.details["certificate"], "certified_correct");
    assert_eq!(r.details["system"]["embedding_index"], 0);
}

#[test]
fn membership_and_ring_equality() {
    let sys = fixture("sqrt5_system.json");
    let m = run(&["member", &sys, "--element", "7,-3"]);
    assert_eq!(m.verdict, "representable");
    assert_eq!(run(&["ring-eq", &sys]).verdict, "equal");
    let r = run(&["ring-eq", &fixture("binary_012_system.json")]);
    assert_eq!((r.verdict.as_str(), r.exit_code), ("unreachable", 1));
    assert_eq!(r.details["witness"], serde_json::json!(["-1"]));
}

#[test]
fn binary_writes_report_and_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let run_once = || {
        let status = Process::new(env!("CARGO_BIN_EXE_paradd"))
            .args(["analyze", &fixture("minus_sqrt5_system.json"), "--out", out.to_str().unwrap()])
            .status()
            .unwrap();
        let mut report: Report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        report.timing_micros = 0;
        (status.code(), report)
    };
    let first = run_once();
    assert_eq!(first.0, Some(1));
    assert_eq!(first, run_once());

    let status = Process::new(env!("CARGO_BIN_EXE_paradd")).args(["analyze"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
}
