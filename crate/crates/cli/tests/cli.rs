//! End-to-end CLI tests: golden table output, determinism, exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_primesplit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "exit {:?} for {args:?}", out.status);
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn table4_matches_golden() {
    let got = stdout(&["table", "4", "--format", "md"]);
    assert_eq!(got, include_str!("golden/table4.md"));
}

#[test]
fn table2_csv_matches_golden() {
    let got = stdout(&["table", "2", "--format", "csv"]);
    assert_eq!(got, include_str!("golden/table2.csv"));
}

#[test]
fn table3_matches_golden() {
    let got = stdout(&["table", "3", "--format", "md"]);
    assert_eq!(got, include_str!("golden/table3.md"));
}

#[test]
fn table_disc_json_schema_and_golden() {
    let got = stdout(&["table", "disc", "--format", "json"]);
    assert_eq!(got, include_str!("golden/table_disc.json"));
    let v: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert!(v.get("paper_tables").is_some());
    assert!(v.get("checks").is_some());
    assert!(v.get("meta").is_some());
    // integers are decimal strings
    let rows = v["paper_tables"]["disc"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["discriminant"].is_string()));
    // the f_26 row carries 2^20 * 13^3
    assert!(rows
        .iter()
        .any(|r| r["level"] == "26" && r["discriminant"] == "2303721472"));
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        vec!["table", "2", "--format", "json"],
        vec!["table", "4", "--format", "csv"],
        vec!["query", "enumerate", "22", "2", "9"],
    ] {
        let a = stdout(&args);
        let b = stdout(&args);
        assert_eq!(a, b, "nondeterministic output for {args:?}");
    }
}

#[test]
fn enumerate_golden() {
    let got = stdout(&["query", "enumerate", "26", "13", "2"]);
    assert_eq!(got, include_str!("golden/enumerate_26_13_2.txt"));
    let got = stdout(&["query", "enumerate", "28", "3", "1"]);
    assert!(got.contains("attained mod 3: {1}"));
}

#[test]
fn query_split_and_reduce() {
    assert_eq!(stdout(&["query", "split", "--", "-7", "2"]).trim(), "split");
    assert_eq!(stdout(&["query", "split", "5", "2"]).trim(), "inert");
    assert_eq!(stdout(&["query", "split", "7", "7"]).trim(), "ramified");
    let got = stdout(&["query", "reduce", "2", "2"]);
    assert!(got.starts_with("I_14"), "{got}");
    let got = stdout(&["query", "reduce", "1/3", "3"]);
    assert!(got.starts_with("I_14"), "{got}");
    let got = stdout(&["query", "reduce", "7", "13"]);
    assert!(got.starts_with("I_2 "), "{got}");
}

#[test]
fn query_sample_lists_points() {
    let got = stdout(&["query", "sample", "28", "2"]);
    assert!(got.contains("x0 = 2/1") && got.contains("D = 7"), "{got}");
    assert!(got.contains("rational point"), "{got}");
}

#[test]
fn verify_all_small_height_passes() {
    let out = run(&["verify-all", "--height", "12", "--n", "26"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS")), "{text}");
}

#[test]
fn verify_all_json_schema() {
    let out = run(&["verify-all", "--height", "8", "--n", "22", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("valid JSON on stdout");
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert!(c["id"].is_string());
        assert_eq!(c["status"], "pass");
        assert!(c.get("runtime_ms").is_none(), "runtimes stay out of the data section");
    }
}

#[test]
fn exit_codes() {
    // unsupported level: 2
    let out = run(&["verify-all", "--n", "37"]);
    assert_eq!(out.status.code(), Some(2));
    // usage error: 64
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(64));
    let out = run(&["table", "7"]);
    assert_eq!(out.status.code(), Some(64));
    // injected registry fault: 1
    let out = run(&["verify-all", "--height", "4", "--fault-inject", "registry"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"), "{text}");
}
