//! End-to-end checks against the built binary: exact stdout for the term
//! printer, JSON schema and determinism for the structured reports, and
//! the exit-code contract.

use std::process::{Command, Output};

fn winsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_winsum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = winsum(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn gen_prints_terms_on_one_line() {
    assert_eq!(
        stdout_of(&["gen", "--seq", "pell", "--from", "0", "--count", "7"]),
        "0 1 2 5 12 29 70\n"
    );
}

#[test]
fn gen_handles_negative_start_and_modulus() {
    assert_eq!(
        stdout_of(&["gen", "--seq", "fibonacci", "--from", "-3", "--count", "5"]),
        "2 -1 1 0 1\n"
    );
    assert_eq!(
        stdout_of(&["gen", "--seq", "pell", "--count", "8", "--mod", "3"]),
        "0 1 2 2 0 2 1 1\n"
    );
}

#[test]
fn custom_spec_via_coefficient_lists() {
    // r=3, s=-1 seed: 0, 1, 3, 8, 21, 55
    assert_eq!(
        stdout_of(&["gen", "--coeffs", "3,-1", "--init", "0,1", "--count", "6"]),
        "0 1 3 8 21 55\n"
    );
}

#[test]
fn sum_prints_exact_window_total() {
    assert_eq!(
        stdout_of(&["sum", "--seq", "pell", "--from", "0", "--window", "8"]),
        "288\n"
    );
}

#[test]
fn search_emits_json_envelope_with_verdict() {
    let text = stdout_of(&[
        "search",
        "--seq",
        "pell",
        "--window",
        "6",
        "--horizon",
        "100",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    assert_eq!(v["subcommand"], "search");
    assert!(v["tool_version"].is_string());
    assert!(v["params"].is_object());
    assert_eq!(v["result"]["found"], false);
    assert!(!v["result"]["witnesses"].as_array().unwrap().is_empty());

    let text = stdout_of(&[
        "search",
        "--seq",
        "pell",
        "--window",
        "4",
        "--horizon",
        "100",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    assert_eq!(v["result"]["found"], true);
    assert_eq!(v["result"]["constant"], "4");
    assert_eq!(v["result"]["offset"], 2);
}

#[test]
fn classify_csv_has_the_fixed_columns() {
    let text = stdout_of(&[
        "classify",
        "seq",
        "--seq",
        "pell",
        "--nmax",
        "8",
        "--horizon",
        "100",
        "--format",
        "csv",
    ]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("label,N,found,C,k,horizon"));
    assert_eq!(lines.next(), Some("pell,1,true,1,0,100"));
    assert!(text.lines().any(|l| l == "pell,4,true,4,2,100"));
    assert!(text.lines().any(|l| l == "pell,8,true,24,4,100"));
}

#[test]
fn pisano_sweep_emits_json_lines() {
    let text = stdout_of(&[
        "pisano",
        "--seq",
        "pell",
        "--mod-from",
        "3",
        "--mod-to",
        "6",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).expect("json line");
        for key in ["m", "preperiod", "period", "parity"] {
            assert!(v.get(key).is_some(), "missing {key} in {line}");
        }
    }
}

#[test]
fn verify_reports_pass_and_exit_zero() {
    let out = winsum(&[
        "verify",
        "--id",
        "pell-sum-4N",
        "--nmax",
        "60",
        "--Nmax",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"][0]["passed"], true);
}

#[test]
fn tilings_count_and_blocksum() {
    assert_eq!(
        stdout_of(&["tilings", "count", "--k", "1", "--n", "15", "--format", "text"]),
        "470832\n"
    );
    let out = winsum(&[
        "tilings", "blocksum", "--k", "2", "--nmax", "60", "--a", "3", "--b", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn conjecture_scan_finds_only_the_expected_window() {
    let text = stdout_of(&[
        "conjecture",
        "scan",
        "--k",
        "2",
        "--nmax",
        "12",
        "--horizon",
        "120",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let found = v["result"]["found_windows"].as_array().unwrap();
    assert_eq!(found.len(), 1);
    assert_eq!(found[0]["window"], 6);
    assert_eq!(found[0]["constant"], "4");
    assert_eq!(found[0]["offset"], 4);
}

#[test]
fn identical_inputs_produce_identical_bytes() {
    let args = [
        "classify",
        "seq",
        "--seq",
        "fibonacci",
        "--nmax",
        "10",
        "--horizon",
        "120",
    ];
    let a = winsum(&args);
    let b = winsum(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(winsum(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        winsum(&["gen", "--seq", "tribonacci", "--count", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(winsum(&["gen", "--count", "3"]).status.code(), Some(2));
    // negative index on a non-unit trailing coefficient
    assert_eq!(
        winsum(&["gen", "--coeffs", "1,2", "--init", "0,1", "--from", "-2", "--count", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_flag_writes_the_file() {
    let dir = std::env::temp_dir().join(format!("winsum-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.txt");
    let out = winsum(&[
        "gen",
        "--seq",
        "pell",
        "--count",
        "5",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "0 1 2 5 12\n");
    std::fs::remove_dir_all(&dir).ok();
}
