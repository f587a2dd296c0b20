//! End-to-end checks for the `surreal` binary: exit codes, output shapes,
//! report files, and replay.

use std::process::{Command, Output};

fn surreal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surreal"))
        .args(args)
        .output()
        .expect("spawn surreal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn eval_prints_notation() {
    let out = surreal(&["eval", "mo([+1, -1])"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "[+w, -w^(2)]");
}

#[test]
fn eval_json_carries_convention() {
    let out = surreal(&["eval", "lambda([-1])", "--json", "--convention", "shifted-guarded"]);
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["convention"], "shifted-guarded");
}

#[test]
fn eval_with_let_bindings() {
    let out = surreal(&["eval", "let a = [+1, -1]; cmp(mo(a), a)"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "gt");
}

#[test]
fn cmp_orders_numbers() {
    let out = surreal(&["cmp", "[+w]", "[+w, +1]"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "lt");
}

#[test]
fn signs_lists_runs() {
    let out = surreal(&["signs", "[+w, -1, +2]", "--limit", "8"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["+w", "-1", "+2"]);
}

#[test]
fn signs_truncates_symbolic_tails() {
    let out = surreal(&["signs", "V([+1])", "--limit", "4"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 5);
    assert_eq!(text.lines().last(), Some("..."));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(exit_code(&surreal(&["frobnicate"])), 64);
    assert_eq!(exit_code(&surreal(&["eval", "mo("])), 64);
    assert_eq!(exit_code(&surreal(&["eval", "0", "--convention", "nope"])), 64);
    assert_eq!(exit_code(&surreal(&["audit", "--suite", "nope"])), 64);
}

#[test]
fn help_is_not_an_error() {
    let out = surreal(&["--help"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("surreal"));
}

#[test]
fn audit_clean_suite_exits_zero_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = surreal(&[
        "audit",
        "--suite",
        "iota-kappa",
        "--convention",
        "paper-verbatim",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let reports = doc.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["convention"], "paper-verbatim");
    assert_eq!(reports[0]["suites"][0]["name"], "iota-kappa");
    assert_eq!(reports[0]["suites"][0]["failed"], 0);
}

#[test]
fn audit_defective_suite_exits_one_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = surreal(&[
        "audit",
        "--suite",
        "lambda-shift",
        "--convention",
        "paper-verbatim",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 1);

    // The findings in the report replay to the same verdicts.
    let replay = surreal(&["replay", path.to_str().unwrap()]);
    assert_eq!(exit_code(&replay), 1);
    assert!(stdout(&replay).contains("FAIL"));
    assert!(!stdout(&replay).is_empty());
}

#[test]
fn replay_single_case() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("case.json");
    let spec = serde_json::json!({
        "suite": "omega-map",
        "convention": "paper-verbatim",
        "args": ["roundtrip", "[+1, -w]"],
    });
    std::fs::write(&path, spec.to_string()).unwrap();
    let out = surreal(&["replay", path.to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["outcome"]["status"], "pass");
}

#[test]
fn table_emits_csv() {
    let out = surreal(&["table", "--map", "lambda", "--a", "0", "--n-range", "-1..1"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,index,value"));
    assert_eq!(lines.clone().count(), 3);
    assert!(lines.all(|l| l.contains(',')));
}

#[test]
fn budget_env_must_be_positive() {
    let out = Command::new(env!("CARGO_BIN_EXE_surreal"))
        .env("SURREAL_BUDGET", "0")
        .args(["eval", "0"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 64);
}
