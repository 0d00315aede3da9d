//! The `lamw` binary: documented examples, exit codes, determinism and
//! certificate round trips.

use std::process::{Command, Output};

fn lamw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lamw"))
        .args(args)
        .env_remove("WORKBENCH_FUEL")
        .output()
        .expect("lamw runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn normalize_identity() {
    let o = lamw(&["term", "normalize", "(\\x.x) (\\x.x)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "\\x.x");
}

#[test]
fn divergence_is_unknown() {
    let o = lamw(&["--fuel", "100", "term", "normalize", "Omega"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("fuel 100"));
}

#[test]
fn fuel_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_lamw"))
        .args(["--format", "json", "term", "normalize", "Omega"])
        .env("WORKBENCH_FUEL", "7")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["fuel"], 7);
}

#[test]
fn f_cycle_parity_restored() {
    let o = lamw(&[
        "--format", "json", "comb", "verify-f", "--iterations", "2", "--z", "I", "--a", "I", "--b",
        "\\x.\\y.x", "--c", "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["steps"], 16);
    assert_eq!(v["swapped"], false);
    assert_eq!(v["parity_ok"], true);
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(lamw(&["term", "frobnicate"]).status.code(), Some(3));
    assert_eq!(lamw(&["term", "normalize", "(\\x."]).status.code(), Some(3));
    assert_eq!(lamw(&["term", "normalize", "y"]).status.code(), Some(3));
    assert_eq!(lamw(&["suite", "run", "--filter", "11"]).status.code(), Some(3));
    assert_eq!(lamw(&["ord", "sum", "w+0"]).status.code(), Some(3));
}

#[test]
fn suite_json_is_deterministic() {
    let args = ["--format", "json", "--seed", "5", "suite", "run", "--filter", "7,8,9"];
    let a = lamw(&args);
    let b = lamw(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let ids: Vec<u64> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, [7, 8, 9]);
    assert!(v["checks"][0].get("wall_ms").is_none());
}

#[test]
fn failing_check_exits_1() {
    let o = lamw(&["suite", "run", "--filter", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn emitted_certificate_rechecks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.to_str().unwrap();
    assert_eq!(lamw(&["suite", "emit-cert", "--id", "9", "--out", p]).status.code(), Some(0));
    let o = lamw(&["proof", "check-endpiece", p]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    // one byte flipped inside a term string: parse error (3) or Fail (1)
    let text = std::fs::read_to_string(&path).unwrap();
    let at = text.find("\"premise_right\": \"").unwrap() + 18;
    let mut bytes = text.into_bytes();
    bytes[at] = if bytes[at] == b'(' { b'\\' } else { b'(' };
    std::fs::write(&path, bytes).unwrap();
    let code = lamw(&["proof", "check-endpiece", p]).status.code();
    assert!(matches!(code, Some(1) | Some(3)), "{code:?}");
}

#[test]
fn bogus_certificate_id() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("x.json");
    assert_eq!(lamw(&["suite", "emit-cert", "--id", "77", "--out", p.to_str().unwrap()]).status.code(), Some(3));
    assert!(!p.exists());
}

#[test]
fn ordinal_commands() {
    assert_eq!(stdout(&lamw(&["ord", "sum", "w+1", "w"])).trim(), "w*2 + 1");
    assert_eq!(stdout(&lamw(&["ord", "scale", "w+1", "2"])).trim(), "w*2 + 2");
    assert_eq!(stdout(&lamw(&["ord", "cmp", "w^(w)", "w^(2)*9"])).trim(), "w^(w) > w^(2)*9");
}

#[test]
fn sequence_and_numeral_commands() {
    let code = stdout(&lamw(&["seq", "encode", "3", "1"]));
    assert_eq!(stdout(&lamw(&["seq", "decode", code.trim()])).trim(), "<3, 1>");
    assert_eq!(stdout(&lamw(&["church", "--read", "\\f.\\x.f (f (f x))"])).trim(), "3");
    let idx = stdout(&lamw(&["godel", "encode", "K"]));
    assert_eq!(stdout(&lamw(&["godel", "decode", idx.trim()])).trim(), "\\x.\\y.x");
}
