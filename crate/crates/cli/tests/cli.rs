use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn pmutl(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmutl")).current_dir(dir).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(dir: &Path, args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = pmutl(dir, &full);
    let v: Value = serde_json::from_str(&stdout(&out)).expect("one JSON object");
    (code(&out), v)
}

/// Checks the shape every report shares.
fn assert_report(v: &Value, exit: i32) {
    assert!(v["command"].as_array().unwrap().iter().all(Value::is_string));
    assert!(v["result"]["kind"].is_string());
    assert!(v["stats"].as_object().unwrap().values().all(Value::is_u64));
    assert_eq!(v["exit_code"], exit);
}

#[test]
fn check_on_the_intrusion_chain() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&pmutl(dir.path(), &["gen", "hacker", "10", "hacker10.mc"])), 0);
    let out = pmutl(dir.path(), &["check", "hacker10.mc", "s1", "nu Z.(!attacked & X[>=7/8] Z)"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("s1: holds"));
    let out = pmutl(dir.path(), &["check", "hacker10.mc", "s1", "--pctl", "F[>=1] attacked"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn false_fails_everywhere() {
    let dir = TempDir::new().unwrap();
    pmutl(dir.path(), &["gen", "mn", "1", "m1.mc"]);
    let (c, v) = json(dir.path(), &["check", "m1.mc", "s1", "false"]);
    assert_eq!(c, 1);
    assert_report(&v, 1);
    assert_eq!(v["result"]["kind"], "fails");
    assert_eq!(v["result"]["satisfying"], Value::Array(vec![]));
}

#[test]
fn state_defaults_to_the_initial_state() {
    let dir = TempDir::new().unwrap();
    pmutl(dir.path(), &["gen", "hacker", "10", "h.mc"]);
    let (c, v) = json(dir.path(), &["check", "h.mc", "!attacked"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["state"], "s1");
}

#[test]
fn sat_writes_a_witness_that_checks() {
    let dir = TempDir::new().unwrap();
    let f = "nu Z.(a & X[>=1] Z)";
    let out = pmutl(dir.path(), &["sat", f, "--witness", "w.mc"]);
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("w.mc").exists());
    assert_eq!(code(&pmutl(dir.path(), &["check", "w.mc", f])), 0);
}

#[test]
fn unsatisfiable_formulas_exit_one() {
    let dir = TempDir::new().unwrap();
    for f in ["a & !a", "mu Z. X[>=1] Z"] {
        let (c, v) = json(dir.path(), &["sat", f]);
        assert_eq!(c, 1, "{f}");
        assert_report(&v, 1);
        assert_eq!(v["result"]["kind"], "unsat");
    }
}

#[test]
fn translate_and_guard_print_formulas() {
    let dir = TempDir::new().unwrap();
    let out = pmutl(dir.path(), &["translate", "a U[>=1] b"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "nu Z1.(b | a & mu Z2.(b | X[>0] Z2) & X[>=1] Z1)");
    let out = pmutl(dir.path(), &["guard", "nu Z.(a & Z)"]);
    assert_eq!(stdout(&out).trim(), "a");
}

#[test]
fn gen_writes_a_parseable_chain() {
    let dir = TempDir::new().unwrap();
    let (c, v) = json(dir.path(), &["gen", "mprime", "2", "out.mc"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["kind"], "artifact");
    assert_eq!(v["stats"]["chain_states"], 3);
    assert_eq!(code(&pmutl(dir.path(), &["check", "out.mc", "nu Z.(a & X[>=1/2] Z)"])), 0);
    assert_eq!(code(&pmutl(dir.path(), &["gen", "thm4", "1/3,1/3,1/3", "t.mc"])), 0);
}

#[test]
fn bad_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let (c, v) = json(dir.path(), &["sat", "X[>=1/2"]);
    assert_eq!(c, 2);
    assert_report(&v, 2);
    assert_eq!(v["result"]["kind"], "error");
    assert_eq!(code(&pmutl(dir.path(), &["check", "missing.mc", "true"])), 2);
    assert_eq!(code(&pmutl(dir.path(), &["gen", "mn", "zero", "x.mc"])), 2);
    assert_eq!(code(&pmutl(dir.path(), &["frobnicate"])), 2);
}

#[test]
fn caps_exit_three() {
    let dir = TempDir::new().unwrap();
    let f = "nu Z1.(a | mu Z2.(a | X[>0] Z2) & X[>=1] Z1)";
    let (c, v) = json(dir.path(), &["sat", f, "--max-game-locations", "2"]);
    assert_eq!(c, 3);
    assert_eq!(v["result"]["stage"], "game");
    assert_eq!(code(&pmutl(dir.path(), &["sat", f, "--max-gadgets", "1"])), 3);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["sat", "nu Z.(a & X[>=4/5] Z)"][..],
        &["sat", "nu Z1.(a | mu Z2.(a | X[>0] Z2) & X[>=1] Z1)"],
        &["translate", "a U[>0] b"],
    ] {
        let a = stdout(&pmutl(dir.path(), &[&["--json"], args].concat()));
        let b = stdout(&pmutl(dir.path(), &[&["--json"], args].concat()));
        assert_eq!(a, b);
    }
}

#[test]
fn selftest_runs_one_criterion() {
    let dir = TempDir::new().unwrap();
    let (c, v) = json(dir.path(), &["selftest", "--only", "4"]);
    assert_eq!(c, 0);
    let criteria = v["result"]["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 1);
    assert_eq!(criteria[0]["passed"], true);
}
