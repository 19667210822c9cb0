use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mbf")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["compare", "ratio", "--d", "5"]).0, 0);
    assert_eq!(run(&["fusing", "--d", "1"]).0, 2);
    assert_eq!(run(&["cft", "sixj", "--k", "2", "--labels", "1,1,0"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    // An absurd tolerance makes the comparison fail without being a usage error.
    assert_eq!(run(&["compare", "ratio", "--d", "5", "--tol=-1"]).0, 1);
}

#[test]
fn reports_are_deterministic_json() {
    let args = ["cft", "spectrum", "--d", "5", "--u", "1", "--chiral"];
    let (code, a) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(a, run(&args).1);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["tool"], "mbf");
    assert_eq!(v["pass"], true);
    assert!(v["checks"].is_array() && v["result"].is_object());
}

#[test]
fn sixj_table_is_csv() {
    let (code, out) = run(&["cft", "sixj", "--k", "1"]);
    assert_eq!(code, 0);
    assert!(out.lines().next().unwrap().contains(','));
    assert!(out.lines().count() > 1);
}
