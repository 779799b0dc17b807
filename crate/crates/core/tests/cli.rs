use serde_json::Value;
use std::process::{Command, Output};

fn llct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_llct")).args(args).output().expect("run llct")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn exit_codes() {
    assert_eq!(llct(&["L", "--rep", "Sp(unr(1), 2)"]).status.code(), Some(0));
    assert_eq!(llct(&["L", "--rep", "Sp(unr(1), 2"]).status.code(), Some(2));
    assert_eq!(llct(&["nonsense"]).status.code(), Some(2));
    assert_eq!(llct(&["L", "--rep", "unr(1)", "--bogus"]).status.code(), Some(2));
    let domain = llct(&["gamma", "--rep", "tau(a, cond=1)"]);
    assert_eq!(domain.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&domain.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("dual"));
    // Ramified atoms have no matrix realization.
    assert_eq!(llct(&["oracle", "roundtrip", "--rep", "tau(a, cond=1)"]).status.code(), Some(3));
}

#[test]
fn uncertified_zeta_still_prints() {
    let out = llct(&["zeta", "--n1", "2", "--n2", "2", "--params", "2, 3", "--params2", "5, 7", "--m", "1", "--bound", "3"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["status"], "uncertified");
}

#[test]
fn q_changes_numbers() {
    let at = |q: &str| json(&llct(&["--q", q, "zeta", "--n1", "1", "--params", "2", "--m", "1", "--bound", "3"]));
    let z3 = at("3");
    assert_eq!(z3["l_inv"], "1 - 2/3*T");
    assert_eq!(z3["series"][2], "4/9");
    assert_eq!(at("5")["series"][3], "8/125");
    let rs = json(&llct(&["--q", "5", "rsL", "--rep", "unr(2)", "--rep2", "unr(3)", "--shift", "1"]));
    assert_eq!(rs["rs_L_inverse"], "1 - 6/5*T");
}

#[test]
fn json_keys_are_sorted() {
    let out = llct(&["classify", "--rep", "Sp(unr(1), 2)"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let keys: Vec<&str> = text.lines().filter(|l| l.starts_with("  \"")).map(|l| l.trim().split('"').nth(1).unwrap()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}
