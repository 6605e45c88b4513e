use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const K0: &str = "object,m1,m2\ng1,1,0.6\ng2,0.3,0\n";

const MODEL: &str = r#"{
  "objects": ["g1", "g2"],
  "attributes": ["m1", "m2"],
  "incidence": [["1", "0.6"], ["0.3", "0"]],
  "valuation": { "objects": { "p": ["g1"] }, "properties": { "q": ["m1"] } }
}"#;

const MULTI: &str = r#"{
  "objects": ["g1", "g2"],
  "attributes": ["m1", "m2"],
  "relations": { "a": [["1", "0.6"], ["0.3", "0"]], "b": [["0", "1"], ["1", "1/2"]] },
  "valuation": { "objects": {}, "properties": { "q": ["m1"] } }
}"#;

fn possfca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_possfca")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = possfca(&full);
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&out)));
    (out.status.code().unwrap(), value)
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn concepts_of_k0() {
    let dir = TempDir::new().unwrap();
    let k0 = write(&dir, "k0.csv", K0);
    let (code, v) = json(&["concepts", s(&k0), "--flavor", "formal", "--cut", "3/5"]);
    assert_eq!(code, 0);
    let concepts = v["concepts"].as_array().unwrap();
    assert_eq!(concepts.len(), 2);
    assert_eq!(concepts[0]["extent"], serde_json::json!(["g1"]));
    assert_eq!(concepts[0]["intent"], serde_json::json!(["m1", "m2"]));
    assert_eq!(concepts[1]["extent"], serde_json::json!(["g1", "g2"]));

    let dot = stdout(&possfca(&["concepts", s(&k0), "--cut", "0.6", "--dot"]));
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=").count(), 2);
    assert_eq!(dot.matches("->").count(), 1);
}

#[test]
fn model_checking() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", MODEL);
    let (code, v) = json(&["check", "--model", s(&m), "--sort", "o", "--formula", "[0]_p q"]);
    assert_eq!((code, v["holds"].as_bool()), (0, Some(true)));

    // N_g1({m1}) = 1 - 0.6, N_g2({m1}) = 1.
    let (code, v) = json(&["check", "--model", s(&m), "--sort", "o", "--formula", "[0.5]_p q"]);
    assert_eq!(code, 1);
    assert_eq!(v["truth_set"], serde_json::json!(["g2"]));
    let out = possfca(&["check", "--model", s(&m), "--sort", "o", "--world", "g2", "--formula", "[0.5]_p q"]);
    assert_eq!(out.status.code(), Some(0));

    let mm = write(&dir, "mm.json", MULTI);
    let (code, v) = json(&["check", "--model", s(&mm), "--sort", "o", "--formula", "[0.5]_p^(a | b) q"]);
    assert_eq!(code, 1);
    assert_eq!(v["truth_set"], serde_json::json!(["g2"]));
}

#[test]
fn local_consequence() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", MODEL);
    let (code, _) = json(&["consequence", "--model", s(&m), "--sort", "o", "--premise", "[1]_p q", "--formula", "[0.5]_p q"]);
    assert_eq!(code, 0);
    let (code, v) = json(&["consequence", "--model", s(&m), "--sort", "o", "--premise", "p", "--formula", "[0.5]_p q"]);
    assert_eq!(code, 1);
    assert!(!v["counterexample"].is_null());
}

#[test]
fn proof_scripts() {
    let dir = TempDir::new().unwrap();
    let global = write(&dir, "ug.txt", "@ug global\n@p q\n1. q ; premise\n2. [1]_p q ; ug-nec 1\n");
    let (code, v) = json(&["prove", "--script", s(&global)]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["conclusion"], "[1]_p q");

    let local = write(&dir, "local.txt", "@p q\n1. q ; premise\n2. [1]_p q ; ug-nec 1\n");
    let (code, v) = json(&["prove", "--script", s(&local)]);
    assert_eq!(code, 1);
    assert_eq!(v["line"], 2);

    let out = possfca(&["prove", "--script", s(&global), "--system", "2WKF"]);
    assert_eq!(out.status.code(), Some(1));
    let out = possfca(&["prove", "--script", s(&global), "--system", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn translation() {
    let out = possfca(&["translate", "--dir", "suff2nec", "--formula", "[[0.4]]_p q"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "[0.4]_p !q");
    let out = possfca(&["translate", "--dir", "nec2suff", "--formula", "[0.4]_p !q"]);
    assert_eq!(stdout(&out).trim(), "[[0.4]]_p !!q");

    let dir = TempDir::new().unwrap();
    let script = write(&dir, "kf.txt", "@p q\n1. ![[1+]]_p q ; ax BK6a phi=q\n2. [[1]]_o [[1+]]_p q ; ug-suff 1\n");
    let out = possfca(&["translate", "--dir", "suff2nec", "--script", s(&script)]);
    assert_eq!(out.status.code(), Some(0));
    let translated = write(&dir, "kb.txt", &stdout(&out));
    let (code, v) = json(&["prove", "--script", s(&translated), "--system", "2WKB"]);
    assert_eq!(code, 0, "{v}");
}

#[test]
fn bounded_search() {
    let (code, v) = json(&["sat", "--formula", "[1/2]_p q & !<1/2+>_p !q", "--max-g", "2", "--max-m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["found"], true);
    let (code, v) = json(&["sat", "--formula", "[1+]_p q"]);
    assert_eq!(code, 1);
    assert_eq!(v["found"], false);
    let (code, v) = json(&["sat", "--sort", "p", "--formula", "[[0.5]]_o p"]);
    assert_eq!(code, 0, "{v}");
}

#[test]
fn fuzzing_is_reproducible() {
    let a = possfca(&["--format", "json", "fuzz", "--trials", "40", "--seed", "11"]);
    let b = possfca(&["--format", "json", "fuzz", "--trials", "40", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 11);

    let env = Command::new(env!("CARGO_BIN_EXE_possfca"))
        .args(["--format", "json", "fuzz", "--trials", "40"])
        .env("POSSFCA_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);

    let multi = possfca(&["fuzz", "--multi", "--trials", "20"]);
    assert_eq!(multi.status.code(), Some(0));
}

#[test]
fn index_equality() {
    assert_eq!(possfca(&["za-eq", "~~a", "a"]).status.code(), Some(0));
    assert_eq!(possfca(&["za-eq", "a | b", "b | a"]).status.code(), Some(0));
    assert_eq!(possfca(&["za-eq", "a & ~a", "0"]).status.code(), Some(1));
    assert_eq!(possfca(&["za-eq", "a & (", "0"]).status.code(), Some(2));
}

#[test]
fn errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", MODEL);
    let out = possfca(&["check", "--model", s(&m), "--sort", "o", "--formula", "[0_p q"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at byte"));
    let bad = write(&dir, "bad.csv", "object,m1\ng1,1.5\n");
    assert_eq!(possfca(&["concepts", s(&bad), "--cut", "0.5"]).status.code(), Some(2));
    assert_eq!(possfca(&["concepts", "/nonexistent.csv", "--cut", "0.5"]).status.code(), Some(2));
    assert_eq!(possfca(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn conversion_round_trips() {
    let dir = TempDir::new().unwrap();
    let k0 = write(&dir, "k0.csv", K0);
    let as_json = stdout(&possfca(&["convert", s(&k0), "--to", "json"]));
    let j = write(&dir, "k0.json", &as_json);
    let back = stdout(&possfca(&["convert", s(&j), "--to", "csv"]));
    assert_eq!(back, K0);
    let mm = write(&dir, "mm.json", MULTI);
    assert_eq!(possfca(&["convert", s(&mm), "--to", "csv"]).status.code(), Some(2));
}
