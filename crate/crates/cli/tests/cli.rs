use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn altbase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altbase"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_altbase"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn decimal(v: &Value) -> f64 {
    v["decimal"].as_str().unwrap().parse().unwrap()
}

#[test]
fn validate_exit_codes() {
    let ok = altbase(&["validate", "-p", "2", "(21)", "(12)"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(json(&ok)["parry"]["ok"], true);

    let bad = altbase(&["validate", "-p", "1", "120(0)"]);
    assert_eq!(code(&bad), 1);
    let v = &json(&bad)["parry"]["violations"][0];
    assert_eq!(v["j"], 1);

    assert_eq!(code(&altbase(&["validate", "-p", "1", "(2x)"])), 2);
    assert_eq!(code(&altbase(&["validate", "-p", "3", "(21)", "(12)"])), 2);
}

#[test]
fn synthesize_examples() {
    let o = altbase(&["synthesize", "-p", "2", "(21)", "(12)"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    // displayed as β_1, β_0
    let betas = v["base"]["betas"].as_array().unwrap();
    assert_eq!(decimal(&betas[0]["lo"]), 3.0);
    assert_eq!(decimal(&betas[1]["hi"]), 2.0);
    assert!(v["width_log2"].is_null() || v["width_log2"].as_i64().unwrap() <= -64);

    let o = altbase(&["synthesize", "-p", "1", "(1)", "--format", "text"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("beta_0 = [2.0, 2.0]"));

    let o = altbase(&["synthesize", "-p", "1", "(21)", "--tol", "80"]);
    let v = json(&o);
    assert!(v["width_log2"].as_i64().unwrap() <= -80);
    let b = &v["base"]["betas"][0];
    let target = 1.0 + 3f64.sqrt();
    assert!((decimal(&b["lo"]) - target).abs() < 1e-12);
    assert_eq!(v["certificate"]["uniqueness"], "UniqueByUP");
}

#[test]
fn synthesize_failures() {
    assert_eq!(code(&altbase(&["synthesize", "-p", "1", "120(0)"])), 1);
    assert_eq!(code(&altbase(&["synthesize", "-p", "1", "(21)", "--tol", "4"])), 2);
    let o = altbase(&["synthesize", "-p", "1", "(21)", "--depth", "12", "--tol", "40"]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["general"]["converged"], false);
    let o = altbase(&["synthesize", "-p", "1", "(21)", "--depth", "200", "--tol", "40"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["general"]["converged"], true);
}

#[test]
fn stdin_words() {
    let o = with_stdin(&["synthesize", "-", "--format", "text"], "(21)\n(12)\n");
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("beta_1 = [3.0, 3.0]"));
}

#[test]
fn code_examples() {
    let o = altbase(&["code", "--directive", "1,1", "--len", "13"]);
    assert_eq!(stdout(&o).trim(), "0100101001001");
    let o = altbase(&["code", "--directive", "1,1,1", "--len", "7", "--check"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "0102010\nagree\n");
    let o = altbase(&["code", "--base", "(2)", "--len", "5"]);
    assert_eq!(stdout(&o).trim(), "00000");
    let o = altbase(&["code", "--directive", "2,2", "--len", "4", "--sep", ","]);
    assert_eq!(stdout(&o).trim(), "0,0,1,0");
    let o = altbase(&["code", "--base", "(21)", "(12)", "--len", "40", "--check", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["agree"], true);
    assert_eq!(code(&altbase(&["code", "--directive", "1,2", "--len", "5"])), 2);
}

#[test]
fn deterministic_output() {
    let args = ["code", "--directive", "3,1;1,1", "--len", "50", "--check", "--format", "json"];
    assert_eq!(altbase(&args).stdout, altbase(&args).stdout);
    let args = ["synthesize", "-p", "2", "2(01)", "(2)"];
    assert_eq!(altbase(&args).stdout, altbase(&args).stdout);
}

#[test]
fn json_matches_shipped_schema() {
    let schema: Value =
        serde_json::from_str(include_str!("../schema/output.schema.json")).expect("schema parses");
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let runs: [&[&str]; 7] = [
        &["validate", "-p", "2", "(21)", "(12)"],
        &["validate", "120(0)"],
        &["synthesize", "-p", "2", "(21)", "(12)"],
        &["synthesize", "2(01)", "(2)"],
        &["synthesize", "(21)", "--depth", "200", "--tol", "40"],
        &["synthesize", "(21)", "--depth", "12", "--tol", "40"],
        &["code", "--directive", "3,1;1,1", "--len", "30", "--check", "--format", "json"],
    ];
    for args in runs {
        let v = json(&altbase(args));
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    let bogus = serde_json::json!({ "command": "code", "word": 3 });
    assert!(!validator.is_valid(&bogus));
}
