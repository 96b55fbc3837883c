use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_compose-solve");

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&Path]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn run_str(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn final_example(dir: &TempDir) -> (PathBuf, PathBuf) {
    (
        write(dir, "h.txt", "# outer system\nY1 - Y2 - 1\n\nY2^2 + Y2\n"),
        write(dir, "g.txt", "X1 + X2\nX1*X2   # symmetric\n"),
    )
}

fn solve_json(h: &Path, g: &Path, extra: &[&str]) -> (Output, Value) {
    let mut args = vec!["solve", h.to_str().unwrap(), g.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = run_str(&args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out, v)
}

#[test]
fn final_example_has_four_solutions() {
    let dir = TempDir::new().unwrap();
    let (h, g) = final_example(&dir);
    let (out, v) = solve_json(&h, &g, &["--verify"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(v["count"], 4);
    assert_eq!(v["P"].as_array().unwrap().len(), 5);
    assert_eq!(v["W"].as_array().unwrap().len(), 2);
    assert_eq!(v["prime"], "2305843009213693951");
    assert_eq!(v["verified"], true);
    for key in ["prime", "lambda", "P", "W", "count", "warnings", "stage_timings", "verified"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn identity_has_one_solution() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.txt", "Y1\nY2\n");
    let g = write(&dir, "g.txt", "X1\nX2\n");
    let (out, v) = solve_json(&h, &g, &[]);
    assert!(out.status.success());
    assert_eq!(v["count"], 1);
}

#[test]
fn unknown_variable_exits_one() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.txt", "Y1\nY2\n");
    let g = write(&dir, "g.txt", "X1 + Z9\nX2\n");
    let (out, _) = solve_json(&h, &g, &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Z9"));
}

#[test]
fn bad_prime_and_missing_file_exit_one() {
    let dir = TempDir::new().unwrap();
    let (h, g) = final_example(&dir);
    let (out, _) = solve_json(&h, &g, &["--prime", "1000"]);
    assert_eq!(out.status.code(), Some(1));
    let (out, _) = solve_json(&h, &dir.path().join("nope.txt"), &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exhausted_randomness_exits_two() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.txt", "Y1^2 + Y2 - 1\nY2^2 - Y1 - 1\n");
    let g = write(&dir, "g.txt", "X1^2 + X2\nX1*X2 + 1\n");
    // over F_3 the random choices keep colliding
    let (out, _) = solve_json(&h, &g, &["--prime", "3", "--retries", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (h, g) = final_example(&dir);
    let a = solve_json(&h, &g, &["--seed", "7"]).0.stdout;
    let b = solve_json(&h, &g, &["--seed", "7"]).0.stdout;
    assert_eq!(a, b);
}

#[test]
fn small_prime_and_text_format() {
    let dir = TempDir::new().unwrap();
    let (h, g) = final_example(&dir);
    let out = run_str(&["solve", h.to_str().unwrap(), g.to_str().unwrap(), "--prime", "1009", "--format", "text", "--retries", "20"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("prime 1009\ncount 4\n"), "{text}");
}

fn verify(record: &Value, dir: &TempDir, h: &Path, g: &Path) -> Output {
    let rec = write(dir, "rec.json", &record.to_string());
    run(&[Path::new("verify"), &rec, h, g])
}

#[test]
fn verify_round_trip_and_tampering() {
    let dir = TempDir::new().unwrap();
    let (h, g) = final_example(&dir);
    let (_, rec) = solve_json(&h, &g, &[]);

    let out = verify(&rec, &dir, &h, &g);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(out.status.success(), "{text}");
    assert_eq!(text.matches(": pass").count(), 4);

    // flip one W coefficient
    let mut bad = rec.clone();
    let c: u64 = bad["W"][0][1].as_str().unwrap().parse().unwrap();
    bad["W"][0][1] = Value::String(((c + 1) % 2305843009213693951).to_string());
    let out = verify(&bad, &dir, &h, &g);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert_eq!(out.status.code(), Some(3));
    assert!(text.contains("residual: fail"), "{text}");

    // P = (S - 1)^2
    let mut bad = rec.clone();
    bad["P"] = serde_json::json!(["1", "2305843009213693949", "1"]);
    bad["count"] = Value::from(2);
    bad["W"] = serde_json::json!([["0"], ["0"]]);
    let out = verify(&bad, &dir, &h, &g);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert_eq!(out.status.code(), Some(3));
    assert!(text.contains("squarefree: fail"), "{text}");
}

#[test]
fn malformed_record_exits_one() {
    let dir = TempDir::new().unwrap();
    let (h, g) = final_example(&dir);
    let (_, rec) = solve_json(&h, &g, &[]);
    let mut bad = rec.clone();
    bad["count"] = Value::from(9);
    let out = verify(&bad, &dir, &h, &g);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed record"));
    let junk = write(&dir, "junk.json", "{\"prime\": 5");
    let out = run(&[Path::new("verify"), &junk, &h, &g]);
    assert_eq!(out.status.code(), Some(1));
}
