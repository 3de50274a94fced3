use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_barcode-strata"))
        .args(args)
        .env_remove("BARCODE_STRATA_CAP")
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn analyze_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "b.csv", "# bars\n1,10\n2,5\n4,5\n4,7\n");
    let v = ok_json(&["analyze", "--enumerate-dc", &f]);
    assert_eq!(v["n"], 4);
    assert_eq!(v["P_b"], serde_json::json!([3]));
    assert_eq!(v["P_d"], serde_json::json!([1]));
    assert_eq!(v["tau_d"], serde_json::json!([2, 3, 4, 1]));
    assert_eq!(v["double_coset_rep"], serde_json::json!([2, 3, 4, 1]));
    assert_eq!(
        v["double_coset_elements"],
        serde_json::json!([[2, 3, 4, 1], [2, 4, 3, 1], [3, 2, 4, 1], [4, 2, 3, 1]])
    );
    assert_eq!(v["strict"], false);
    assert!(v.get("sigma").is_none());
    assert_eq!(v["mean_birth"], 2.75);
}

#[test]
fn analyze_strict_and_single() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "b.json", "[[3,4],[1,7],[0,5],[2,6]]");
    let v = ok_json(&["analyze", &f]);
    assert_eq!(v["sigma"], serde_json::json!([4, 1, 3, 2]));
    assert_eq!(v["tau_b"], serde_json::json!([3, 2, 4, 1]));
    assert_eq!(v["strict"], true);
    assert!(v.get("double_coset_elements").is_none());
    let f = write(dir.path(), "one.csv", "0,1\n");
    let v = ok_json(&["analyze", &f]);
    assert_eq!(v["sigma"], serde_json::json!([1]));
    assert_eq!(v["P_b"], serde_json::json!([]));
    assert_eq!(v["dev_birth"], 0.0);
}

#[test]
fn analyze_respects_cap() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "b.csv", "0,1\n0,1\n0,1\n");
    let out = Command::new(env!("CARGO_BIN_EXE_barcode-strata"))
        .args(["analyze", "--enumerate-dc", &f])
        .env("BARCODE_STRATA_CAP", "10")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.get("double_coset_elements").is_none());
    assert!(v["double_coset_size"].is_string());
    let v = ok_json(&["analyze", "--enumerate-dc", &f]);
    assert_eq!(v["double_coset_elements"].as_array().unwrap().len(), 6);
}

#[test]
fn errors_are_structured() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.csv", "0,1\n3,2\n");
    let out = run(&["analyze", &bad]);
    assert!(!out.status.success());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "parse");
    assert!(err["message"].as_str().unwrap().contains("line 2"));
    let out = run(&["analyze", dir.path().join("missing.csv").to_str().unwrap()]);
    assert!(!out.status.success());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "io");
    let a = write(dir.path(), "a.csv", "0,1\n");
    let b = write(dir.path(), "b.csv", "0,1\n0,2\n");
    assert!(!run(&["dist", &a, &b]).status.success());
    assert!(!run(&["--tol", "-1", "stratum", &a]).status.success());
    assert!(!run(&["complex", "--n", "9"]).status.success());
}

#[test]
fn dist_single_bar() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.csv", "0,1\n");
    let b = write(dir.path(), "b.csv", "2,5\n");
    let v = ok_json(&["dist", "--metric", "bottleneck", &a, &b]);
    assert_eq!(v["distance"], 4.0);
    assert_eq!(v["matching"], serde_json::json!([1]));
    let v = ok_json(&["dist", "--metric", "wasserstein", &a, &b]);
    assert_eq!(v["distance"], 20f64.sqrt());
}

#[test]
fn dist_matrix_csv() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.csv", "0,1\n2,3\n");
    write(dir.path(), "b.json", "[[0,1],[2,4]]");
    write(dir.path(), "c.csv", "2,3\n0,1\n");
    write(dir.path(), "notes.txt", "ignored");
    let out = run(&[
        "dist-matrix",
        "--metric",
        "bottleneck",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "file,a.csv,b.json,c.csv\na.csv,0,1,0\nb.json,1,0,1\nc.csv,0,1,0\n"
    );
}

#[test]
fn stratum_and_compare() {
    let dir = tempfile::tempdir().unwrap();
    let tied = write(dir.path(), "t.csv", "1,10\n2,5\n4,5\n4,7\n");
    let v = ok_json(&["stratum", &tied]);
    assert_eq!(
        v,
        serde_json::json!({"left_generators": [3], "rep": [2, 3, 4, 1], "right_generators": [1], "dim_pair": [1, 1]})
    );
    // break the ties by a small perturbation
    let strict = write(dir.path(), "s.csv", "1,10\n2,5\n4,5.001\n4.001,7\n");
    let cmp = |a: &str, b: &str| String::from_utf8(run(&["stratum-compare", a, b]).stdout).unwrap();
    assert_eq!(cmp(&tied, &strict), "leq\n");
    assert_eq!(cmp(&strict, &tied), "geq\n");
    assert_eq!(cmp(&tied, &tied), "equal\n");
    let other = write(dir.path(), "o.csv", "1,2\n2,3\n3,4\n4,5\n");
    assert_eq!(cmp(&strict, &other), "incomparable\n");
}

#[test]
fn complex_counts() {
    let v = ok_json(&["complex", "--n", "4"]);
    assert_eq!(v["f_vector"], serde_json::json!([1, 14, 36, 24]));
    assert_eq!(v["euler_characteristic"], 2);
    assert_eq!(v["faces"].as_array().unwrap().len(), 75);
}

#[test]
fn gen_is_deterministic() {
    let a = run(&["gen", "--n", "5", "--seed", "42", "--strict"]);
    let b = run(&["gen", "--n", "5", "--seed", "42", "--strict"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["gen", "--n", "5", "--seed", "43"]);
    assert_ne!(a.stdout, c.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    for line in text.lines() {
        let (b, d) = line.split_once(',').unwrap();
        let (b, d): (f64, f64) = (b.parse().unwrap(), d.parse().unwrap());
        assert!((0.0..1.0).contains(&b) && b < d && d <= b + 1.0);
    }
    let j = ok_json(&["gen", "--n", "2", "--format", "json"]);
    assert_eq!(j.as_array().unwrap().len(), 2);
    assert!(!run(&["gen", "--n", "0"]).status.success());
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "b.csv", "1,10\n2,5\n4,5\n4,7\n");
    for args in [
        vec!["analyze", "--enumerate-dc", &f],
        vec!["complex", "--n", "3"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}
