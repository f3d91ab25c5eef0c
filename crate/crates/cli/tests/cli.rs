use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arcalg")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn dim_of_k12() {
    let out = run(&["dim", "--n", "1", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["total"], 5);
    assert_eq!(v["graded"], json!({"0": 2, "1": 2, "2": 1}));
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn dim_of_h2() {
    let v = json_of(&run(&["dim", "--kind", "h", "--m", "2"]));
    assert_eq!(v["total"], 12);
}

#[test]
fn hh_of_k12_to_depth_three() {
    let out = run(&["hh", "--n", "1", "--m", "2", "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["ranks"], json!({"0": 2, "1": 0, "2": 0}));
    assert_eq!(v["certified"], json!([0, 2]));
}

#[test]
fn hh_with_braid_coefficients() {
    let v = json_of(&run(&["hh", "--n", "1", "--m", "2", "--coeff", "braid:1"]));
    assert_eq!(v["complete"], true);
    assert_eq!(v["total"], 2);
}

#[test]
fn uncertified_request_fails() {
    let out = run(&["hh", "--n", "2", "--m", "4", "--max-degree", "2", "--require-complete"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("truncation"));
}

#[test]
fn mult_scales() {
    let out = run(&["mult", "--n", "1", "--m", "2", "--x", r#"[[1,"v^:v^:v^"]]"#, "--y", r#"[["1/2","v^:v^:v^"]]"#]);
    assert_eq!(json_of(&out)["product"], json!([["1/2", "v^:v^:v^"]]));
}

#[test]
fn khovanov_of_trefoil() {
    let v = json_of(&run(&["kh", "--word", "1 1 1"]));
    assert_eq!(v["total"], 4);
    assert_eq!(v["euler"], json!({"1": 1, "3": 1, "5": 1, "9": -1}));
    let j = json_of(&run(&["jones", "--word", "1 1 1"]));
    assert_eq!(j["jones"], v["euler"]);
}

#[test]
fn akh_sectors() {
    let v = json_of(&run(&["akh", "--word", "-1"]));
    let totals: Vec<u64> = v["sectors"].as_array().unwrap().iter().map(|s| s["total"].as_u64().unwrap()).collect();
    assert_eq!(totals, [1, 2, 1]);
    assert_eq!(v["complete"], true);
}

#[test]
fn ss_check_passes_for_hopf_link() {
    let out = run(&["ss-check", "--word", "1 1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["pass"], true);
}

#[test]
fn prime_field() {
    let v = json_of(&run(&["--field", "2", "kh", "--word", "1 1 1"]));
    assert_eq!(v["field"], "F_2");
}

#[test]
fn verify_algebra_reports_the_cancelling_mismatch() {
    let small = run(&["verify", "--suite", "algebra", "--n-max", "2", "--m-max", "3"]);
    assert_eq!(small.status.code(), Some(0));
    let out = run(&["verify", "--suite", "algebra", "--n-max", "2", "--m-max", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    let failing: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["failures"].as_u64() != Some(0))
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["K(2,4): cancelling products"]);
}

#[test]
fn quick_suite_passes() {
    let out = run(&["verify", "--suite", "quick"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn output_is_reproducible() {
    let args = ["verify", "--suite", "algebra", "--n-max", "2", "--m-max", "5", "--seed", "7", "--samples", "500"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(run(&["verify", "--suite", "algebra", "--n-max", "2", "--m-max", "5", "--seed", "8", "--samples", "500"]).stdout, a.stdout);
}

#[test]
fn text_output() {
    let out = run(&["--output", "text", "dim", "--n", "1", "--m", "2"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.lines().any(|l| l == "total = 5"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--bogus"][..],
        &["--field", "4", "dim"],
        &["dim", "--n", "3", "--m", "2"],
        &["kh", "--word", "1 x"],
        &["hh", "--coeff", "sideways"],
        &["verify", "--suite", "nope"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}
