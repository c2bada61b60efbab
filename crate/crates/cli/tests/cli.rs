use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_walgebra"))
        .args(args)
        .env("WALGEBRA_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let value = serde_json::from_slice(&out.stdout).expect("stdout is json");
    (value, out.status.code().unwrap())
}

#[test]
fn algebra_reports_condition_f() {
    let (v, code) = json(&["algebra"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "algebra");
    assert_eq!(v["dim"], 3);
    assert_eq!(v["condition_f"]["f2"], true);
}

#[test]
fn wgen_sl2_gives_virasoro_density() {
    let out = run(&["wgen", "--weight-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("h1^2 + 2*k * h1[1]"), "{text}");
    assert!(text.contains("generator weights: 2"));
}

#[test]
fn wgen_sl3_generator_weights() {
    let (v, code) = json(&["--type", "A2", "wgen", "--weight-max", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["generator_weights"], serde_json::json!(["2", "3"]));
}

#[test]
fn bracket_of_currents() {
    let out = run(&["bracket", "e1", "f1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "{e1 λ f1} = k * lambda + h1");
}

#[test]
fn axioms_pass_for_sl2() {
    let (v, code) = json(&["verify", "axioms", "--samples", "5"]);
    assert_eq!(code, 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn geometry_passes_for_sl2() {
    let (_, code) = json(&["verify", "geometry", "-N", "3"]);
    assert_eq!(code, 0);
}

#[test]
fn zero_y_fails_verification() {
    let out = run(&["verify", "geometry", "--y", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn hierarchy_commutes() {
    let (v, code) = json(&["hier"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "hier");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "nothing"]).status.code(), Some(2));
    assert_eq!(run(&["--type", "B3", "algebra"]).status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    let a = run(&["--format", "json", "--type", "A2", "wgen", "--weight-max", "3"]);
    let b = run(&["--format", "json", "--type", "A2", "wgen", "--weight-max", "3"]);
    assert_eq!(a.stdout, b.stdout);
}
