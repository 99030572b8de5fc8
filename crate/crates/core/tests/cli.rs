mod common;

use std::process::{Command, Output};

use common::config_path;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scheme-forge"))
        .args(args)
        .env("SCHEME_FORGE_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn cfg(name: &str) -> String {
    config_path(name).to_string_lossy().into_owned()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_reports_symmetric_scheme() {
    let out = run(&["check", &cfg("hamming2_f2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "symmetric_scheme");
    assert_eq!(v["d"], 2);
    assert_eq!(v["valencies"], serde_json::json!([1, 2, 1]));
}

#[test]
fn check_reports_negation_witness() {
    let out = run(&["check", &cfg("sym2_f3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "commutative_non_symmetric");
    assert_eq!(v["condition_4"], false);
    assert_eq!(v["condition_6_pairing"], serde_json::json!([0, 2, 1, 3, 4]));
}

#[test]
fn dual_pass_and_fail_exit_codes() {
    let ok = run(&["dual", &cfg("hamming2_f2.json")]);
    assert_eq!(ok.status.code(), Some(0));
    let v = stdout_json(&ok);
    assert_eq!(v["status"], "self-dual");
    assert_eq!(v["pass"], true);

    let fail = run(&["dual", &cfg("sym2_f3.json")]);
    assert_eq!(fail.status.code(), Some(1));
    assert_eq!(stdout_json(&fail)["pass"], false);
}

#[test]
fn cross_dual_pair() {
    let out = run(&["dual", &cfg("wh21_f2.json"), &cfg("wh12_f2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["mode"], "cross");
    assert_eq!(v["status"], "dual pair");
}

#[test]
fn usage_and_domain_errors_exit_2() {
    assert_eq!(run(&["check", &cfg("cyclo_f7_bad.json")]).status.code(), Some(2));
    assert_eq!(run(&["check", "/nonexistent/config.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let mismatch = run(&["dual", &cfg("hamming2_f2.json"), &cfg("cyclo_f5.json")]);
    assert_eq!(mismatch.status.code(), Some(2));
    assert!(!mismatch.stderr.is_empty());
}

#[test]
fn resource_bounds_exit_3() {
    assert_eq!(run(&["build", &cfg("hamming4_f3.json"), "--matrix-bound", "16"]).status.code(), Some(3));
    assert_eq!(run(&["check", &cfg("hamming4_f3.json"), "--size-bound", "16"]).status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["build".to_string(), cfg("bil22_f2.json")],
        vec!["dual".to_string(), cfg("cyclo_f5.json")],
        vec!["dual".to_string(), cfg("wh11_f2.json")],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_file_and_tables() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = run(&["dual", &cfg("cyclo_f5.json"), "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cert["self_dual"], true);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("matrix\trow\tcol\texact\tapprox")));
    assert!(text.lines().any(|l| l.starts_with("Q\t1\t1\t")));

    let build_path = dir.path().join("scheme.json");
    let out = run(&["build", &cfg("hamming2_f2.json"), "--out", build_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let scheme: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&build_path).unwrap()).unwrap();
    assert_eq!(scheme["p_tensor"][0][0][0], 1);
}
