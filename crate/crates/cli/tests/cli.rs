//! End-to-end tests of the binary: output formats, exit codes, and the
//! JSON schemas.

use std::path::Path;
use std::process::{Command, Output};

fn sl21(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl21"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

fn data(file: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(file)
        .display()
        .to_string()
}

#[test]
fn nf_prints_the_normal_form() {
    let out = sl21(&["nf", "x1:1 * xm1:1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "xm1:1 x1:1 + h1:1");
}

#[test]
fn nf_json_schema() {
    let out = sl21(&["nf", "xm1:1^(2)", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["coeff"], "1/2");
    assert_eq!(v[0]["mono"][0][0], "xm1");
    assert_eq!(v[0]["mono"][0][1], 0);
    assert_eq!(v[0]["mono"][0][2], 2);
}

#[test]
fn dim_matches_the_symmetrizer_rank() {
    let out = sl21(&["dim", "--m", "2", "--algebra", "trunc:1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "5");
    let out = sl21(&["dim", "--m", "2", "--algebra", "trunc:2"]);
    assert_eq!(stdout(&out), "19");
}

#[test]
fn dim_on_poly_needs_a_window() {
    let out = sl21(&["dim", "--m", "2", "--algebra", "poly"]);
    assert_eq!(out.status.code(), Some(1));
    let out = sl21(&["dim", "--m", "2", "--algebra", "poly", "--window", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "19");
}

#[test]
fn p_act_reports_the_signed_coordinate() {
    let out = sl21(&["p-act", "p({t:1},{},())", "--m", "1", "--algebra", "trunc:2", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["coeff"], "-1");
    assert_eq!(v[0]["index"]["phi1"]["t"], 1);
}

#[test]
fn basis_listing_is_deterministic() {
    let a = sl21(&["basis", "--m", "2", "--algebra", "trunc:2", "--json"]);
    let b = sl21(&["basis", "--m", "2", "--algebra", "trunc:2", "--json"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 19);
}

#[test]
fn verify_exit_codes() {
    let out = sl21(&["verify", "degp4", "--algebra", "trunc:2", "--max-size", "3"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("PASS degp4"));

    let out = sl21(&["verify", "no-such-check"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_json_report_schema() {
    let out = sl21(&["verify", "degp7", "--algebra", "trunc:1", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let report = &v[0];
    assert_eq!(report["check"], "degp7");
    assert!(report["instances"].as_u64().unwrap() > 0);
    assert_eq!(report["failures"].as_array().unwrap().len(), 0);
    assert!(report.get("ms").is_some());
    assert!(report.get("params").is_some());
}

#[test]
fn validate_table_accepts_and_rejects() {
    let out = sl21(&["validate-table", &data("z2_group_algebra.json")]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "valid");

    let out = sl21(&["validate-table", &data("trunc2_as_table.json")]);
    assert!(out.status.success());

    let out = sl21(&["validate-table", &data("broken_commutativity.json")]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("commutativity") && text.contains("g"), "{text}");
}

#[test]
fn table_algebra_works_end_to_end() {
    let spec = format!("table:{}", data("z2_group_algebra.json"));
    let out = sl21(&["nf", "x1:g * xm1:g", "--algebra", &spec]);
    assert!(out.status.success());
    // g * g = 1
    assert_eq!(stdout(&out), "xm1:g x1:g + h1:1");
}

#[test]
fn parse_errors_exit_1_with_position() {
    let out = sl21(&["nf", "x1:t +"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1:"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    let out = sl21(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sl21(&["dim"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_on_poly_reports_a_clean_error() {
    let out = sl21(&["verify", "degp1", "--algebra", "poly"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("finite"), "{err}");
}
