use std::process::{Command, Output};

use serde_json::Value;
use triality_core::clifford::Signature;
use triality_core::emit::parse_basis;
use triality_core::representations::{same_structure_constants, vector_basis};

fn triality(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triality"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn euclidean_suite_passes() {
    let out = triality(&["verify", "--suite", "euclidean"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains(" 0 fail"));
    assert!(!text.contains("15-lorentz-hermiticity"));
}

#[test]
fn json_report_is_deterministic_and_complete() {
    let first = triality(&["verify", "--suite", "all", "--format", "json"]);
    let second = triality(&["verify", "--suite", "all", "--format", "json"]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let report: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(report["schema"], "triality-report/1");
    let ids: Vec<&str> = report["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["check_id"].as_str().unwrap())
        .collect();
    assert_eq!(ids.len(), 16);
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted);
    assert_eq!(report["summary"]["fail"], 0);
}

#[test]
fn negative_control_fails_one_check() {
    let out = triality(&["verify", "--suite", "lorentzian", "--format", "json", "--inject-fault", "t-sign"]);
    assert_eq!(code(&out), 1);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let failing: Vec<&str> = report["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "fail")
        .map(|r| r["check_id"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["05-triality-cycling"]);
}

#[test]
fn emitted_basis_round_trips() {
    let out = triality(&["emit", "--object", "vector", "--signature", "1,7"]);
    assert_eq!(code(&out), 0);
    let parsed = parse_basis(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let reference = vector_basis(Signature::LORENTZIAN).unwrap();
    assert_eq!(parsed, reference);
    assert!(same_structure_constants(&parsed, &reference).unwrap().equal);
}

#[test]
fn latex_vector_blocks() {
    let out = triality(&["emit", "--object", "vector", "--signature", "1,7", "--format", "latex"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("\\begin{pmatrix}").count(), 28);
}

#[test]
fn emit_is_byte_identical() {
    let a = triality(&["emit", "--object", "graded", "--signature", "8,0"]);
    let b = triality(&["emit", "--object", "graded", "--signature", "8,0"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn constraints_output() {
    let out = triality(&["g2", "--emit", "constraints"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["rank"], 28);
    assert_eq!(doc["relations"][6]["text"], "b_{2,3} = b_{4,5} + b_{6,7}");
    assert_eq!(doc["relations"][6]["dependent"], "b_{2,3}");
}

#[test]
fn map_s3_and_su3() {
    let out = triality(&["map", "--op", "H", "--from", "V"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["to"], "L");
    assert_eq!(doc["matches_reference"], true);

    let out = triality(&["s3", "--signature", "1,7"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["order"], 6);
    assert_eq!(doc["is_s3"], true);

    let out = triality(&["su3", "--check"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("triality-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.json");
    let out = triality(&["emit", "--object", "H", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"-1/2\""));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["emit", "--object", "nonsense"][..],
        &["emit", "--object", "H", "--signature", "1,7"],
        &["emit", "--object", "vector", "--signature", "4,4"],
        &["map", "--op", "K'", "--from", "V"],
        &["map", "--op", "H"],
        &["verify", "--suite", "both"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&triality(args)), 64, "{args:?}");
    }
    assert_eq!(code(&triality(&["--help"])), 0);
    assert_eq!(code(&triality(&["--version"])), 0);
}
