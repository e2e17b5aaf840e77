//! End-to-end checks of the binary: exit codes, formats, and coefficient
//! file loading.

use std::process::Command;

fn gl3sum(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gl3sum"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn eval_known_value_and_agreement() {
    let out = gl3sum(&["eval", "1", "1", "1", "1", "3", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("= 4"), "{text}");
    assert!(text.contains("agreement: true"), "{text}");
}

#[test]
fn exit_code_invalid_input() {
    let out = gl3sum(&["eval", "0", "1", "1", "1", "2", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown suite name
    let out = gl3sum(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    // transform coprimality violation
    let out = gl3sum(&["shat", "2", "0", "0", "1", "4", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_cap_exceeded() {
    let out = gl3sum(&["eval", "1", "1", "1", "1", "40", "40", "--cap", "1000"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_all_reduced_cap_passes() {
    let out = gl3sum(&["verify", "all", "--cap", "1e7", "--format", "text"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("beyond the cap skipped"), "{text}");
    assert!(text.contains("suite all: pass"), "{text}");
}

#[test]
fn experiment_empty_grid_emits_header_only() {
    let out = gl3sum(&["experiment", "theorem2", "--N", "", "--X", "4", "--trials", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1);
    assert!(lines[0].starts_with("n,x1,x2,"));
}

#[test]
fn experiment_csv_deterministic() {
    let run = || gl3sum(&["experiment", "theorem2", "--N", "4", "--X", "4,6", "--trials", "4", "--seed", "1"]);
    let (a, b) = (run(), run());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    // header + 2 grid points × 4 trials
    assert_eq!(text.lines().count(), 9, "{text}");
}

#[test]
fn coefficient_files_load() {
    let dir = std::env::temp_dir().join("gl3sum_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let alpha = dir.join("alpha.csv");
    let gamma = dir.join("gamma.csv");
    std::fs::write(&alpha, "index,re,im\n1,1.0,0.0\n2,-1.0,0.0\n").unwrap();
    std::fs::write(&gamma, "d1,d2,re,im\n1,1,1.0,0.0\n2,3,0.5,0.5\n").unwrap();
    let out = gl3sum(&[
        "experiment",
        "strata",
        "--N",
        "2",
        "--X1",
        "3",
        "--X2",
        "3",
        "--alpha",
        alpha.to_str().unwrap(),
        "--beta",
        alpha.to_str().unwrap(),
        "--gamma",
        gamma.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("total"), "{text}");

    // a gamma entry above modulus 1 must be rejected with exit 2
    let bad = dir.join("bad_gamma.csv");
    std::fs::write(&bad, "d1,d2,re,im\n1,1,2.0,0.0\n").unwrap();
    let out = gl3sum(&[
        "experiment",
        "strata",
        "--N",
        "2",
        "--X1",
        "3",
        "--X2",
        "3",
        "--gamma",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_file_written() {
    let dir = std::env::temp_dir().join("gl3sum_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("eval.json");
    let out = gl3sum(&[
        "eval", "1", "1", "1", "1", "15", "8", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["agreement"], true);
}
