//! End-to-end tests for the compiled binary: exit codes, text output shape,
//! and typed JSON round-trips.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde::{Deserialize, Serialize};
use submod_core::harness::{Status, TheoremReport};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_submod-lab"))
}

fn write_input(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("submod-lab-test-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[derive(Serialize, Deserialize)]
struct VerifyOutput {
    reports: Vec<TheoremReport>,
}

#[test]
fn enumerate_cyclic_six() {
    let inp = write_input("z6", "ring 6\nmodule 6:1\n");
    let out = bin().args(["enumerate", "--input"]).arg(&inp).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("ring Z/6 (order 6)"));
    assert!(text.contains("ideals (4):"));
    assert!(text.contains("submodules (4):"));
}

#[test]
fn enumerate_product_module() {
    let inp = write_input("z6xz6", "ring 6 6\nmodule 6:1 6:2\n");
    let out = bin().args(["enumerate", "--input"]).arg(&inp).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("module order 36"));
    assert!(text.contains("submodules (16):"));
}

#[test]
fn classify_product_example_with_fullm() {
    let inp = write_input("e-prod", "ring 6 6\nmodule 6:1 6:2\nsub gen (1,0)\n");
    let out = bin()
        .args(["classify", "--psi", "fullM", "--input"])
        .arg(&inp)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("<(1,0)>"));
    assert!(text.contains("second=no weak_second=no"));
    assert!(text.contains("def=no"));
    assert!(text.contains("witness["));
    assert!(text.contains("1 rows, 0 core-method disagreements"));
}

#[test]
fn classify_cyclic_eight_with_psi_one() {
    let inp = write_input("z8", "ring 8\nmodule 8:1\n");
    let out = bin()
        .args(["classify", "--psi", "psi:1", "--input"])
        .arg(&inp)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // M itself is psi1-second but not second over Z/8
    assert!(text
        .lines()
        .any(|l| l.starts_with("M ") && l.contains("second=no") && l.contains("def=yes")));
    assert!(text.contains("0 core-method disagreements"));
}

#[test]
fn classify_json_is_typed() {
    let inp = write_input("z4", "ring 4\nmodule 4:1\n");
    let out = bin()
        .args(["classify", "--psi", "zero,sigma", "--emit", "json", "--input"])
        .arg(&inp)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["module_order"], 4);
    assert_eq!(v["disagreements"], 0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4); // 2 nonzero subs x 2 psi
}

#[test]
fn bad_psi_tag_is_an_input_error() {
    let inp = write_input("z6b", "ring 6\nmodule 6:1\n");
    let out = bin()
        .args(["classify", "--psi", "psi:x", "--input"])
        .arg(&inp)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn missing_input_file_is_an_input_error() {
    let out = bin()
        .args(["enumerate", "--input", "/nonexistent/wb.txt"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["enumerate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_reports_the_line() {
    let inp = write_input("bad", "ring 6\nmodule 6:1\nsub gen (1,2)\n");
    let out = bin().args(["enumerate", "--input"]).arg(&inp).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn unknown_theorem_id_is_an_input_error() {
    let out = bin()
        .args(["verify", "--theorem", "t9.99", "--max-module-order", "6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown theorem id"));
}

#[test]
fn verify_single_theorem_on_small_catalog() {
    let out = bin()
        .args(["verify", "--theorem", "t2.13", "--max-module-order", "9"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("t2.13"));
    assert!(text.contains("verified"));
}

#[test]
fn verify_all_json_round_trips() {
    let out = bin()
        .args(["verify", "--max-module-order", "6", "--emit", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let parsed: VerifyOutput = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.reports.len(), 14);
    assert!(parsed.reports.iter().all(|r| r.status != Status::Violated));
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), text.trim_end());
}

#[test]
fn verify_output_is_deterministic() {
    let run = || {
        bin()
            .args(["verify", "--theorem", "t2.3", "--max-module-order", "8", "--emit", "json"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
