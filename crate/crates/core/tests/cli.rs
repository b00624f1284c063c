//! Runs the binary and pins exit codes and golden text reports.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacdecomp"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn golden(name: &str, args: &[&str], code: i32) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    let text = stdout(&out);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).expect("write golden");
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(text, expected, "golden file {name} differs");
}

#[test]
fn golden_dihedral_q3() {
    golden("d2q-q3.txt", &["analyze", "d2q?q=3"], 2);
}

#[test]
fn golden_dihedral_q5() {
    golden("d2q-q5.txt", &["analyze", "d2q?q=5"], 2);
}

#[test]
fn golden_dihedral_q7() {
    golden("d2q-q7.txt", &["analyze", "d2q?q=7"], 2);
}

#[test]
fn golden_fiber_two() {
    golden("fiber-1-1.txt", &["fiber", "--genera", "1,1"], 0);
}

#[test]
fn golden_fiber_three() {
    golden("fiber-1-1-1.txt", &["fiber", "--genera", "1,1,1"], 0);
}

#[test]
fn golden_dihedral_partition() {
    golden("theorem-b-d2q-q3.txt", &["theorem-b", "d2q?q=3"], 0);
}

#[test]
fn main_collection_is_clean() {
    let out = run(&["analyze", "d2q?q=3", "--collections", "main"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("with dim P = 0 (full)"));
}

#[test]
fn fiber_plan_exit_zero() {
    let out = run(&["fiber", "--genera", "1,1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["fiber"]["genus"], 5);
    assert_eq!(v["fiber"]["dim_p"], 3);
}

#[test]
fn join_discrepancy_exits_two() {
    let out = run(&["analyze", "d2q?q=3", "--collections", "h1h4", "--ambient", "join"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("DISCREPANCY [h1h4]"));
}

#[test]
fn user_errors_exit_one() {
    for args in [
        vec!["frobnicate"],
        vec!["analyze"],
        vec!["analyze", "d2q?q=4"],
        vec!["analyze", "d2q?q=3", "--collections", "missing"],
        vec!["analyze", "nonexistent.json"],
        vec!["fiber", "--genera", "1"],
        vec!["fiber", "--genera", "1,0"],
        vec!["analyze", "d2q?q=3", "--schur", "9=2"],
        vec!["analyze", "d2q?q=3", "--format", "yaml"],
        vec!["chartable", "symmetric?n=5", "--max-order", "60"],
    ] {
        assert_eq!(run(&args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn chartable_and_search_run() {
    let out = run(&["chartable", "quaternion"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Schur index 2"));
    let out = run(&["search", "d2q?q=3", "--max-t", "3", "--require-full", "--dedupe-conjugates"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("genera (5, 5, 1)"));
}

#[test]
fn elliptic_flag() {
    let out = run(&["fiber", "--elliptic", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["fiber"]["genus"], 9);
    assert_eq!(v["fiber"]["dim_p"], 5);
}

#[test]
fn schur_overrides() {
    // an override agreeing with the indicator is accepted and recorded
    let out = run(&["analyze", "d2q?q=3", "--collections", "main", "--format", "json", "--schur", "5=1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rational_classes"][4]["schur_index"], 1);
    assert_eq!(v["rational_classes"][4]["schur_provenance"], "override");

    // index 2 on a real dihedral class breaks integrality of the multiplicities
    let out = run(&["analyze", "d2q?q=3", "--schur", "5=2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not integral"));
}

#[test]
fn text_is_deterministic() {
    let a = stdout(&run(&["analyze", "data/s3-generators.json"]));
    let b = stdout(&run(&["analyze", "data/s3-generators.json"]));
    assert_eq!(a, b);
}
