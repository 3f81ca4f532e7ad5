//! End-to-end tests of the fanodefect binary: flag handling, exit codes,
//! output shape, and byte-for-byte determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fanodefect"));
    c.current_dir(env!("CARGO_MANIFEST_DIR"));
    c.env_remove("FANODEFECT_CONFIG");
    c
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn mmp_bound_anchors() {
    let out = bin().args(["mmp-bound", "--genus", "3", "--no-quadric"]).output().unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("Cl rank ≤ 9"), "{}", stdout(&out));

    let out = bin().args(["mmp-bound", "--genus", "3"]).output().unwrap();
    assert!(stdout(&out).contains("Cl rank ≤ 10"), "{}", stdout(&out));

    let out = bin().args(["mmp-bound", "--index", "2", "--degree", "1"]).output().unwrap();
    assert!(stdout(&out).contains("Picard rank ≤ 7"), "{}", stdout(&out));
}

#[test]
fn mmp_bound_rejects_bad_input() {
    let out = bin().args(["mmp-bound", "--genus", "11"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    let out = bin().args(["mmp-bound"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gb_lex_elimination() {
    let out = bin()
        .args(["gb", "--order", "lex"])
        .arg(fixture("lex-demo.fx"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("x1^3 - x2^2"), "{}", stdout(&out));
}

#[test]
fn gb_zero_ideal_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zero.fx");
    std::fs::write(&path, "ring: x0 x1\ngen: 0\n").unwrap();
    let out = bin().arg("gb").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("zero ideal input"), "{}", stderr(&out));
}

#[test]
fn gb_budget_exhaustion_is_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cyclic4.fx");
    std::fs::write(
        &path,
        "ring: x0 x1 x2 x3\n\
         gen: x0 + x1 + x2 + x3\n\
         gen: x0*x1 + x1*x2 + x2*x3 + x3*x0\n\
         gen: x0*x1*x2 + x1*x2*x3 + x2*x3*x0 + x3*x0*x1\n\
         gen: x0*x1*x2*x3 - 1\n",
    )
    .unwrap();
    let out = bin().args(["gb", "--gb-budget", "2"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn singular_burkhardt_summary_line() {
    let out = bin().arg("singular").arg(fixture("burkhardt.fx")).output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(
        stdout(&out).contains("isolated, degree 45 (3/3 primes agree)"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn analyze_fermat_fails_containment_with_exit_2() {
    let out = bin().arg("analyze").arg(fixture("fermat.fx")).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert!(stdout(&out).contains("containment: FAILED"), "{}", stdout(&out));
}

#[test]
fn analyze_is_deterministic_and_json_round_trips() {
    let run = |jobs: &str| {
        bin()
            .args(["analyze", "--json", "--jobs", jobs])
            .arg(fixture("burkhardt.fx"))
            .output()
            .unwrap()
    };
    let a = run("1");
    let b = run("4");
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout, "output depends on the worker count");
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["defect"]["cl_rank_bound"], 16);
    assert_eq!(doc["defect"]["defect_bound"], 15);
    assert_eq!(doc["contains_plane"], true);
}

#[test]
fn config_file_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg");
    std::fs::write(&cfg, "primes = 10007, 10009\n").unwrap();
    let out = bin()
        .env("FANODEFECT_CONFIG", &cfg)
        .arg("singular")
        .arg(fixture("burkhardt.fx"))
        .output()
        .unwrap();
    assert!(stdout(&out).contains("(2/2 primes agree)"), "{}", stdout(&out));
    let out = bin()
        .env("FANODEFECT_CONFIG", &cfg)
        .args(["singular", "--primes", "10007"])
        .arg(fixture("burkhardt.fx"))
        .output()
        .unwrap();
    assert!(stdout(&out).contains("(1/1 primes agree)"), "{}", stdout(&out));
}

#[test]
fn bad_primes_rejected() {
    let out = bin()
        .args(["singular", "--primes", "4"])
        .arg(fixture("burkhardt.fx"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("must exceed 5"), "{}", stderr(&out));
}

#[test]
fn fibre_scan_classifies_parameters() {
    let out = bin()
        .args(["fibre-scan", "--params", "0,1"])
        .arg(fixture("burkhardt.fx"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("(0:1): 3 component(s), reduced"), "{text}");
    assert!(text.contains("(1:1): 3 component(s), reduced"), "{text}");
    assert!(text.contains("(1:0): 1 component(s), reduced"), "{text}");
}
