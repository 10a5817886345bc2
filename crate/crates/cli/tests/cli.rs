use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lieops(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieops"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

fn emit(kind: &str, n: &str, q: Option<&str>) -> TempDir {
    let dir = TempDir::new().unwrap();
    let d = dir.path().display().to_string();
    let mut args = vec!["example", kind, "--n", n, "--emit", &d];
    if let Some(q) = q {
        args.extend(["--q", q]);
    }
    let out = lieops(&args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    dir
}

fn write_q(dir: &Path, rows: &str) -> String {
    let p = path(dir, "custom_q.json");
    let n = rows.matches('[').count() - 1;
    fs::write(
        &p,
        format!(r#"{{"name": "q", "dim": {n}, "rows": {rows}}}"#),
    )
    .unwrap();
    p
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--report", "structured"];
    full.extend_from_slice(args);
    let out = lieops(&full);
    (
        code(&out),
        serde_json::from_slice(&out.stdout).expect("json on stdout"),
    )
}

#[test]
fn example_then_check_round_trip() {
    let dir = emit("gl", "2", None);
    let d = dir.path();
    let out = lieops(&[
        "check",
        "xvr",
        &path(d, "algebra.json"),
        &path(d, "xi.json"),
        &path(d, "rho.json"),
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS I1"), "{text}");

    let out = lieops(&[
        "check",
        "pencil",
        &path(d, "algebra.json"),
        &path(d, "xi.json"),
        &path(d, "rho.json"),
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn structured_report_records_inputs() {
    let dir = emit("so", "3", None);
    let d = dir.path();
    let (c, v) = structured(&[
        "check",
        "xvr",
        &path(d, "algebra.json"),
        &path(d, "xi.json"),
        &path(d, "rho.json"),
    ]);
    assert_eq!(c, 0);
    assert_eq!(v["tool"], "lieops");
    assert_eq!(v["passed"], true);
    let inputs = v["inputs"].as_array().unwrap();
    assert_eq!(inputs.len(), 3);
    assert_eq!(inputs[0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn structured_output_is_deterministic() {
    let dir = emit("gl", "2", None);
    let d = dir.path();
    let args = [
        "--report",
        "structured",
        "check",
        "xvr",
        &path(d, "algebra.json"),
        &path(d, "xi.json"),
        &path(d, "rho.json"),
    ];
    assert_eq!(lieops(&args).stdout, lieops(&args).stdout);
    let args = [
        "--report",
        "structured",
        "random",
        "xvr-gl",
        "--samples",
        "3",
        "--seed",
        "4",
    ];
    assert_eq!(lieops(&args).stdout, lieops(&args).stdout);
}

#[test]
fn identity_violation_exits_one() {
    let dir = emit("gl", "2", None);
    let d = dir.path();
    // The rho operator used as xi is not a derivation.
    let (c, v) = structured(&[
        "check",
        "xvr",
        &path(d, "algebra.json"),
        &path(d, "rho.json"),
        &path(d, "rho.json"),
    ]);
    assert_eq!(c, 1);
    assert_eq!(v["passed"], false);
}

#[test]
fn mismatched_dimensions_exit_two() {
    let small = emit("gl", "2", None);
    let big = emit("gl", "3", None);
    let out = lieops(&[
        "check",
        "xvr",
        &path(small.path(), "algebra.json"),
        &path(big.path(), "xi.json"),
        &path(big.path(), "rho.json"),
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension"));
}

#[test]
fn malformed_files_exit_two() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let alg = path(d, "algebra.json");
    fs::write(&alg, r#"{"name": "x", "dim": 2, "basis": ["a", "b"], "structure": [{"i": 1, "j": 0, "k": 0, "c": "1"}]}"#).unwrap();
    let op = write_q(d, r#"[["1", "0"], ["0", "1"]]"#);
    assert_eq!(code(&lieops(&["check", "myb", &alg, &op])), 2);
    fs::write(
        &alg,
        r#"{"name": "x", "dim": 2, "basis": ["a", "b"], "structure": [], "extra": 1}"#,
    )
    .unwrap();
    assert_eq!(code(&lieops(&["check", "myb", &alg, &op])), 2);
    fs::write(&alg, r#"{"name": "x", "dim": 2, "basis": ["a", "b"], "structure": [{"i": 0, "j": 1, "k": 0, "c": "1/0"}]}"#).unwrap();
    assert_eq!(code(&lieops(&["check", "myb", &alg, &op])), 2);
}

#[test]
fn so_example_needs_antisymmetric_q() {
    let dir = TempDir::new().unwrap();
    let q = write_q(
        dir.path(),
        r#"[["0", "1", "0"], ["1", "0", "0"], ["0", "0", "0"]]"#,
    );
    assert_eq!(code(&lieops(&["example", "so", "--n", "3", "--q", &q])), 2);
    let q = write_q(
        dir.path(),
        r#"[["0", "1", "0"], ["-1", "0", "2"], ["0", "-2", "0"]]"#,
    );
    assert_eq!(code(&lieops(&["example", "so", "--n", "3", "--q", &q])), 0);
}

#[test]
fn bimyb_left_right_is_even_tempered() {
    let tmp = TempDir::new().unwrap();
    let q = write_q(tmp.path(), r#"[["0", "1"], ["0", "0"]]"#);
    let dir = emit("bimyb-lr", "2", Some(&q));
    let d = dir.path();
    let out = lieops(&[
        "check",
        "bimyb",
        "--even-tempered",
        &path(d, "algebra.json"),
        &path(d, "r1.json"),
        &path(d, "r2.json"),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn assoc_theta_is_special() {
    let dir = emit("assoc-theta", "2", None);
    let d = dir.path();
    let out = lieops(&[
        "check",
        "thetarho",
        "--special",
        &path(d, "algebra.json"),
        &path(d, "theta.json"),
        &path(d, "rho.json"),
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn tower_conventions() {
    let tmp = TempDir::new().unwrap();
    let q = write_q(tmp.path(), r#"[["1", "2"], ["-1", "3"]]"#);
    let dir = emit("gl", "2", Some(&q));
    let d = dir.path();
    let (alg, xi, rho) = (
        path(d, "algebra.json"),
        path(d, "xi.json"),
        path(d, "rho.json"),
    );
    assert_eq!(code(&lieops(&["tower", "xvr", &alg, &xi, &rho])), 1);
    assert_eq!(
        code(&lieops(&[
            "tower",
            "xvr",
            &alg,
            &xi,
            &rho,
            "--convention",
            "lucas"
        ])),
        0
    );
    let (c, v) = structured(&[
        "tower",
        "xvr",
        &alg,
        &xi,
        &rho,
        "--depth",
        "2",
        "--convention",
        "lucas",
    ]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["levels"].as_array().unwrap().len(), 3);
    assert_eq!(
        code(&lieops(&[
            "tower",
            "xvr",
            &alg,
            &xi,
            &rho,
            "--convention",
            "other"
        ])),
        2
    );
    // Not a seed: rho used as xi.
    assert_eq!(code(&lieops(&["tower", "xvr", &alg, &rho, &rho])), 2);

    let seed = emit("rrho-seed", "2", Some(&q));
    let s = seed.path();
    let args = [
        "tower",
        "rrho",
        &path(s, "algebra.json"),
        &path(s, "r.json"),
        &path(s, "rho.json"),
    ];
    assert_eq!(code(&lieops(&args)), 1);
    let mut lucas = args.to_vec();
    lucas.extend(["--convention", "lucas", "--depth", "4"]);
    assert_eq!(code(&lieops(&lucas)), 0);
}

#[test]
fn classify_emits_a_checkable_family() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().display().to_string();
    let (c, v) = structured(&[
        "classify",
        "so3",
        "--grid-check",
        "--grid-max-num",
        "2",
        "--grid-max-den",
        "2",
        "--emit-family",
        &d,
    ]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["solutions"]["type"], "curve");
    assert_eq!(v["result"]["contains_canonical"], true);
    assert_eq!(v["result"]["grid"]["agrees"], true);
    let out = lieops(&[
        "check",
        "family",
        &path(dir.path(), "algebra.json"),
        &path(dir.path(), "family.json"),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn ipair_canonical_so3() {
    let out = lieops(&["ipair", "--canonical", "so", "--n", "3", "--q", "1,0,0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        code(&lieops(&[
            "ipair",
            "--canonical",
            "so",
            "--n",
            "3",
            "--q",
            "1,0"
        ])),
        2
    );
}

#[test]
fn random_sweeps() {
    for (kind, n) in [
        ("xvr-gl", "2"),
        ("xvr-so", "3"),
        ("bimyb-lr", "2"),
        ("assoc-theta", "2"),
    ] {
        let out = lieops(&["random", kind, "--n", n, "--samples", "3", "--seed", "1"]);
        assert_eq!(code(&out), 0, "{kind}");
    }
    let (c, v) = structured(&["random", "xvr-gl", "--samples", "0"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["samples"], 0);
    assert_eq!(code(&lieops(&["random", "xvr-gl", "--max-den", "0"])), 2);
    let (c, v) = structured(&["random", "bimyb-search", "--samples", "10"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["found"].as_array().unwrap().len(), 0);
}
