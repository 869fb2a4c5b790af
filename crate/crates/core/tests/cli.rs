use std::path::PathBuf;
use std::process::{Command, Output};

fn catdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catdyn")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("catdyn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn entropy_matches_closed_form() {
    let inst = scratch("zz.json", r#"{"version": 1, "matrix": [[[[1, 1], [-1, 1]]]]}"#);
    let out = catdyn(&["entropy", "--instance", inst.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout(&out);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,h,lower_basic,upper_basic,lower_sharp"));
    let mut rows = 0;
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let t = cols[0];
        assert!((cols[1] - ((-t).exp() + t.exp()).ln()).abs() <= 1e-9);
        rows += 1;
    }
    assert_eq!(rows, 201);
}

#[test]
fn entropy_grid_flag_and_out_file() {
    let inst = scratch("id.json", r#"{"version": 1, "matrix": [[[[0, 1]], []], [[], [[0, 1]]]], "grid": "-5:5:11"}"#);
    let target = scratch("id.csv", "");
    let out = catdyn(&[
        "entropy",
        "--instance",
        inst.to_str().unwrap(),
        "--grid",
        "-1:1:3",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&target).unwrap();
    assert_eq!(csv, "t,h,lower_basic,upper_basic,lower_sharp\n-1,0,0,0,0\n0,0,0,0,0\n1,0,0,0,0\n");
}

#[test]
fn entropy_exit_codes() {
    let nil = scratch("nil.json", r#"{"version": 1, "matrix": [[[], [[0, 1]]], [[], []]]}"#);
    let out = catdyn(&["entropy", "--instance", nil.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nilpotent"));

    let bad = scratch("bad.json", r#"{"version": 1, "matrix": [[[[0, 1]]], [[[0, 1]]]]}"#);
    assert_eq!(catdyn(&["entropy", "--instance", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(catdyn(&["entropy", "--instance", "/nonexistent/instance.json"]).status.code(), Some(2));
}

#[test]
fn classify_reports_exact_values() {
    let inst =
        scratch("three.json", r#"{"version": 1, "auto_equivalence": {"permutation": [1, 0, 2], "shifts": [1, 0, 2]}}"#);
    let out = catdyn(&["classify", "--instance", inst.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["order_k"], 2);
    assert_eq!(v["orbit_totals"], serde_json::json!([1, 2]));
    assert_eq!(v["eventual_displacement"], serde_json::json!({"num": 2, "den": 1}));
    assert_eq!(v["translation_length"], serde_json::json!({"num": 2, "den": 1}));
    assert_eq!(v["paper_classification"], "parabolic-paper-convention");
    assert_eq!(v["classification"], "hyperbolic");

    let id = scratch("ident.json", r#"{"version": 1, "auto_equivalence": {"permutation": [0, 1], "shifts": [0, 0]}}"#);
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&catdyn(&["classify", "--instance", id.to_str().unwrap()]))).unwrap();
    assert_eq!(
        (v["classification"].as_str(), v["paper_classification"].as_str()),
        (Some("elliptic"), Some("elliptic"))
    );

    let malformed =
        scratch("perm.json", r#"{"version": 1, "auto_equivalence": {"permutation": [1, 1], "shifts": [0, 0]}}"#);
    assert_eq!(catdyn(&["classify", "--instance", malformed.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_sweeps() {
    let out = catdyn(&["verify", "metric-bounds", "--seed", "7", "--count", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((v["passed"].as_u64(), v["failed"].as_u64()), (Some(50), Some(0)));

    let again = catdyn(&["verify", "metric-bounds", "--seed", "7", "--count", "50"]);
    assert_eq!(out.stdout, again.stdout);

    assert_eq!(catdyn(&["verify", "pl-bounds", "--count", "0"]).status.code(), Some(0));
    assert_eq!(catdyn(&["verify", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn catalog_entries() {
    let out = catdyn(&["catalog", "--name", "spherical-twist", "--N", "3", "--grid", "-2:2:5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "t,h,lower_basic,upper_basic,lower_sharp\n-2,4,4,4,4\n-1,2,2,2,2\n0,0,0,0,0\n1,0,0,0,0\n2,0,0,0,0\n"
    );
    let report: serde_json::Value = serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(report["displacement"]["d"], 2.0);

    let dhkk = catdyn(&["catalog", "--name", "dhkk", "--r", "2", "--f0", "1"]);
    assert_eq!(dhkk.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(String::from_utf8_lossy(&dhkk.stderr).trim()).unwrap();
    assert_eq!(report["displacement"]["d"], 1.0);

    assert_eq!(catdyn(&["catalog", "--name", "spherical-twist", "--N", "1"]).status.code(), Some(2));
    assert_eq!(catdyn(&["catalog", "--name", "shift"]).status.code(), Some(2));
}
