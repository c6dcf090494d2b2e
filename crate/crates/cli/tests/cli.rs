//! End-to-end CLI contract tests: exit codes, file round trips, formats.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_g2lap")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("G2_MODE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmpfile(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("g2lap-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn check_reports_reference_laplacian() {
    let out = run(&["check", "--builtin", "n3", "--params", "a=1,b=3/4,c=1/4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // Δ = 2(b²+c²+bc) e^{123} = 13/8 e^{123}
    assert!(
        text.contains("(13/8)*e123"),
        "missing laplacian in:\n{text}"
    );
    assert!(text.contains("closed:     true"));
}

#[test]
fn check_of_abelian_has_zero_torsion() {
    let out = run(&["check", "--builtin", "n1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["tau"], serde_json::json!([]));
    assert_eq!(v["laplacian"], serde_json::json!([]));
    assert_eq!(v["closed"], true);
}

#[test]
fn check_file_with_non_closed_form_reports_and_exits_zero() {
    // n3 off the closedness locus: report carries d(phi), no torsion section
    let export = run(&["catalog", "list", "--format", "json"]);
    let all: serde_json::Value = serde_json::from_str(&stdout(&export)).unwrap();
    let mut problem = all[2].clone(); // n3 at defaults (closed)
                                      // overwrite bracket coefficient a: [e1,e2] = -2 e4 breaks a = b + c
    problem["algebra"]["brackets"][0]["coeff"] = serde_json::json!("-2");
    problem["algebra"]["params"]["a"] = serde_json::json!("2");
    let path = tmpfile("nonclosed.json");
    std::fs::write(&path, serde_json::to_string(&problem).unwrap()).unwrap();
    let out = run(&[
        "check",
        "--file",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["closed"], false);
    assert!(
        v.get("tau").is_none(),
        "no torsion section for non-closed form"
    );
    assert!(v.get("q").is_none());
    assert!(!v["d_phi"].as_array().unwrap().is_empty());
    std::fs::remove_file(&path).ok();
}

#[test]
fn builtin_and_file_checks_are_byte_identical() {
    let export = run(&["catalog", "list", "--format", "json"]);
    assert_eq!(export.status.code(), Some(0));
    let all: serde_json::Value = serde_json::from_str(&stdout(&export)).unwrap();
    for name in ["n1", "n2", "n3", "n4", "n5", "n6", "n7"] {
        let pos = ["n1", "n2", "n3", "n4", "n5", "n6", "n7"]
            .iter()
            .position(|n| *n == name)
            .unwrap();
        let problem = &all[pos];
        let path = tmpfile(&format!("{name}.json"));
        std::fs::write(&path, serde_json::to_string(problem).unwrap()).unwrap();
        let from_builtin = run(&["check", "--builtin", name, "--format", "json"]);
        let from_file = run(&[
            "check",
            "--file",
            path.to_str().unwrap(),
            "--format",
            "json",
        ]);
        assert_eq!(from_builtin.status.code(), Some(0));
        assert_eq!(from_file.status.code(), Some(0));
        assert_eq!(
            stdout(&from_builtin),
            stdout(&from_file),
            "{name} reports must round-trip byte-identically"
        );
        std::fs::remove_file(&path).ok();
    }
}

#[test]
fn soliton_cli_examples() {
    // n4 at the table binding: λ = 9, semi-algebraic-only, expanding
    let out = run(&[
        "soliton",
        "--builtin",
        "n4",
        "--params",
        "a=sqrt2,b=1,c=sqrt2,d=1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["lambda"], "9");
    assert_eq!(v["classification"], "semi-algebraic-only");
    assert_eq!(v["sign_class"], "expanding");
    assert_eq!(v["q_check"], true);
    assert_eq!(v["mode"], "exact");

    // n5: λ = 9
    let out = run(&[
        "soliton",
        "--builtin",
        "n5",
        "--params",
        "a=sqrt2,b=1,c=1,d=sqrt2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["lambda"], "9");

    // n3 at (2,1,1): λ = 15, algebraic
    let out = run(&["soliton", "--builtin", "n3", "--params", "a=2,b=1,c=1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["lambda"], "15");
    assert_eq!(v["classification"], "algebraic");
}

#[test]
fn exit_codes_are_documented_behavior() {
    // parse error: unknown algebra
    let out = run(&["check", "--builtin", "n99"]);
    assert_eq!(out.status.code(), Some(2));
    // parse error: bad scalar
    let out = run(&["check", "--builtin", "n3", "--params", "a=oops"]);
    assert_eq!(out.status.code(), Some(2));
    // parse error: zero parameter
    let out = run(&["check", "--builtin", "n3", "--params", "a=0"]);
    assert_eq!(out.status.code(), Some(2));
    // clap usage error
    let out = run(&["definitely-not-a-command"]);
    assert_eq!(out.status.code(), Some(2));
    // not positive: a junk file form
    let junk = serde_json::json!({
        "algebra": {"dim": 7, "name": "custom", "brackets": []},
        "form": [{"indices": [1, 2, 3], "coeff": "1"}]
    });
    let path = tmpfile("junk.json");
    std::fs::write(&path, junk.to_string()).unwrap();
    let out = run(&["check", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["soliton", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["flow", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::remove_file(&path).ok();
    // soliton: closed but not a soliton -> 1
    let out = run(&["soliton", "--builtin", "n4", "--params", "a=1,b=1,c=1,d=1"]);
    assert_eq!(out.status.code(), Some(1));
    // soliton: not closed -> 1 with message
    let out = run(&["soliton", "--builtin", "n3", "--params", "a=3,b=1,c=1"]);
    assert_eq!(out.status.code(), Some(1));
    // flow with a non-closed input -> closedness family exit 5
    let out = run(&["flow", "--builtin", "n3", "--params", "a=3,b=1,c=1"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn flow_csv_columns_and_mode_env() {
    let out = run(&["flow", "--builtin", "n2", "--t-max", "0.05", "--dt", "0.01"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("t,e123,"));
    assert!(header.ends_with("d_drift,residual,lambda_t"));
    assert_eq!(header.split(',').count(), 39);
    assert_eq!(lines.count(), 6);
    // 17 significant digits in the mantissa
    let second = text.lines().nth(1).unwrap();
    let first_field = second.split(',').nth(1).unwrap();
    assert!(
        first_field.contains('e'),
        "scientific notation: {first_field}"
    );

    // G2_MODE env default
    let out = Command::new(bin())
        .args(["check", "--builtin", "n2", "--format", "json"])
        .env("G2_MODE", "float")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["mode"], "float");
    let out = Command::new(bin())
        .args(["check", "--builtin", "n2", "--format", "json"])
        .env("G2_MODE", "junk")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flow_json_summary_fits_the_scaling_law() {
    let out = run(&[
        "flow",
        "--builtin",
        "n6",
        "--t-max",
        "0.2",
        "--dt",
        "0.002",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let c_est = v["c_est"].as_f64().unwrap();
    assert!((c_est - 9.0).abs() / 9.0 < 1e-4, "c_est = {c_est}");
    assert_eq!(v["samples"], 101);
}

#[test]
fn report_only_filter() {
    let out = run(&["report", "tables", "--only", "n6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["diffs"].as_array().unwrap().len(), 8);
    let out = run(&["report", "tables", "--only", "n9"]);
    assert_eq!(out.status.code(), Some(2));
}
