//! Exit-code contract and output-shape tests for the binary.

use std::process::{Command, Output};

fn biuniv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biuniv"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn bounds_reports_corollary_value() {
    let out = biuniv(&["bounds", "--lambda", "0", "--beta", "0"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["hankel2_bound"]["value"], 1.5);
    assert_eq!(json["hankel2_bound"]["branch"], "boundary-case");
    assert_eq!(json["a2_bound"]["value"], 0.816496580928);
}

#[test]
fn bounds_with_named_phi() {
    let out = biuniv(&[
        "bounds",
        "--lambda",
        "1",
        "--beta",
        "0",
        "--phi-kind",
        "linear",
        "--phi-param",
        "0",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let ff = &json["fekete_functional_bound"];
    assert_eq!(ff["value"], 0.333333333333);
    assert_eq!(ff["delta"], 0.666666666667);
}

#[test]
fn bounds_accepts_negative_phi_coefficients() {
    let out = biuniv(&[
        "bounds", "--lambda", "0.25", "--beta", "0.1", "--phi-b1", "1.2", "--phi-b2", "-0.7",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["phi"]["b2"], -0.7);

    // Negative lambda reaches the domain check, not an argument error.
    let out = biuniv(&["bounds", "--lambda", "-0.1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lambda"));
}

#[test]
fn domain_violations_exit_2() {
    assert_eq!(biuniv(&["bounds", "--lambda", "2"]).status.code(), Some(2));
    assert_eq!(
        biuniv(&["bounds", "--lambda", "0.5", "--beta", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        biuniv(&[
            "bounds",
            "--lambda",
            "0",
            "--phi-kind",
            "power",
            "--phi-param",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );
    // --phi-b1 without --phi-b2 is a usage error (clap exits 2 as well).
    assert_eq!(
        biuniv(&["bounds", "--lambda", "0", "--phi-b1", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_small_scale_passes() {
    // Reduced scale to keep the runtime down; the acceptance suite runs the
    // full-scale equivalents against the library directly.
    let out = biuniv(&[
        "verify",
        "--lambda-grid",
        "0:1:0.5",
        "--beta-grid",
        "0:0.8:0.4",
        "--resolution",
        "0.01",
        "--samples",
        "2000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["all_pass"], true);
    let checks = json["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 12);
    for check in checks {
        assert_eq!(check["pass"], true, "failed: {}", check["check"]);
        assert!(check["worst_residual"].as_f64().unwrap() <= 0.0);
    }

    // Same run as CSV: one row per check.
    let out = biuniv(&[
        "verify",
        "--lambda-grid",
        "0:1:0.5",
        "--beta-grid",
        "0:0.8:0.4",
        "--resolution",
        "0.01",
        "--samples",
        "2000",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "check,pass,worst_residual,witness");
    assert_eq!(lines.len(), 1 + 12);
}

#[test]
fn verify_preconditions_exit_2() {
    assert_eq!(
        biuniv(&["verify", "--resolution", "0.5"]).status.code(),
        Some(2)
    );
    assert_eq!(biuniv(&["verify", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(
        biuniv(&["verify", "--beta-grid", "0:1:0.25"]).status.code(),
        Some(2)
    );
}

#[test]
fn sweep_shape_and_bound_column() {
    let out = biuniv(&[
        "sweep",
        "--lambda-grid",
        "0:1:0.25",
        "--beta-grid",
        "0:0.8:0.2",
        "--samples",
        "200",
        "--seed",
        "1",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "lambda,beta,hankel2_bound,branch,threshold,empirical_max,samples"
    );
    assert_eq!(lines.len(), 1 + 25, "5x5 grid emits 25 data rows");
    assert!(!text.contains('\r'), "LF line endings only");

    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first[0], "0");
    assert_eq!(first[1], "0");
    assert_eq!(first[2], "1.5");

    // Rows are sorted by (lambda, beta) and the sampler maximum never
    // exceeds the bound.
    let mut prev_key = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for row in &lines[1..] {
        let cols: Vec<&str> = row.split(',').collect();
        let key = (
            cols[0].parse::<f64>().unwrap(),
            cols[1].parse::<f64>().unwrap(),
        );
        assert!(key > prev_key);
        prev_key = key;
        let bound: f64 = cols[2].parse().unwrap();
        let empirical: f64 = cols[5].parse().unwrap();
        assert!(empirical <= bound + 1e-9);
    }
}

#[test]
fn sweep_rejects_bad_config() {
    assert_eq!(biuniv(&["sweep", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(
        biuniv(&["sweep", "--lambda-grid", "0:2:0.5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        biuniv(&["sweep", "--format", "json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        biuniv(&["bounds", "--lambda", "0", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
    // Unwritable output path.
    let out = biuniv(&[
        "sweep",
        "--samples",
        "10",
        "--output",
        "/nonexistent-dir/out.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_env_is_validated() {
    let ok = Command::new(env!("CARGO_BIN_EXE_biuniv"))
        .args(["bounds", "--lambda", "0"])
        .env("BIUNIV_THREADS", "1")
        .output()
        .unwrap();
    assert!(ok.status.success());

    let bad = Command::new(env!("CARGO_BIN_EXE_biuniv"))
        .args(["bounds", "--lambda", "0"])
        .env("BIUNIV_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
