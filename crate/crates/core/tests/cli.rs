//! End-to-end checks of the command-line interface: worked examples, exit
//! codes, round-trip parsing and byte determinism.

use std::process::{Command, Output};

use cherednik::trigpoly::{TrigPoly, TrigPolyJson};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cherednik"))
        .args(args)
        .env("CHEREDNIK_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn poly_worked_example() {
    let text = stdout(&[
        "poly", "--family", "BC", "--rank", "1", "--kappa", "1,0", "--weight", "-1",
    ]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["rank"], 1);
    assert_eq!(value["lambda"][0], -1);
    assert_eq!(value["spectral"][0], "-3/2");
    let terms = value["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    // Lexicographic order with the worked coefficients.
    assert_eq!(terms[0]["w"][0], -1);
    assert_eq!(terms[0]["c"], "1");
    assert_eq!(terms[1]["c"], "2/3");
    assert_eq!(terms[2]["c"], "1/3");
}

#[test]
fn poly_zero_weight_is_one() {
    let text = stdout(&[
        "poly", "--family", "BC", "--rank", "2", "--kappa", "1,1,1", "--weight", "0,0",
    ]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let terms = value["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["c"], "1");
    assert_eq!(terms[0]["w"], serde_json::json!([0, 0]));
}

#[test]
fn jack_exchange_example() {
    let text = stdout(&[
        "poly", "--family", "A", "--rank", "2", "--jack", "--weight", "1,0", "--kappa", "1",
    ]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["kind"], "jack");
    let terms = value["terms"].as_array().unwrap();
    assert_eq!(terms[0]["w"], serde_json::json!([0, 1]));
    assert_eq!(terms[0]["c"], "1/2");
    assert_eq!(terms[1]["w"], serde_json::json!([1, 0]));
    assert_eq!(terms[1]["c"], "1");
}

#[test]
fn emitted_polynomials_reparse_identically() {
    for args in [
        vec![
            "poly",
            "--family",
            "BC",
            "--rank",
            "2",
            "--kappa",
            "1/2,1/3,2",
            "--weight",
            "-2,1",
        ],
        vec![
            "poly", "--family", "A", "--rank", "3", "--kappa", "3/2", "--weight", "1,-1,2",
        ],
        vec![
            "poly", "--family", "B", "--rank", "2", "--kappa", "1,1/2", "--weight", "2,-1",
        ],
    ] {
        let text = stdout(&args);
        let parsed: TrigPolyJson = serde_json::from_str(&text).unwrap();
        let poly = TrigPoly::from_json(&parsed).unwrap();
        // Canonical re-serialization gives the same term list.
        let again = serde_json::to_value(poly.to_json()).unwrap();
        let original: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(again["terms"], original["terms"], "args {args:?}");
        assert_eq!(again["rank"], original["rank"]);
    }
}

#[test]
fn identical_configuration_gives_identical_bytes() {
    let args = [
        "poly", "--family", "BC", "--rank", "2", "--kappa", "1,1,1", "--weight", "-1,2",
    ];
    assert_eq!(stdout(&args), stdout(&args));
    let verify_args = ["verify", "--suite", "hecke", "--rank", "1"];
    assert_eq!(stdout(&verify_args), stdout(&verify_args));
}

#[test]
fn exit_codes() {
    // Unknown suite: parse error, code 2.
    let out = run(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    // Malformed rational: code 2.
    let out = run(&[
        "poly", "--family", "BC", "--rank", "1", "--kappa", "x,y", "--weight", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Negative multiplicity: structurally fine, domain error, code 3.
    let out = run(&[
        "poly", "--family", "BC", "--rank", "1", "--kappa", "-1,0", "--weight", "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // Unsupported family arity: code 2.
    let out = run(&[
        "poly", "--family", "A", "--rank", "2", "--kappa", "1,1", "--weight", "1,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Jack of a signed weight: domain error, code 3.
    let out = run(&[
        "poly", "--family", "A", "--rank", "2", "--jack", "--weight", "-1,0", "--kappa", "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // Missing subcommand: clap usage error, code 2.
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn limit_closed_form_rows() {
    let text = stdout(&[
        "limit",
        "--rank",
        "1",
        "--weight",
        "1",
        "--kappa3",
        "0",
        "--grid-max",
        "2",
        "--grid-step",
        "1/2",
    ]);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines[0], "k1,k2,sup_error_poly,sup_error_kernel");
    assert_eq!(lines.len(), 4);
    let errs: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(2).unwrap().parse::<f64>().unwrap())
        .collect();
    for (err, denom) in errs.iter().zip([11.0, 101.0, 1001.0]) {
        assert!((err - 1.0 / denom).abs() < 1e-12);
    }
    // lambda = 0: all errors vanish.
    let text = stdout(&["limit", "--rank", "1", "--weight", "0", "--kappa3", "1"]);
    for line in text.trim_end().lines().skip(1) {
        let mut cols = line.split(',');
        assert_eq!(cols.nth(2).unwrap().parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn hull_membership_responses() {
    let text = stdout(&[
        "hull", "--family", "BC", "--rank", "1", "--kappa", "1,0", "--point", "1/2",
    ]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["in_hull"], true);
    let text = stdout(&[
        "hull", "--family", "BC", "--rank", "1", "--kappa", "1,0", "--point", "-2/3",
    ]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["in_hull"], false);
}

#[test]
fn verify_report_shape() {
    let text = stdout(&["verify", "--suite", "recurrence", "--rank", "1"]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["suite"], "recurrence");
    assert_eq!(value["failed"], 0);
    assert!(value["checked"].as_u64().unwrap() > 0);
}
