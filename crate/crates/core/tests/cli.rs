#![allow(clippy::approx_constant)]

use std::process::Command;

use elab_core::cli::run;
use serde_json::Value;

fn elab(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("elab").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = elab(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn estimate_examples() {
    let v: Value = serde_json::from_str(&ok(&["estimate", "--method", "stretch", "--base", "3", "--h", "1e-4"])).unwrap();
    assert!((v["estimate"].as_f64().unwrap() - 2.71814).abs() < 2e-5);
    let v: Value = serde_json::from_str(&ok(&["estimate", "--method", "compound", "--n", "1"])).unwrap();
    assert_eq!(v["estimate"].as_f64(), Some(2.0));
    let v: Value = serde_json::from_str(&ok(&["estimate", "--method", "series", "--terms", "17"])).unwrap();
    assert!((v["estimate"].as_f64().unwrap() - std::f64::consts::E).abs() <= 1e-15);
}

#[test]
fn usage_and_parameter_errors_exit_2() {
    for args in [
        &["estimate", "--method", "guess"][..],
        &["estimate", "--method", "compound", "--n", "0"],
        &["estimate", "--method", "stretch", "--base", "0.5"],
        &["table", "--kind", "nope"],
        &["table", "--kind", "compound", "--grid", "pow3:1..2"],
        &["figures", "--figure", "nope"],
        &["figures", "--figure", "reflect", "--samples", "8"],
        &["frobnicate"],
    ] {
        assert_eq!(elab(args).0, 2, "{args:?}");
    }
}

#[test]
fn deterministic_output() {
    for args in [
        &["table", "--kind", "pitfall", "--grid", "pow10:1..5"][..],
        &["table", "--kind", "pitfall", "--grid", "pow10:1..5", "--parallel"],
        &["verify", "--suite", "series", "--seed", "7"],
        &["figures", "--figure", "exp-stretch", "--samples", "33"],
    ] {
        assert_eq!(elab(args), elab(args), "{args:?}");
    }
    assert_eq!(
        ok(&["table", "--kind", "euler", "--parallel"]),
        ok(&["table", "--kind", "euler"])
    );
}

#[test]
fn csv_and_json_tables_agree() {
    for kind in ["compound", "compound-x", "series", "euler", "pitfall", "sinc"] {
        let csv_text = ok(&["table", "--kind", kind, "--format", "csv"]);
        let json: Vec<Value> = serde_json::from_str(&ok(&["table", "--kind", kind, "--format", "json"])).unwrap();
        let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
        assert_eq!(reader.headers().unwrap(), vec!["n", "value", "error", "bound"]);
        let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
        assert_eq!(rows.len(), json.len(), "{kind}");
        for (r, j) in rows.iter().zip(&json) {
            for (i, key) in ["n", "value", "error", "bound"].iter().enumerate() {
                let from_json = j[key].as_f64();
                let from_csv = if r[i].is_empty() { None } else { Some(r[i].parse::<f64>().unwrap()) };
                assert_eq!(from_csv, from_json, "{kind} {key}");
            }
        }
    }
}

#[test]
fn table_examples() {
    let out = ok(&["table", "--kind", "compound", "--grid", "pow10:0..4"]);
    let first: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first[0], "1");
    assert_eq!(first[1].parse::<f64>().unwrap(), 2.0);

    let rows: Vec<Value> =
        serde_json::from_str(&ok(&["table", "--kind", "pitfall", "--c", "0,1,2", "--grid", "pow10:1..4", "--format", "json"]))
            .unwrap();
    // Groups of four rows per rate, then the supplementary group.
    let last_c1 = rows[7]["value"].as_f64().unwrap();
    assert!((last_c1 - 2.71815).abs() < 1e-5);

    let rows: Vec<Value> =
        serde_json::from_str(&ok(&["table", "--kind", "sinc", "--grid", "dyadic:1..20", "--format", "json"])).unwrap();
    let values: Vec<f64> = rows.iter().map(|r| r["value"].as_f64().unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] <= w[1]) && values[19] < 1.0);
}

#[test]
fn figures_examples() {
    let v: Value = serde_json::from_str(&ok(&["figures", "--figure", "exp-stretch"])).unwrap();
    assert_eq!(v["figure_id"], "exp-stretch");
    for curve in v["curves"].as_array().unwrap().iter().take(2) {
        let pts = curve["points"].as_array().unwrap();
        assert!(pts.iter().any(|p| p[0].as_f64() == Some(0.0) && p[1].as_f64() == Some(1.0)));
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("elab-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.csv");
    let p = path.to_str().unwrap();
    assert_eq!(ok(&["table", "--kind", "series", "--out", p]), "");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), ok(&["table", "--kind", "series"]));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_single_suites() {
    for suite in ["powcore", "slopes", "series", "binomial", "odesolve", "loginv", "history"] {
        let (code, out, _) = elab(&["verify", "--suite", suite]);
        assert_eq!(code, 0, "{out}");
        assert!(out.lines().last().unwrap().ends_with(" 0 failed"));
    }
}

#[test]
fn verify_failure_names_check() {
    // The supplementary-column check cannot pass: the gap at n = 10^4 is about 1.36e-4.
    let (code, out, err) = elab(&["verify", "--suite", "limits"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL limits/supplementary-near-e"));
    assert!(err.contains("limits/supplementary-near-e"));
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_elab"))
        .args(["estimate", "--method", "compound", "--n", "4", "--format", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("compound,2.4414062500000000"));
    let bad = Command::new(env!("CARGO_BIN_EXE_elab")).arg("table").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
