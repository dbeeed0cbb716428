// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

use std::process::Command;

use orthotomic::classify::Clause;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orthotomic"))
}

fn invoke(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../schema/orthotomic.schema.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    jsonschema::JSONSchema::compile(&schema).unwrap()
}

fn assert_valid(doc: &str) -> Value {
    let v: Value = serde_json::from_str(doc).unwrap();
    let schema = schema();
    if let Err(errors) = schema.validate(&v) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("schema violations: {msgs:#?}");
    }
    v
}

#[test]
fn every_command_matches_the_schema() {
    let runs: [&[&str]; 7] = [
        &["frame", "--curve", "small-circle", "--samples", "5"],
        &[
            "frame",
            "--curve",
            "ak-curve",
            "--n",
            "3",
            "--k",
            "1",
            "--samples",
            "3",
        ],
        &[
            "map",
            "--curve",
            "small-circle",
            "--P",
            "-u_2(0)",
            "--samples",
            "5",
        ],
        &["classify", "--curve", "small-circle", "--P", "0,0,1"],
        &["classify", "--curve", "great-circle", "--P", "0,0,1"],
        &[
            "verify",
            "--curve",
            "great-circle",
            "--P",
            "1,0,0",
            "--samples",
            "32",
        ],
        &["catalog"],
    ];
    for args in runs {
        let (_, doc) = invoke(args);
        let v = assert_valid(&doc);
        assert_eq!(v["command"], args[0]);
    }
}

#[test]
fn map_example() {
    let (code, doc) = invoke(&[
        "map",
        "--curve",
        "small-circle",
        "--r",
        "0.8",
        "--P",
        "0,0,1",
        "--samples",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let row: Vec<f64> = doc
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect::<Vec<f64>>())
        .find(|r| r[0] == 0.0)
        .expect("s = 0 row");
    let expected = [0.8, 0.0, 0.6, 0.96, 0.0, -0.28];
    for (x, y) in row[1..7].iter().zip(expected) {
        assert!((x - y).abs() < 1e-12, "{row:?}");
    }
}

#[test]
fn classify_example() {
    let (code, doc) = invoke(&[
        "classify",
        "--curve",
        "small-circle",
        "--r",
        "0.8",
        "--P",
        "gamma(0)",
        "--s0",
        "0",
    ]);
    assert_eq!(code, 0);
    let v = assert_valid(&doc);
    assert_eq!(v["result"]["exponents"], serde_json::json!([2, 3]));
    assert_eq!(v["result"]["source"], Clause::RegularDualLower.label());
}

#[test]
fn verify_example_passes() {
    let (code, doc) = invoke(&["verify", "--curve", "great-circle", "--P", "1,0,0"]);
    assert_eq!(code, 0);
    let v = assert_valid(&doc);
    assert_eq!(v["passed"], true);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn exit_codes() {
    assert_eq!(
        invoke(&["classify", "--curve", "great-circle", "--P", "0,0,1"]).0,
        2
    );
    assert_eq!(
        invoke(&["verify", "--curve", "great-circle", "--n", "3", "--P", "1,0,0,0"]).0,
        1
    );
    assert_eq!(invoke(&["map", "--curve", "nope", "--P", "0,0,1"]).0, 1);
    assert_eq!(invoke(&["map", "--curve", "small-circle", "--P", "0,0,3"]).0, 1);
    assert_eq!(
        invoke(&["map", "--curve", "small-circle", "--P", "0,0,1", "--s0", "7"]).0,
        1
    );
    assert_eq!(invoke(&["map", "--curve", "small-circle"]).0, 1);
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("orthotomic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("frame.csv");
    let args = [
        "frame",
        "--curve",
        "small-circle",
        "--samples",
        "7",
        "--format",
        "csv",
    ];
    let (_, stdout) = invoke(&args);
    let mut with_file = args.to_vec();
    let p = path.to_str().unwrap();
    with_file.extend(["--output", p]);
    let (code, empty) = invoke(&with_file);
    assert_eq!(code, 0);
    assert!(empty.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn csv_reals_round_trip() {
    let (_, doc) = invoke(&[
        "frame",
        "--curve",
        "small-circle",
        "--r",
        "0.5",
        "--samples",
        "3",
        "--format",
        "csv",
    ]);
    let header = doc.lines().next().unwrap();
    assert!(header.starts_with("s,u0_0,u0_1,u0_2,u1_0"));
    assert!(header.ends_with("kappa_1,kappa_2"));
    for line in doc.lines().skip(1) {
        for cell in line.split(',') {
            let x: f64 = cell.parse().unwrap();
            assert_eq!(format!("{x:.16e}"), cell);
        }
    }
}

#[test]
fn schema_rejects_tampered_documents() {
    let (_, doc) = invoke(&["classify", "--curve", "small-circle", "--P", "0,0,1"]);
    let mut v: Value = serde_json::from_str(&doc).unwrap();
    v["result"]["equivalence"] = Value::from("C");
    assert!(!schema().is_valid(&v));
    v.as_object_mut().unwrap().remove("schema_version");
    assert!(!schema().is_valid(&v));
}
