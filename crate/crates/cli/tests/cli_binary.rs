//! The `omega` binary end to end: JSON shape, CSV output and exit codes.

use std::process::{Command, Output};

use serde_json::Value;

fn omega(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omega")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn element_trace_json() {
    let out = omega(&["omega", "--gens", "[6,10,14,27]", "--element", "27", "--json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["omega"], 10);
    assert_eq!(v["element"], 27);
    assert_eq!(v["lb0"], 9);
    assert_eq!(v["M"], serde_json::json!([9, 6, 5, 1]));
    assert_eq!(v["mode"], "improved");
    assert_eq!(v["stop"]["reason"], "lower_reached_upper");
    let iterations = v["iterations"].as_array().unwrap();
    assert_eq!(iterations[0]["ps"], serde_json::json!([8, 6, 5, 0]));
    assert_eq!(iterations[0]["ps_value"], 19);
    for key in ["it", "ek", "ek_sum", "lb", "ub"] {
        assert!(iterations[0].get(key).is_some(), "missing {key}");
    }
    for key in ["ubound_scans", "ps_solved", "ek_solved"] {
        assert!(v["counts"][key].is_u64(), "missing count {key}");
    }
}

#[test]
fn global_json() {
    let out = omega(&["omega", "--gens", "6,10,14,27", "--json", "--mode", "baseline"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["values"], serde_json::json!([2, 4, 4, 10]));
    assert_eq!(v["omega"], 10);
    assert_eq!(v["traces"].as_array().unwrap().len(), 4);
    assert_eq!(v["elapsed_ms"].as_array().unwrap().len(), 4);
}

#[test]
fn bench_writes_csv() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli_bench.csv");
    let out = omega(&[
        "bench", "--p", "3", "--count", "3", "--min", "5", "--max", "40", "--seed", "9",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut reader = csv::Reader::from_path(&path).unwrap();
    assert_eq!(
        reader.headers().unwrap(),
        vec!["instance_id", "p", "gens", "mode", "omega", "ubound_scans", "ps_solved", "ek_solved", "ms", "seed"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(&rows[0][3], "improved");
    assert_eq!(&rows[1][3], "baseline");
    assert_eq!(rows[0][4], rows[1][4]);
    assert_eq!(&rows[0][9], "9");
    assert_eq!(&rows[2][9], "10");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("improved: runs=3"));
}

#[test]
fn exit_codes() {
    assert_eq!(omega(&["omega", "--gens", "4,6", "--element", "4"]).status.code(), Some(1));
    assert_eq!(omega(&["omega", "--gens", "3,5", "--element", "4"]).status.code(), Some(1));
    assert_eq!(omega(&["oracle", "--gens", "3,5", "--element", "7"]).status.code(), Some(1));
    assert_eq!(
        omega(&["oracle", "--gens", "3,5", "--element", "3", "--box-cap", "3"]).status.code(),
        Some(2)
    );
    let check = omega(&["check", "--gens", "6,10,14,27"]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(stdout(&check).lines().filter(|l| l.ends_with(" ok")).count(), 4);
    assert_eq!(omega(&["--help"]).status.code(), Some(0));
}
