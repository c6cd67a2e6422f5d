use std::process::{Command, Output};

use serde_json::Value;

fn virasoro(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_virasoro")).args(args).env_remove("CFT_KERNEL_CACHE_DIR").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn gram_level_zero_is_one() {
    let out = virasoro(&["gram", "--level", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["gram"], serde_json::json!([["1"]]));
}

#[test]
fn kac_det_reports_factorization() {
    let out = virasoro(&["kac-det", "--level", "3", "--symbolic"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["K"], "2304");
    let exps: Vec<(u64, u64, u64)> = doc["phi_exponents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["p"].as_u64().unwrap(), e["q"].as_u64().unwrap(), e["exp"].as_u64().unwrap()))
        .collect();
    assert_eq!(exps, [(1, 1, 2), (2, 1, 1), (3, 1, 1)]);
}

#[test]
fn point_evaluation_matches_formula() {
    let doc = json(&virasoro(&["kac-det", "--level", "4", "--c", "1/2", "--h", "1/16"]));
    assert_eq!(doc["det"], "0");
    assert_eq!(doc["formula"], "0");
    assert_eq!(doc["ok"], true);
}

#[test]
fn discrete_series_output() {
    let doc = json(&virasoro(&["discrete-series", "--m", "1"]));
    assert_eq!(doc["c"], "1/2");
    assert_eq!(doc["h"], serde_json::json!(["0", "1/16", "1/16"]));
    let ext = json(&virasoro(&["discrete-series", "--m", "1", "--extended-range"]));
    assert_eq!(ext["points"].as_array().unwrap().len(), 6);
}

#[test]
fn usage_and_limit_errors_exit_two() {
    assert_eq!(virasoro(&["gram", "--level", "13"]).status.code(), Some(2));
    assert_eq!(virasoro(&["kac-det", "--level", "2", "--c", "1"]).status.code(), Some(2));
    assert_eq!(virasoro(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(virasoro(&["delta-check", "--window", "8", "--guard", "2"]).status.code(), Some(2));
    assert_eq!(virasoro(&["--help"]).status.code(), Some(0));
}

#[test]
fn failing_check_exits_one() {
    // dL has weight 3 and cannot be seen on a window of two levels
    let out = virasoro(&["ope", "--cutoff", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["ok"], false);
    assert!(doc["coeffs"][0]["field"].as_str().unwrap().starts_with('?'));
}

#[test]
fn fock_verify_records() {
    let out = virasoro(&["fock-verify", "--cutoff", "5", "--mu", "0,1/2", "--mode-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["ok"] == true));
    let first = &checks[0];
    assert_eq!(first["check"], "fock_bracket");
    assert!(first["counterexample"].is_null());
    assert!(first["mu"].is_string());
}

#[test]
fn csv_output_parses() {
    let out = virasoro(&["--format", "csv", "unitarity-scan", "--c-list", "1/2,2", "--h-list", "0", "--level-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(reader.headers().unwrap().iter().collect::<Vec<_>>(), ["c", "h", "level", "dim", "definiteness", "nullity"]);
    assert_eq!(reader.records().count(), 8);
}

#[test]
fn voa_ope_and_axioms() {
    let doc = json(&virasoro(&["ope", "--cutoff", "6"]));
    assert_eq!(doc["locality_order"], 4);
    let fields: Vec<&str> = doc["coeffs"].as_array().unwrap().iter().map(|c| c["field"].as_str().unwrap()).collect();
    assert_eq!(fields, ["dL", "2L", "0", "(1/2*c)id"]);
    let out = virasoro(&["voa-verify", "--cutoff", "5", "--borcherds-level", "2", "--parallel", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["ok"], true);
}

#[test]
fn quotient_and_cocycle() {
    let doc = json(&virasoro(&["quotient-dims", "--c", "0", "--level-max", "6"]));
    assert_eq!(doc["dims"], serde_json::json!([1, 0, 0, 0, 0, 0, 0]));
    let doc = json(&virasoro(&["cocycle", "--bound", "12"]));
    assert_eq!(doc["ok"], true);
    assert_eq!(doc["n_squared_first_failure"], 2);
}

#[test]
fn kernel_cache_directory_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_virasoro"))
            .args(["kac-det", "--level", "4", "--symbolic"])
            .env("CFT_KERNEL_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    let file = dir.path().join("verma-symbolic.cache");
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("virasoro-kernel-cache v1\n"));
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    std::fs::write(&file, "garbage").unwrap();
    let third = run();
    assert_eq!(third.status.code(), Some(0));
    assert_eq!(third.stdout, first.stdout);
}
