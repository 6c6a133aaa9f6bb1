use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddform")).args(args).output().expect("spawn oddform")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("oddform-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

#[test]
fn verify_clean_exits_zero() {
    let out = bin(&["verify", "--family", "symplectic", "--mod", "3", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let j = json_of(&out);
    assert_eq!(j["meta"]["command"], "verify");
    assert!(j["results"].as_array().unwrap().iter().all(|e| e["status"] == "pass"));
}

#[test]
fn injected_fault_exits_one() {
    let out = bin(&["verify", "--family", "symplectic", "--mod", "3", "--rank", "2", "--suite", "relations", "--inject", "act-sign"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!json_of(&out)["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn usage_and_precondition_errors_exit_three() {
    assert_eq!(bin(&["verify", "--family", "quaternion"]).status.code(), Some(3));
    assert_eq!(bin(&["verify", "--family", "linear", "--mod", "1"]).status.code(), Some(3));
    assert_eq!(bin(&["reduce", "--family", "symplectic", "--rank", "1", "--element", "identity"]).status.code(), Some(3));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}

#[test]
fn capacity_exits_two() {
    let out = bin(&["enumerate", "--family", "symplectic", "--rank", "2", "--group", "elementary", "--budget-closure", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["results"][0]["status"], "capacity");
}

#[test]
fn ku1_table_even_orth() {
    let out = bin(&["ku1", "--family", "even-orth", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json_of(&out);
    let rows = j["results"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["data"]["KU1"], 2);
    assert_eq!(rows[1]["data"]["KU1"], 2);
    assert_eq!(rows[1]["data"]["surjective"], "PASS");
}

#[test]
fn relative_ku1_runs() {
    let out = bin(&["ku1", "--family", "symplectic", "--mod", "4", "--rank", "1", "--ideal", "principal:2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["results"][0]["data"]["U"], 8);
}

#[test]
fn reduce_all_and_csv() {
    let out = bin(&["reduce", "--family", "even-orth", "--rank", "2", "--all"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["results"].as_array().unwrap().len(), 72);
    let out = bin(&["reduce", "--family", "even-orth", "--rank", "2", "--samples", "5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("name,status"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn descriptor_round_trip_and_corruption() {
    let path = scratch("desc.json");
    let out = bin(&["export", "--family", "odd-orth", "--mod", "3", "--rank", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let p = path.to_str().unwrap();
    assert_eq!(bin(&["verify", "--descriptor", p]).status.code(), Some(0));

    let mut j: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    j["mul"][0][2][0] = Value::from(2);
    let bad = scratch("bad.json");
    std::fs::write(&bad, serde_json::to_string(&j).unwrap()).unwrap();
    assert_eq!(bin(&["verify", "--descriptor", bad.to_str().unwrap()]).status.code(), Some(1));

    let junk = scratch("junk.json");
    std::fs::write(&junk, "{").unwrap();
    assert_eq!(bin(&["verify", "--descriptor", junk.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn reports_are_reproducible() {
    let args = ["reduce", "--family", "symplectic", "--rank", "2", "--samples", "12", "--seed", "4"];
    assert_eq!(bin(&args).stdout, bin(&args).stdout);
}
