use std::process::{Command, Output};

use volpow::experiment::{from_json, to_json, ExperimentReport};
use volpow::moments::MomentTable;

fn volpow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_volpow")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn simulate_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = volpow(&[
        "simulate", "--dim", "1", "--t", "300", "--delta", "0.003", "--spec", "1:0,1:1", "--reps", "400", "--seed",
        "3", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let report: ExperimentReport = from_json(&text).unwrap();
    assert_eq!(report.summaries[0].reps, 400);
    assert!(report.all_pass());
    assert_eq!(to_json(&report).unwrap(), text);
}

#[test]
fn csv_rows_carry_the_config() {
    let o = volpow(&["simulate", "--dim", "2", "--t", "20", "--delta", "0.2", "--reps", "3", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# config: {"));
    assert_eq!(lines.next().unwrap(), "rep_id,complex,k,alpha,value,f_k,t,delta,seed");
    assert_eq!(lines.count(), 3);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&volpow(&["simulate", "--t", "10"])), 2);
    assert_eq!(code(&volpow(&["simulate", "--t", "10", "--delta", "0.1", "--regime", "1,0.5"])), 2);
    assert_eq!(code(&volpow(&["simulate", "--t", "10", "--delta", "-1"])), 2);
    assert_eq!(code(&volpow(&["predict", "--dim", "2", "--t", "10", "--delta", "0.1", "--spec", "3:1"])), 2);
    assert_eq!(code(&volpow(&["predict", "--t", "10", "--delta", "0.1", "--spec", "1:x"])), 2);
}

#[test]
fn missing_constant_is_a_runtime_error() {
    let o = volpow(&["predict", "--dim", "2", "--t", "100", "--delta", "0.05", "--spec", "1:0,2:0"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("mu"));
}

#[test]
fn moments_cache_feeds_predict() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("moments.json");
    let cache = cache.to_str().unwrap();
    let base = ["--dim", "2", "--t", "100", "--delta", "0.05", "--spec", "1:0,2:0", "--moments-cache", cache];
    let o = volpow(&[&["moments", "--samples", "20000"], &base[..]].concat());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let first = std::fs::read_to_string(cache).unwrap();
    assert_eq!(MomentTable::from_json(&first).unwrap().len(), 3);

    // cached entries are reused, not re-estimated
    assert_eq!(code(&volpow(&[&["moments", "--samples", "50000"], &base[..]].concat())), 0);
    assert_eq!(std::fs::read_to_string(cache).unwrap(), first);

    let o = volpow(&[&["predict"], &base[..]].concat());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let e = v[0]["expectations"][0]["value"].as_f64().unwrap();
    assert!((e - std::f64::consts::PI / 2.0 * 100.0 * 100.0 * 0.05 * 0.05).abs() < 1e-9);
}

#[test]
fn compare_reports_no_violations() {
    let o = volpow(&["compare", "--dim", "2", "--t", "60", "--delta", "0.15", "--reps", "5"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn clt_needs_a_schedule() {
    assert_eq!(code(&volpow(&["clt", "--t", "50,100", "--delta", "0.1"])), 2);
    let o = volpow(&["clt", "--dim", "1", "--t", "50,100", "--regime", "1,1", "--reps", "60", "--spec", "1:0"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}
