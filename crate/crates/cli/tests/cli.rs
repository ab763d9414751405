use std::process::{Command, Output};

use serde_json::Value;

fn nccr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nccr"))
        .args(args)
        .env_remove("NCCR_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn coh_p_object_diagonal() {
    let out = nccr(&["coh", "--n", "3", "--bundle", "omega(1,0)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["cohomology"], serde_json::json!({"1": 1}));
    assert!(v["paper_anchor"].is_string());
}

#[test]
fn coh_sum_with_coefficients() {
    let out = nccr(&["coh", "--n", "3", "--bundle", "2*O(1) + hom(1,2,0)"]);
    assert_eq!(json(&out)["cohomology"], serde_json::json!({"0": 9}));
}

#[test]
fn malformed_bundle_reports_position() {
    let out = nccr(&["coh", "--n", "3", "--bundle", "O(1) +\nomega(1;0)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2, column 8"), "{}", stderr(&out));
}

#[test]
fn out_of_range_reports_valid_range() {
    let out = nccr(&["coh", "--n", "3", "--bundle", "hom(4,1,0)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("1..=3"), "{}", stderr(&out));
    let out = nccr(&["tilting", "--n", "3", "--family", "Sk", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_rank_is_usage_error() {
    let out = nccr(&["coh", "--bundle", "O(1)"]);
    assert_eq!(out.status.code(), Some(2));
    let out = nccr(&["coh", "--n", "1", "--bundle", "O(1)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flop_flop_identity() {
    let out = nccr(&["kflop", "--flopflop", "--n", "4", "--k", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["product"][2], serde_json::json!([0, 0, 1, 0]));
}

#[test]
fn quiver_compare_rank_two() {
    let out = nccr(&["quiver", "--compare", "--n", "2", "--max-len", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["mismatches"], serde_json::json!([]));
}

#[test]
fn csv_schema() {
    let out = nccr(&["quiver", "--dims", "--n", "2", "--max-len", "2", "--output", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("a,b,len,paths,relation_rank,dim"));
    assert_eq!(lines.count(), 12);
}

#[test]
fn ledger_and_orbit() {
    let out = nccr(&["kflop", "--ptwist-ledger", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let out = nccr(&["mutate", "--orbit", "--n", "3", "--cap", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 4);
    for key in ["k", "summands", "approximation_term", "hilbert_checks"] {
        assert!(steps[0].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn sampling_is_deterministic() {
    let args = ["rep", "--sample", "5", "--n", "4", "--seed", "11"];
    let a = nccr(&args);
    let b = nccr(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn rep_rejects_bad_triple() {
    let out = nccr(&["rep", "--alpha", "1,0", "--beta", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("nccr.toml");
    std::fs::write(&cfg, "n = 3\ncap = 2\noutput = \"csv\"\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let out = nccr(&["hilbert", "--config", cfg, "--module", "M(1)"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "degree,dim\n0,3\n1,15\n2,42\n");

    let out = nccr(&["hilbert", "--config", cfg, "--module", "M(1)", "--cap", "0", "--output", "json"]);
    assert_eq!(json(&out)["dims"], serde_json::json!([3]));

    let target = dir.path().join("out");
    let out = Command::new(env!("CARGO_BIN_EXE_nccr"))
        .args(["coh", "--config", cfg, "--bundle", "O(0)"])
        .env("NCCR_OUT_DIR", &target)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(target.join("coh.csv")).unwrap(), "degree,dim\n0,1\n");

    std::fs::write(dir.path().join("bad.toml"), "rank = 3\n").unwrap();
    let out = nccr(&["coh", "--config", dir.path().join("bad.toml").to_str().unwrap(), "--bundle", "O(0)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn accept_subset() {
    let out = nccr(&["accept", "--only", "5,6", "--output", "pretty"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("criterion  5 PASS"));
    assert_eq!(text.lines().count(), 2);
    assert_eq!(nccr(&["accept", "--only", "11"]).status.code(), Some(2));
}
