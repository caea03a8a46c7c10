use std::process::Command;

use serde_json::Value;

fn torelli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_torelli")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let (c, s) = torelli(&a);
    (c, serde_json::from_str(&s).unwrap_or(Value::Null))
}

#[test]
fn counts_genus_twenty() {
    let (code, text) = torelli(&["counts", "--genus", "20"]);
    assert_eq!(code, 0);
    assert!(text.contains("64980") && text.contains("1236950579682"));
    let (_, v) = json(&["counts", "--genus", "3"]);
    assert_eq!(v["theorem_bound"]["closed"], 57);
    assert_eq!(v["theorem_bound"]["one_boundary"], 64);
    assert_eq!(v["johnson_bound"]["closed"], "36");
}

#[test]
fn gens_genus_three() {
    let (code, v) = json(&["gens", "--genus", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["total"], 35);
    assert_eq!(v["bound"], 57);
    assert_eq!(v["generators"].as_array().unwrap().len(), 35);
    assert!(v["claim"].as_str().unwrap().contains("necessary conditions only"));
    let (_, v) = json(&["gens", "--genus", "4", "--compare-johnson"]);
    assert_eq!(v["total"], 168);
    assert_eq!(v["johnson_bound"], "226");
}

#[test]
fn gens_to_file() {
    let p = std::env::temp_dir().join(format!("torelli-gens-{}.json", std::process::id()));
    let (code, _) = torelli(&["gens", "--genus", "3", "--boundary", "--matrices", "--out", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["variant"], "one_boundary");
    assert_eq!(v["total"], 35 + 7);
    assert!(v["generators"][0]["matrix"].is_array());
    std::fs::remove_file(&p).ok();
}

#[test]
fn rewrite_command() {
    let (code, v) = json(&["rewrite", "--rank", "3", "--verify", "X1 X3 X2 x1 x2 x3"]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"], true);
    let f = v["factors"].as_array().unwrap();
    assert_eq!(f.len(), 2);
    assert_eq!(f[0]["i"], 1);
    assert_eq!(f[0]["j"], 3);
    assert_eq!(f[1]["tail"], serde_json::json!([0, 0, 1]));
    let (code, _) = json(&["rewrite", "--rank", "4", "--order", "3,4,1,2", "a1 b2 A1 B2"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(torelli(&["counts", "--genus", "2"]).0, 2);
    assert_eq!(torelli(&["rewrite", "--rank", "2", "a1"]).0, 2);
    assert_eq!(torelli(&["rewrite", "--rank", "3", "--order", "1,1,2", "a1 A1"]).0, 2);
    assert_eq!(torelli(&["no-such-command"]).0, 2);
    assert_eq!(torelli(&["handle-graph", "--genus", "3", "--a", "alpha_1", "--b", "alpha_2"]).0, 2);
}

#[test]
fn catalog_and_johnson() {
    assert_eq!(torelli(&["catalog", "validate", "--genus", "4"]).0, 0);
    let (code, v) = json(&["catalog", "export", "--genus", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["format"], "torelli-curve-catalog");
    let (_, v) = json(&["johnson", "rank", "--genus", "3", "--closed"]);
    assert_eq!(v["rank"], 20);
    assert_eq!(v["closed_rank"], 14);
}

#[test]
fn handle_graph_path() {
    let (code, v) = json(&["handle-graph", "--genus", "3", "--a", "alpha_1", "--b", "beta_1", "--path", "alpha_1", "alphap_1"]);
    assert_eq!(code, 0);
    assert_eq!(v["components"], 1);
    assert_eq!(v["path"], serde_json::json!(["alpha_1", "beta_1", "alphap_1"]));
}

#[test]
fn catalog_env_override() {
    let p = std::env::temp_dir().join(format!("torelli-bad-{}.json", std::process::id()));
    std::fs::write(&p, "{}").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_torelli"))
        .args(["catalog", "validate", "--genus", "3"])
        .env("TORELLI_CATALOG", &p)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&p).ok();
}

#[test]
fn verify_all_is_deterministic() {
    let args = ["--json", "verify-all", "--genus", "3", "--seed", "11", "--case-bound", "1"];
    let (c1, a) = torelli(&args);
    let (c2, b) = torelli(&["--json", "verify-all", "--genus", "3", "--seed", "11", "--case-bound", "1", "--threads", "1"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
}
