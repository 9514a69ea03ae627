use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bglab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bglab"))
        .args(args)
        .env_remove("BGLAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("stdout is JSON")
}

fn build(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_str().unwrap().to_string();
    let mut all = vec!["build"];
    all.extend_from_slice(args);
    all.extend(["--out", &path]);
    let out = bglab(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn size(path: &str) -> u64 {
    let v: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    v["size"].as_u64().unwrap()
}

#[test]
fn build_sizes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(size(&build(dir.path(), "p.json", &["power-semiring", "--group", "S3"])), 64);
    assert_eq!(size(&build(dir.path(), "b.json", &["b21"])), 6);
    assert_eq!(size(&build(dir.path(), "h.json", &["hall", "--n", "2"])), 7);
    let out = bglab(&["build", "b21"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("6 elements"));
}

#[test]
fn bad_construction_exits_nonzero() {
    assert_eq!(bglab(&["build", "brandt", "--group", "S9", "--n", "2"]).status.code(), Some(2));
    assert_eq!(bglab(&["build", "group", "--group", "X3"]).status.code(), Some(2));
    assert_eq!(bglab(&["build", "subset-b", "--h", "e,(123),(132)"]).status.code(), Some(2));
}

#[test]
fn round_trip_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let cases: &[(&str, &[&str])] = &[
        ("b21.json", &["b21"]),
        ("s3.json", &["group", "--group", "S3"]),
        ("brandt.json", &["brandt", "--group", "C2", "--n", "3"]),
        ("power.json", &["power-semiring", "--group", "C3", "--nonempty"]),
        ("inv.json", &["involution-power", "--group", "S3"]),
        ("inv-add.json", &["involution-power", "--group", "C2", "--with-add"]),
        ("hall.json", &["hall", "--n", "2", "--no-star"]),
        ("kad.json.gz", &["kadourek", "--n", "2", "--h", "1"]),
        ("subset.json", &["subset-b"]),
    ];
    for (name, args) in cases {
        let first = build(dir.path(), name, args);
        assert!(bglab(&["analyze", &first]).status.success(), "{name}");
        let again = dir.path().join(format!("again-{name}"));
        let out = bglab(&["build", "--from-meta", &first, "--out", again.to_str().unwrap()]);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(fs::read(&first).unwrap(), fs::read(&again).unwrap(), "{name}");
    }
}

#[test]
fn analyze_reports() {
    let dir = TempDir::new().unwrap();
    let b = build(dir.path(), "b.json", &["b21"]);
    let r = json(&bglab(&["analyze", &b]));
    for (key, want) in [("h", 2), ("m", 1), ("k", 1), ("q", 4), ("r", 5)] {
        assert_eq!(r[key], want, "{key}");
    }
    assert_eq!(r["block_group"], true);
    assert_eq!(r["series"].as_array().unwrap().len(), 3);

    let g = build(dir.path(), "g.json", &["group", "--group", "S3"]);
    let r = json(&bglab(&["analyze", &g]));
    assert_eq!(r["solvable"], true);
    assert_eq!(r["derived_length"], 2);
    assert_eq!(r["dedekind"], false);
}

#[test]
fn analyze_rejects_bad_files() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"kind":"semigroup","size":2,"labels":["a","b"],"mul":[[0,7],[1,1]]}"#).unwrap();
    assert_eq!(bglab(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));

    // (a·a)·b = b·b = a but a·(a·b) = a·a = b.
    fs::write(&bad, r#"{"kind":"semigroup","size":2,"labels":["a","b"],"mul":[[1,0],[0,0]]}"#).unwrap();
    let out = bglab(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["violation"]["law"], "mul-associative");

    assert_eq!(bglab(&["analyze", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn words_dsl_and_json() {
    let out = bglab(&["words", "v", "--n", "1", "--m", "1", "--h", "2"]);
    assert_eq!(stdout(&out).split_whitespace().count(), 16);
    let out = bglab(&["words", "u", "--n", "2", "--k", "1", "--m", "2"]);
    assert_eq!(stdout(&out).split_whitespace().count(), 12);
    let out = bglab(&["words", "w", "--n", "2", "--h", "2", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["letters"].as_array().unwrap().len(), 16);
    assert_eq!(v["alphabet"].as_array().unwrap().len(), 4);
    assert_eq!(v["letters"][0]["indices"], serde_json::json!([1, 1]));
    assert_eq!(v["letters"][15]["exp"], -1);
    let out = bglab(&["words", "zeta", "--n", "1", "--m", "1", "--h", "1", "--r", "1"]);
    assert_eq!(stdout(&out).split_whitespace().count(), 16);
    assert_eq!(bglab(&["words", "v", "--n", "1", "--m", "1", "--h", "0"]).status.code(), Some(2));
    assert_eq!(bglab(&["words", "u", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let b = build(dir.path(), "b.json", &["b21"]);
    let out = bglab(&["check", "--algebra", &b, "--identity", "x1 x2 = x2 x1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "counterexample");
    assert_eq!(v["witness"]["x1"], "a");
    assert_eq!(v["witness"]["x2"], "b");

    let out = bglab(&["check", "--algebra", &b, "--identity", "x1^2 = x1^4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "holds");

    let out = bglab(&["check", "--algebra", &b, "--identity", "v[2,2,3] = v[2,2,3]^2", "--mode", "block"]);
    assert_eq!(out.status.code(), Some(0));

    let out = bglab(&["check", "--algebra", &b, "--identity", "x1 x2 x3 x4 = x4", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["attempted"], "1296");

    let out = bglab(&["check", "--algebra", &b, "--identity", "x1 = = x2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_env_override() {
    let dir = TempDir::new().unwrap();
    let b = build(dir.path(), "b.json", &["b21"]);
    let out = Command::new(env!("CARGO_BIN_EXE_bglab"))
        .args(["check", "--algebra", &b, "--identity", "x1 x2 x3 = x3"])
        .env("BGLAB_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_domains_and_sampling() {
    let dir = TempDir::new().unwrap();
    let b = build(dir.path(), "b.json", &["b21"]);
    let idem = dir.path().join("idem.txt");
    fs::write(&idem, "0 1 e f").unwrap();
    // Idempotents of B21 commute.
    let spec = format!("*={}", idem.display());
    let out = bglab(&["check", "--algebra", &b, "--identity", "x1 x2 = x2 x1", "--domain", &spec]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["evaluations"], "16");

    let only = dir.path().join("only.json");
    fs::write(&only, r#"["a"]"#).unwrap();
    let spec = format!("x1={}", only.display());
    let out = bglab(&["check", "--algebra", &b, "--identity", "x1 x2 = x2 x1", "--domain", &spec]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["witness"]["x2"], "b");

    let args = ["check", "--algebra", &b, "--identity", "x1 x2 = x2 x1", "--mode", "sampled", "--seed", "7"];
    let first = bglab(&args);
    assert_eq!(first.status.code(), Some(1));
    assert_eq!(json(&first)["seed"], 7);
    assert_eq!(first.stdout, bglab(&args).stdout);
}

#[test]
fn verify_suite_quick() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("suite.json");
    let out = bglab(&["verify-suite", "--profile", "quick", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let report: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    let ids: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted);
    assert_eq!(bglab(&["verify-suite", "--profile", "huge"]).status.code(), Some(2));
}
