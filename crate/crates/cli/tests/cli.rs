use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topomarkov"))
        .args(args)
        .env_remove("TOPOMARKOV_MAX_DEPTH")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn mu_queries() {
    assert!(stdout(&["mu", "1/2"]).starts_with("mu(1/2) = 2/5\n"));
    assert!(stdout(&["mu", "0/1"]).starts_with("mu(0/1) = 0/1\n"));
    let v = json(&["mu", "4/5", "--json"]);
    assert_eq!(v["mu"], "408/985");
    assert_eq!(v["path"], "RRR");
    assert_eq!(v["markov_number"], "985");
    assert_eq!(json(&["mu", "1", "--json"])["mu"], "1/2");
}

#[test]
fn triple_query() {
    let v = json(&["triple", "1/3", "--json"]);
    assert_eq!(
        v["triple"],
        serde_json::json!({"x": "1", "y": "5", "z": "13"})
    );
    assert_eq!(v["path"], "L");
}

#[test]
fn cohn_queries() {
    assert!(stdout(&["cohn", "1/2", "--a", "1"]).starts_with("[[7,5],[11,8]]\n"));
    assert!(stdout(&["cohn", "0/1", "--a", "2"]).starts_with("[[2,1],[1,1]]\n"));
    let v = json(&["cohn", "1/2", "--a", "0", "--json"]);
    assert_eq!(v["matrix"], serde_json::json!([["2", "5"], ["5", "13"]]));
    assert_eq!(v["index"], "2/5");
    assert_eq!(v["trace_map"], "5");
    let v = json(&["cohn", "1/2", "--a", "-2", "--json"]);
    assert_eq!(v["index"], "-8/5");
}

#[test]
fn cf_queries() {
    assert_eq!(stdout(&["cf", "1/2"]), "[2,2,1,1] = 12/5\n");
    assert_eq!(
        stdout(&["cf", "1/3", "--periodic"]),
        "~[2,2,1,1,1,1] = (23+√1517)/26\n"
    );
    assert_eq!(
        stdout(&["cf", "1/2", "--companion", "2"]),
        "gamma_2^-(1/2) = 179/75\n"
    );
    let v = json(&["cf", "1/2", "--periodic", "--json"]);
    assert_eq!(
        v["value"],
        serde_json::json!({"P": "9", "B": "1", "Q": "10", "D": "221"})
    );
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        &["mu", "3/2"][..],
        &["mu", "abc"],
        &["mu", "1/0"],
        &["cf", "1/2", "--companion", "0"],
        &["triple", "0/1"],
        &["tree", "farey", "--depth", "13"],
        &["tree", "farey", "--max-depth", "25"],
        &["tree", "markov", "--a", "1"],
        &["verify", "--suite", "nope"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn depth_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_topomarkov"))
        .args(["tree", "farey", "--depth", "13", "--format", "csv"])
        .env("TOPOMARKOV_MAX_DEPTH", "13")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().lines().count(),
        1 + (1 << 14) - 1
    );
}

#[test]
fn tree_exports() {
    let v = json(&["tree", "markov", "--depth", "2"]);
    let values: Vec<&str> = v["nodes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n["value"].as_str().unwrap())
        .collect();
    assert_eq!(values.len(), 7);
    for f in ["75/194", "13/34", "179/433", "70/169"] {
        assert!(values.contains(&f));
    }
    assert_eq!(
        stdout(&["tree", "farey", "--depth", "1", "--format", "csv"]),
        "path,value,left,right\n-,1/2,0/1,1/1\nL,1/3,0/1,1/2\nR,2/3,1/2,1/1\n"
    );
    let v = json(&["tree", "irrational", "--depth", "1"]);
    let ds: Vec<&str> = v["nodes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n["value"]["D"].as_str().unwrap())
        .collect();
    assert_eq!(ds, ["221", "7565", "1517"]);
    let v = json(&["tree", "cohn", "--depth", "0", "--a", "1"]);
    assert_eq!(v["a"], 1);
    assert!(stdout(&["tree", "cf", "--depth", "1", "--format", "dot"]).contains("seedL -- seedR;"));
}

#[test]
fn exports_are_deterministic_and_parallel_safe() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    stdout(&[
        "tree",
        "cohn",
        "--depth",
        "6",
        "--a",
        "2",
        "--out",
        a.to_str().unwrap(),
    ]);
    stdout(&[
        "tree",
        "cohn",
        "--depth",
        "6",
        "--a",
        "2",
        "--parallel",
        "--out",
        b.to_str().unwrap(),
    ]);
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let parsed: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(parsed["nodes"].as_array().unwrap().len(), 127);
}

#[test]
fn unwritable_output_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.json");
    let out = run(&[
        "tree",
        "farey",
        "--depth",
        "1",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_suites() {
    let v = json(&[
        "verify", "--suite", "thm31", "--depth", "6", "--a", "0", "--json",
    ]);
    assert_eq!(v[0]["passed"], true);
    assert_eq!(v[0]["nodes"], 127);
    let v = json(&["verify", "--suite", "thm41", "--depth", "6", "--json"]);
    assert_eq!(v[0]["passed"], true);
    assert_eq!(v[0]["nodes"], 127);
    let v = json(&[
        "verify",
        "--suite",
        "frobenius-scan",
        "--depth",
        "12",
        "--json",
    ]);
    assert_eq!(v[0]["params"]["distinct"], "8191");
    let text = stdout(&["verify", "--depth", "3", "--parallel"]);
    assert_eq!(text.matches(": PASS").count(), 8);
}
