use std::path::Path;
use std::process::{Command, Output};

use cutbranch_core::{Rational, Scalar};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cutbranch")).args(args).env("CUTBRANCH_THREADS", "1").output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_str().unwrap().to_string();
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    assert_eq!(run(&full).status.code(), Some(0));
    path
}

#[test]
fn generate_is_deterministic() {
    let a = run(&["generate", "random", "--n", "3", "--seed", "7"]);
    let b = run(&["generate", "random", "--n", "3", "--seed", "7"]);
    let c = run(&["generate", "random", "--n", "3", "--seed", "8"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn knapsack_instance() {
    let v = json(&run(&["generate", "knapsack", "--n", "4", "--q", "3"]));
    let text = v.to_string();
    assert!(text.contains("\"4\""), "{text}");
    assert_eq!(run(&["generate", "knapsack", "--n", "4", "--q", "2"]).status.code(), Some(2));
}

#[test]
fn tree_builders() {
    let dir = tempfile::tempdir().unwrap();
    let kp = generate(dir.path(), "kp.json", &["knapsack", "--n", "4"]);
    let s = json(&run(&["tree", "skewed", "--instance", &kp, "--k", "2"]));
    assert_eq!(s["leaves"], 11);
    assert_eq!(s["size"], 21);
    assert_eq!(s["equals_integer_hull"], true);
    assert_eq!(s["j1_census"]["2"], 6);

    let ng = generate(dir.path(), "ng.json", &["nogood", "--n", "3"]);
    let s = json(&run(&["tree", "nogood", "--instance", &ng]));
    assert!(s["size"].as_u64().unwrap() <= 9);
    assert_eq!(s["equals_integer_hull"], true);

    let dot = dir.path().join("t.dot");
    let s = json(&run(&["tree", "skewed", "--instance", &kp, "--k", "1", "--perm", "2,1,3,4", "--format", "dot", "--out", dot.to_str().unwrap()]));
    assert_eq!(s["leaves"], 5);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
}

#[test]
fn relax_operators() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = generate(dir.path(), "k4.json", &["stable-set", "--n", "4"]);
    let v = json(&run(&["relax", "sa", "--instance", &k4, "--t", "1", "--member", "1/3,1/3,1/3,1/3"]));
    assert_eq!(v["member"], true);
    let v = json(&run(&["relax", "sa", "--instance", &k4, "--t", "1", "--member", "1/2,1/2,1/2,0"]));
    assert_eq!(v["member"], false);

    let r3 = generate(dir.path(), "r3.json", &["r3"]);
    let v = json(&run(&["relax", "bk", "--instance", &r3, "--k", "2", "--objective", "0,-1,1"]));
    let best = Rational::parse_text(v["max"]["value"].as_str().unwrap()).unwrap();
    assert!(best > Rational::int(0));
    let v = json(&run(&["relax", "tk", "--instance", &r3, "--k", "2", "--hull"]));
    assert_eq!(v["equal_to_hull"], true);
}

#[test]
fn repro_formats_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let out = run(&["repro", "remark64", "--format", "csv", "--out", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let body = std::fs::read_to_string(&csv).unwrap();
    assert!(body.lines().count() >= 5 && body.starts_with("experiment,id,"));

    assert_eq!(run(&["repro", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "nosuchfamily"]).status.code(), Some(2));
    assert_eq!(run(&["relax", "l", "--instance", "/nonexistent/x.json", "--k", "1"]).status.code(), Some(2));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["relax", "l", "--instance", bad.to_str().unwrap(), "--k", "1"]).status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_cutbranch")).args(["repro", "remark64"]).env("CUTBRANCH_THREADS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // a budget too small to finish leaves checks undecided, which is a claim failure
    assert_eq!(run(&["repro", "remark64", "--budget-vertices", "1", "--budget-subsets", "1"]).status.code(), Some(1));
}

