use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypermatch")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn golden(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name).display().to_string()
}

#[test]
fn solve_complete_four_vertex_triple_system() {
    let out = json(&["solve", &fixture("k4.hg")]);
    let p = &out["payload"];
    assert_eq!(p["nu"], 1);
    assert_eq!(p["nu_star"], "4/3");
    assert_eq!(p["tau_star"], "4/3");
    assert_eq!(p["tau"], 2);
    assert_eq!(*p, golden("solve_k4.json"));
    assert!(out["command"].as_str().unwrap().starts_with("solve "));
    assert!(out.get("seed").is_none());
}

#[test]
fn solve_csv() {
    let out = run(&["solve", &fixture("k4.hg"), "--csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "quantity,value\nnu,1\nnu_star,4/3\ntau_star,4/3\ntau,2\n");
}

#[test]
fn threshold_golden_and_witness_file() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("w.hg");
    let out = json(&[
        "threshold", "--mode", "integral", "--k", "2", "--n", "4", "--d", "1", "--s", "2",
        "--witness", witness.to_str().unwrap(),
    ]);
    let mut p = out["payload"].clone();
    assert!(p["runtime_seconds"].as_f64().unwrap() >= 0.0);
    p.as_object_mut().unwrap().remove("runtime_seconds");
    assert_eq!(p, golden("threshold_m1_2_4.json"));
    assert_eq!(std::fs::read_to_string(witness).unwrap(), "2 4\n0 1\n0 2\n0 3\n");
}

#[test]
fn threshold_is_independent_of_jobs() {
    let args = ["threshold", "--mode", "fractional", "--k", "2", "--n", "6", "--d", "1", "--s", "3"];
    let one = json(&[&["--jobs", "1"], &args[..]].concat());
    let four = json(&[&["--jobs", "4"], &args[..]].concat());
    assert_eq!(one["payload"]["witness"], four["payload"]["witness"]);
    assert_eq!(one["payload"]["value"], four["payload"]["value"]);
}

#[test]
fn budget_exceeded_is_a_computational_error() {
    let out = run(&["threshold", "--mode", "integral", "--k", "3", "--n", "7", "--d", "1", "--s", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget exceeded"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "h1", "--k", "3", "--n", "6"]).status.code(), Some(2));
    assert_eq!(run(&["samuels", "qt", "--l", "3", "--x", "1/2", "--t", "0"]).status.code(), Some(2));
    assert_eq!(run(&["conjecture", "no-such-context", "--k", "3"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn samuels_commands() {
    let scan = json(&["samuels", "scan", "--l", "3"]);
    let x = scan["payload"]["x_star"].as_f64().unwrap();
    assert!((x - 0.277).abs() < 1e-3);
    let qt = json(&["samuels", "qt", "--mus", "1/10,1/5,3/10", "--t", "1"]);
    assert_eq!(qt["payload"]["q_t"], "14/27");
    let qmin = json(&["samuels", "qmin", "--l", "3", "--x", "0.3"]);
    assert_eq!(qmin["payload"]["argmin"], 2);
    assert_eq!(qmin["payload"]["q_min"], "1/4");
    let mc = json(&["samuels", "mc", "--l", "3", "--x", "1/5", "--t", "0", "--samples", "20000"]);
    assert_eq!(mc["seed"], 0);
    assert!((mc["payload"]["estimate"].as_f64().unwrap() - 0.512).abs() < 0.02);
    let csv = run(&["samuels", "scan", "--l", "2", "--csv"]);
    assert!(String::from_utf8(csv.stdout).unwrap().starts_with("x,q0,min_t_ge_1\n"));
}

#[test]
fn storage_commands() {
    let dir = tempfile::tempdir().unwrap();
    let alloc = dir.path().join("a.wt");
    std::fs::write(&alloc, "1\n1\n0\n0\n").unwrap();
    let phi = json(&["storage", "phi", "--r", "2", "--alloc", alloc.to_str().unwrap()]);
    assert_eq!(phi["payload"]["phi"], 5);
    assert_eq!(phi["payload"]["success_probability"], "5/6");
    let cand = json(&["storage", "candidates", "--n", "10", "--r", "2", "--T", "4"]);
    let phis: Vec<u64> = cand["payload"].as_array().unwrap().iter().map(|a| a["phi"].as_u64().unwrap()).collect();
    assert_eq!(phis, vec![28, 30]);
    let best = dir.path().join("best.wt");
    let opt = json(&["storage", "optimize", "--n", "5", "--r", "2", "--T", "2", "--out", best.to_str().unwrap()]);
    assert_eq!(opt["payload"]["phi"], 7);
    assert_eq!(opt["payload"]["q"], 4);
    assert_eq!(std::fs::read_to_string(best).unwrap(), "1/1\n1/1\n0/1\n0/1\n0/1\n");
}

#[test]
fn construct_and_conjecture() {
    let out = run(&["construct", "h0", "--k", "2", "--n", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("2 4\n"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h1.hg");
    let made = json(&["construct", "h1", "--k", "3", "--n", "6", "--s", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(made["payload"]["edges"], 10);
    let solved = json(&["solve", path.to_str().unwrap()]);
    assert_eq!(solved["payload"]["nu"], 1);
    let conj = json(&["conjecture", "erdos-matching", "--k", "3", "--n", "6", "--s", "2"]);
    assert_eq!(conj["payload"]["count"], 11);
}

#[test]
fn reduce_command() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.wt");
    std::fs::write(&w, "1/10\n1/5\n2/5\n1/2\n").unwrap();
    let out = dir.path().join("out.wt");
    let r = json(&["reduce", "--weights", w.to_str().unwrap(), "--k", "3", "--d", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(r["payload"]["core"], serde_json::json!([0]));
    assert_eq!(r["payload"]["link_cover_valid"], true);
    assert_eq!(std::fs::read_to_string(out).unwrap(), "0/1\n1/7\n3/7\n4/7\n");
    std::fs::write(&w, "1/3\n1/3\n1/3\n").unwrap();
    let bad = run(&["reduce", "--weights", w.to_str().unwrap(), "--k", "3", "--d", "1"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn randcons_reports_checks_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("base.hg");
    let made = run(&["construct", "clique", "--k", "3", "--n", "12", "--s", "4", "--out", base.to_str().unwrap()]);
    assert!(made.status.success());
    let out = json(&[
        "randcons", "--base", base.to_str().unwrap(), "--p", "0.5", "--rounds", "5", "--seed", "3",
        "--policy", "per-round-copies",
    ]);
    assert_eq!(out["seed"], 3);
    assert_eq!(out["payload"]["recount_verified"], true);
    assert!(out["payload"]["checks"]["edge_membership"]["passed"].is_boolean());
    assert_eq!(out["payload"]["round_two"]["degree_decomposition"], true);
    let again = json(&[
        "randcons", "--base", base.to_str().unwrap(), "--p", "0.5", "--rounds", "5", "--seed", "3",
        "--policy", "per-round-copies",
    ]);
    assert_eq!(out["payload"], again["payload"]);
}

#[test]
fn selftest_single_criterion() {
    let out = run(&["selftest", "--only", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS]") && text.contains("1/1 criteria passed"));
    assert_eq!(run(&["selftest", "--only", "42"]).status.code(), Some(2));
}
