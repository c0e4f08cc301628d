use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nshadow")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nshadow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn shift_check_exit_codes() {
    let ok = run(&["shift", "check", "--def", "builtin:even", "--word", "1001"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["allowed"], true);
    let bad = run(&["shift", "check", "--def", "builtin:even", "--word", "101"]);
    assert_eq!(bad.status.code(), Some(1));
    let unknown = run(&["shift", "check", "--def", "builtin:even", "--word", "2"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert_eq!(run(&["shift", "check", "--def", "builtin:nope", "--word", "0"]).status.code(), Some(2));
    assert_eq!(run(&["shift", "frobnicate"]).status.code(), Some(2));
}

#[test]
fn shift_words_counts_fibonacci() {
    let out = run(&["shift", "words", "--def", "builtin:golden", "-n", "5"]);
    assert_eq!(json(&out)["count"], 13);
}

#[test]
fn mixing_commands() {
    let pass = run(&["mixing", "verify", "--def", "builtin:even", "-M", "2", "-L", "4"]);
    assert_eq!(pass.status.code(), Some(0));
    let fail = run(&["mixing", "verify", "--def", "builtin:even", "-M", "1", "-L", "4"]);
    assert_eq!(fail.status.code(), Some(1));
    let v = json(&fail);
    assert_eq!(v["verdict"]["u"]["text"], "10");
    assert_eq!(v["verdict"]["v"]["text"], "01");
    let exp = run(&["mixing", "exponent", "--def", "builtin:full2"]);
    assert_eq!(json(&exp)["exponent"], 1);
    let none = run(&["mixing", "exponent", "--def", "builtin:two-loop"]);
    assert_eq!(none.status.code(), Some(1));
    let witness = run(&["mixing", "witness", "--def", "builtin:two-loop", "-L", "2"]);
    assert_eq!(witness.status.code(), Some(0));
    assert_eq!(json(&witness)["witness"]["v"]["text"], "2");
}

#[test]
fn qft_commands() {
    let h = run(&["qft", "verify", "--def", "builtin:four-vertex", "-M", "5", "-L", "4", "--nmax", "8"]);
    assert_eq!(h.status.code(), Some(0), "{}", String::from_utf8_lossy(&h.stdout));
    let search = run(&["qft", "search", "--def", "builtin:golden", "-L", "3", "--nmax", "5", "--max", "3"]);
    assert_eq!(json(&search)["qft_number"], 1);
}

#[test]
fn splice_construct_verify_round_trip() {
    let po = scratch("po.json");
    let set = scratch("set.json");
    let po_s = po.to_str().unwrap();
    let set_s = set.to_str().unwrap();
    let splice = run(&["shadow", "splice", "--def", "builtin:even", "--seed", "4", "--delta", "16", "--first", "-50", "--last", "50", "--out", po_s]);
    assert_eq!(splice.status.code(), Some(0));
    for method in ["mixing", "qft"] {
        let built = run(&["shadow", "construct", "--def", "builtin:even", "--po", po_s, "--method", method, "-k", "3", "--out", set_s]);
        assert_eq!(built.status.code(), Some(0), "{method}");
        assert_eq!(json(&built)["certificate"]["verdict"]["status"], "certified");
        let verified = run(&["shadow", "verify", "--def", "builtin:even", "--po", po_s, "--set", set_s, "-k", "3"]);
        assert_eq!(verified.status.code(), Some(0));
        assert_eq!(json(&verified)["members"], 2);
    }
    let forward = run(&["shadow", "construct", "--def", "builtin:even", "--po", po_s, "--method", "schedule", "-k", "3"]);
    assert_eq!(forward.status.code(), Some(2));
    let bogus = run(&["shadow", "construct", "--def", "builtin:even", "--po", po_s, "--method", "magic", "-k", "3"]);
    assert_eq!(bogus.status.code(), Some(2));
}

#[test]
fn two_loop_bridge_failure_is_a_mathematical_failure() {
    let g = nshadow::catalog::two_loop_graph();
    let po = nshadow::shadowing::two_loop_splice(&g, 40, 16, -30, 30).unwrap();
    let def = nshadow::io::PseudoOrbitDef::of(&po, g.alphabet());
    let path = scratch("loop.json");
    std::fs::write(&path, serde_json::to_string(&def).unwrap()).unwrap();
    let p = path.to_str().unwrap();
    let out = run(&["shadow", "construct", "--def", "builtin:two-loop", "--po", p, "-k", "3", "-M", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["error"].as_str().unwrap().contains("no bridge"));
    let coarse = run(&["shadow", "construct", "--def", "builtin:two-loop", "--po", p, "-k", "5", "-M", "1"]);
    assert_eq!(coarse.status.code(), Some(2), "precision too coarse for k is a usage error");
}

#[test]
fn search_budget_is_a_usage_error() {
    let po = scratch("zero.json");
    std::fs::write(&po, r#"{"delta_exponent": 0, "entries": [["0","0","0"]]}"#).unwrap();
    let p = po.to_str().unwrap();
    let out = run(&["shadow", "search", "--def", "builtin:full3", "--po", p, "-N", "2", "-k", "0", "--halfwidth", "6", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let found = run(&["shadow", "search", "--def", "builtin:full2", "--po", p, "-N", "1", "-k", "1", "--halfwidth", "2"]);
    assert_eq!(found.status.code(), Some(0));
}

#[test]
fn interval_demo() {
    let out = run(&["interval", "demo", "--delta", "0.01", "--epsilon", "0.25"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["two_point_set"].as_array().unwrap().len(), 2);
    assert!(v["single_point"].is_null());
    let csv = run(&["interval", "demo", "--delta", "0.5", "--csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("i,x\n0,0\n") && text.trim_end().ends_with(",1"));
}

#[test]
fn repro_is_byte_stable() {
    let a = run(&["repro", "mixing-pair", "--seed", "5", "--trials", "5", "--json"]);
    let b = run(&["repro", "mixing-pair", "--seed", "5", "--trials", "5", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["passed"], true);
    let table = run(&["repro", "interval", "--table"]);
    assert!(String::from_utf8(table.stdout).unwrap().starts_with("scenario interval (seed 0): PASS"));
    assert_eq!(run(&["repro", "nope"]).status.code(), Some(2));
}
