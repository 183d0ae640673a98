use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "corpus", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn ctrs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctrs")).args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn check_fib_is_level_confluent() {
    let out = ctrs(&["check", &corpus("fib.trs"), "--strict"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("YES (level-confluent)\n"));
    let j = json_of(&ctrs(&["--json", "check", &corpus("fib.trs")]));
    assert_eq!(j["verdict"], "LEVEL_CONFLUENT");
    assert_eq!(j["truncated"], false);
}

#[test]
fn strict_turns_not_applicable_into_exit_one() {
    let file = corpus("overlapping.trs");
    assert_eq!(ctrs(&["check", &file]).status.code(), Some(0));
    let out = ctrs(&["check", &file, "--strict", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let j = json_of(&out);
    assert_eq!(j["verdict"], "NOT_APPLICABLE");
    assert_eq!(j["properties"]["almost_orthogonal"]["holds"], false);
}

#[test]
fn failing_property_per_corpus_file() {
    for (file, prop) in [
        ("non_left_linear.trs", "left_linear"),
        ("not_properly_oriented.trs", "properly_oriented"),
        ("not_right_stable.trs", "right_stable"),
        ("type4.trs", "three_ctrs"),
    ] {
        let j = json_of(&ctrs(&["check", "--json", &corpus(file)]));
        assert_eq!(j["verdict"], "NOT_APPLICABLE", "{file}");
        assert_eq!(j["properties"][prop]["holds"], false, "{file}");
    }
}

#[test]
fn props_reports_type() {
    let j = json_of(&ctrs(&["props", "--json", &corpus("type4.trs")]));
    assert_eq!(j["type"], 4);
    assert_eq!(j["properties"]["three_ctrs"]["witnesses"][0]["rule"], 1);
    let j = json_of(&ctrs(&["props", "--json", &corpus("fib.trs")]));
    assert_eq!(j["type"], 3);
}

#[test]
fn overlaps_lists_dispositions() {
    let j = json_of(&ctrs(&["overlaps", "--json", &corpus("infeasible_if2.trs")]));
    let pair = j.as_array().unwrap().iter().find(|o| o["rules"] == json!([1, 2])).unwrap();
    assert_eq!(pair["disposition"], "infeasible-IF2");
    assert_eq!(pair["conditions"].as_array().unwrap().len(), 2);
}

#[test]
fn rewrite_computes_fib_of_two_at_level_three() {
    let file = corpus("fib.trs");
    let j = json_of(&ctrs(&["rewrite", "--json", &file, "--term", "fib(s(s(0)))", "--level", "3", "--steps", "10"]));
    assert_eq!(j["normal_forms"], json!(["pair(s(0), s(s(0)))"]));
    assert_eq!(j["truncated"], false);
    // one level lower the inner condition cannot be met
    let j = json_of(&ctrs(&["rewrite", "--json", &file, "--term", "fib(s(s(0)))", "--level", "2"]));
    assert_eq!(j["reachable"], json!(["fib(s(s(0)))"]));
}

#[test]
fn epar_shows_witnesses() {
    let out = ctrs(&["epar", "--json", &corpus("fib.trs"), "--term", "add(fib(0), 0)", "--level", "1"]);
    let j = json_of(&out);
    let succ = j["successors"].as_array().unwrap();
    assert_eq!(succ.len(), 2);
    assert_eq!(succ[1]["witness"]["holes"][0], json!({"source": "fib(0)", "target": "pair(0, s(0))", "kind": "root-step"}));
}

#[test]
fn diamond_finds_the_overlap_peak() {
    let j = json_of(&ctrs(&["diamond", "--json", &corpus("overlapping.trs"), "--m", "1", "--n", "1", "--seed-size", "2"]));
    let p = &j["counterexample"];
    assert_eq!((p["seed"].as_str(), p["left"].as_str(), p["right"].as_str()), (Some("f(b)"), Some("a"), Some("b")));
    let j = json_of(&ctrs(&["diamond", "--json", &corpus("fib.trs"), "--m", "2", "--n", "2", "--seed-size", "4"]));
    assert_eq!(j["counterexample"], Value::Null);
}

#[test]
fn input_errors_exit_two() {
    let out = ctrs(&["check", "/definitely/not/here.trs"]);
    assert_eq!(out.status.code(), Some(2));
    let bad = std::env::temp_dir().join(format!("ctrs-cli-test-{}.trs", std::process::id()));
    std::fs::write(&bad, "(CONDITIONTYPE JOIN)\n(RULES a -> b)\n").unwrap();
    let out = ctrs(&["check", bad.to_str().unwrap()]);
    std::fs::remove_file(&bad).unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("only ORIENTED supported"));
    let out = ctrs(&["epar", &corpus("fib.trs"), "--term", "fib(0, 0)", "--level", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(ctrs(&["check"]).status.code(), Some(2));
}
