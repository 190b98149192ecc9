use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_widthproof"));
    c.env_remove("WIDTHPROOF_MAX_STATES").env_remove("WIDTHPROOF_TIMEOUT");
    c
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn widthproof")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn reed_pathwidth_two_holds_with_published_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.json");
    let o = run(&["prove", "--property", fixture("reed_s2.prop").to_str().unwrap(), "--width", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verdict"], "inclusion-holds");
    assert_eq!(v["stats"]["states"], 38);
    assert!(v["counterexample"].is_null());
}

#[test]
fn plain_bfs_agrees_on_verdict() {
    let o = run(&["prove", "--property", fixture("reed_s2.prop").to_str().unwrap(), "--width", "2", "--strategy", "bfs-premise"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn refutation_round_trips_through_validate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cx.json");
    let prop = dir.path().join("p.prop");
    // without the clique component, a triangle refutes 2-colourability
    std::fs::write(&prop, "z := HasMultipleEdges()\nw := ChromaticNumber_AtMost(2)\nFormula\nNOT z IMPLIES w\n").unwrap();
    let o = run(&["prove", "--property", prop.to_str().unwrap(), "--width", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["verdict"], "refuted");
    assert!(v["counterexample"]["term"].is_string());

    let o = run(&["validate", "--counterexample", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("valid counterexample"));

    // tampered flags are caught
    let mut v = v;
    v["counterexample"]["flags"] = serde_json::json!([true, true]);
    std::fs::write(&out, v.to_string()).unwrap();
    assert_eq!(code(&run(&["validate", "--counterexample", out.to_str().unwrap()])), 3);
}

#[test]
fn tiny_state_cap_is_indeterminate() {
    let o = run(&["prove", "--property", fixture("reed_s2.prop").to_str().unwrap(), "--width", "3", "--max-states", "5"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn unclosed_premise_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let prop = dir.path().join("p.prop");
    std::fs::write(&prop, "x := MaximumDegree_AtLeast(3)\nw := ChromaticNumber_AtMost(3)\nFormula\nx IMPLIES w\n").unwrap();
    let o = run(&["prove", "--property", prop.to_str().unwrap(), "--width", "2"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("closed"));
}

#[test]
fn unmasked_clique_needs_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let prop = dir.path().join("p.prop");
    std::fs::write(&prop, "y := SimpleCliqueNumber_AtLeast(3)\nw := ChromaticNumber_AtMost(3)\nFormula\nNOT y IMPLIES w\n").unwrap();
    let o = run(&["prove", "--property", prop.to_str().unwrap(), "--width", "2"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn usage_errors_exit_three_and_help_exits_zero() {
    assert_eq!(code(&run(&["prove"])), 3);
    assert_eq!(code(&run(&["prove", "--property", "x", "--width", "2", "--mode", "bw"])), 3);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn oracles_on_second_figure() {
    let g = fixture("figure2.adj");
    let g = g.to_str().unwrap();
    let o = run(&["oracle", "chromatic", g, "--at-most", "3"]);
    assert_eq!(code(&o), 1);
    assert_eq!(code(&run(&["oracle", "chromatic", g, "--at-most", "4"])), 0);
    assert_eq!(code(&run(&["oracle", "triangle-free", g])), 0);
    assert_eq!(code(&run(&["oracle", "max-degree", g, "--at-least", "5"])), 1);
    let bags = fixture("figure2.bags");
    let bags = bags.to_str().unwrap();
    assert_eq!(code(&run(&["oracle", "path-decomposition", g, "--bags", bags, "--width", "4"])), 0);
    assert_eq!(code(&run(&["oracle", "path-decomposition", g, "--bags", bags, "--width", "3"])), 1);
}

#[test]
fn eval_reports_components() {
    let dir = tempfile::tempdir().unwrap();
    let term = dir.path().join("t.term");
    std::fs::write(&term, "IntroEdge(1,2)(IntroVertex(2)(IntroVertex(1)(Leaf)))").unwrap();
    let o = run(&["eval", "--term", term.to_str().unwrap(), "--property", fixture("reed_s2.prop").to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"], 2);
    assert_eq!(v["edges"], 1);
    assert_eq!(v["premise"], true);
    assert_eq!(v["conclusion"], true);
    assert_eq!(v["value"], true);
}
