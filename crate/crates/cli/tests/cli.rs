use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use suspla::bialgebra::PresentedBialgebra;
use suspla::dyer_lashof::DyerLashof;

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn suspla(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_suspla")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("suspla-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn torsion_input_is_rejected_with_witness() {
    let o = suspla(&["mm", "tf", &data("nontf_example.json"), "--window", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("torsion element x in degree Q"), "{}", stdout(&o));
    let o = suspla(&["mm", "tf", &data("nontf_example.json"), "--window", "3", "--format", "json"]);
    assert_eq!(json(&o)["witnesses"][0], "torsion element x in degree Q");
}

#[test]
fn admissible_monomial_is_unchanged() {
    let o = suspla(&["dl", "normalize", "--p", "2", "Q2 Q2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Q2 Q2\n");
}

#[test]
fn envelope_of_the_free_line() {
    let out = tmp("w.json");
    let o = suspla(&["envelope", "w", &data("utow.json"), "--window", "3", "--lie-cap", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let doc: Value = serde_json::from_str(&text).unwrap();
    // k[s, x0]: in degree s^n the words s^n x0^k, k <= cap, and nothing else.
    for (deg, n) in doc["degree_dims"].as_object().unwrap() {
        assert_eq!(n, 4, "degree {deg}");
    }
    assert_eq!(doc["lie_cap"], 3);
    assert_eq!(doc["window"], serde_json::json!(["1", "s", "s^2", "s^3"]));
    let a = PresentedBialgebra::from_json(&text).unwrap();
    assert_eq!(a.dim(), 16);
    for (name, level) in doc["filtration"].as_object().unwrap() {
        let x_letters = name.matches('x').count() + name.split("x0^").skip(1).map(|r| r[..1].parse::<usize>().unwrap() - 1).sum::<usize>();
        assert_eq!(level.as_u64().unwrap() as usize, x_letters, "{name}");
    }
}

#[test]
fn graded_bidegrees() {
    let o = suspla(&["graded", "w", &data("utow.json"), "--window", "2", "--lie-cap", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    for d in ["1", "s", "s^2"] {
        assert_eq!(doc["bidegree_dims"][d], serde_json::json!({"0": 1, "1": 1, "2": 1}));
    }
}

#[test]
fn torsion_free_equivalence_passes() {
    let o = suspla(&["mm", "tf", &data("utow.json"), "--window", "3", "--lie-cap", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r = json(&o);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["checks"]["adjunction"], true);
    for d in r["per_degree_dims"]["unit"].as_array().unwrap() {
        assert_eq!(d["rank"], d["domain_dim"]);
        assert_eq!(d["rank"], d["codomain_dim"]);
    }
    let o = suspla(&["mm", "tf", &data("c2_orbit.json"), "--lie-cap", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn left_sided_equivalence() {
    let o = suspla(&["mm", "ls", &data("nontf_example.json"), "--window", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(json(&o)["checks"]["left_sided"], true);
    let o = suspla(&["mm", "ls", &data("nonlinear.json")]);
    assert_eq!(o.status.code(), Some(1));
    let o = suspla(&["mm", "ls", &data("utow.json"), "--window", "3", "--lie-cap", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("1 . x0 = x0"));
}

#[test]
fn check_detects_document_kind() {
    let o = suspla(&["check", &data("heisenberg.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["kind"], "lie");
    let o = suspla(&["check", &data("sweedler.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["kind"], "bialgebra");
    assert_eq!(r["cocommutative"], false);
    let o = suspla(&["check", &data("truncated_smash.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["primitive_grouplike_compatible"]["verdict"], "false");
}

#[test]
fn generalized_primitives_of_an_envelope() {
    let out = tmp("z.json");
    let o = suspla(&["envelope", "z", &data("nontf_example.json"), "--window", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = suspla(&["gp", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["embedding"]["x"], "x");
    assert_eq!(r["lie"]["basis"].as_array().unwrap().len(), 1);
}

#[test]
fn exit_statuses() {
    assert_eq!(suspla(&["envelope", "w", &data("utow.json"), "--window", "9"]).status.code(), Some(2));
    assert_eq!(suspla(&["mm", "tf", &data("c2_orbit.json")]).status.code(), Some(2));
    assert_eq!(suspla(&["check", &data("missing.json")]).status.code(), Some(3));
    assert_eq!(suspla(&["dl", "normalize", "--p", "4", "Q1"]).status.code(), Some(3));
    assert_eq!(suspla(&["dl", "normalize", "--p", "2", "Q1 y"]).status.code(), Some(3));
    assert_eq!(suspla(&["dl", "basis", "--p", "2", "--e", "-1", "--degree", "4"]).status.code(), Some(3));
    assert_eq!(suspla(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(suspla(&["--help"]).status.code(), Some(0));
    assert_eq!(suspla(&["--version"]).status.code(), Some(0));
}

#[test]
fn dyer_lashof_commands() {
    let o = suspla(&["dl", "basis", "--p", "2", "--e", "0", "--degree", "6", "--format", "json"]);
    let listed: Vec<String> = json(&o)["basis"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    let r = DyerLashof::new(2, 0, 6).unwrap();
    let expected: Vec<String> = r.basis_in_degree(6, None).unwrap().iter().map(ToString::to_string).collect();
    assert_eq!(listed, expected);
    let o = suspla(&["dl", "coproduct", "--p", "3", "bQ1"]);
    assert_eq!(stdout(&o), "Q0 (x) bQ1 + bQ1 (x) Q0\n");
    let o = suspla(&["dl", "normalize", "--p", "2", "--e", "-1", "Q2 Q2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = suspla(&["dl", "e0", "--p", "3", "Q1", "Q2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["degree"], 12);
    assert!(r["terms"].as_array().unwrap().is_empty());
}

#[test]
fn reports_are_deterministic_and_sorted() {
    let args = ["mm", "tf", &data("utow.json"), "--window", "3", "--seed", "11", "--format", "json"];
    let a = suspla(&args);
    let b = suspla(&args);
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    assert_eq!(r["seed"], 11);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    let keys: Vec<&String> = r.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let text = stdout(&a);
    let top: Vec<&str> = text.lines().filter(|l| l.starts_with("  \"")).map(|l| l.trim_start()).collect();
    let mut top_sorted = top.clone();
    top_sorted.sort();
    assert_eq!(top, top_sorted);
}
