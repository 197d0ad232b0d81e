mod common;

use std::path::Path;
use std::process::{Command, Output};

use hypermotive::cli::ArrangementDocument;
use serde_json::Value;

fn write_corpus_doc(dir: &Path, name: &str) -> std::path::PathBuf {
    let a = common::corpus().into_iter().find(|(n, _)| *n == name).unwrap().1;
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, ArrangementDocument::from_arrangement(&a).to_json()).unwrap();
    path
}

fn run(args: &[&str], input: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypermotive"))
        .args(args)
        .arg("--input")
        .arg(input)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn rank_and_twists_on_t() {
    let dir = tempfile::tempdir().unwrap();
    let t = write_corpus_doc(dir.path(), "t");
    let out = run(&["rank"], &t);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["rank"], 6);
    assert_eq!(v["poincare"], serde_json::json!([1, 3, 2]));
    let out = run(&["twists"], &t);
    assert_eq!(json(&out)["twists"], serde_json::json!({"0": 1, "1": 3, "2": 2}));
}

#[test]
fn reduce_on_the_punctured_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_corpus_doc(dir.path(), "p");
    let out = run(&["reduce", "--word", "h1,h2"], &p);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["basis"], serde_json::json!({"{1}": "[-1]"}));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let b = write_corpus_doc(dir.path(), "braid_with_coordinate");
    for args in [
        vec!["verify", "--seed", "7", "--trials", "30"],
        vec!["rank"],
        vec!["reduce", "--word", "h1,-1*h2,h3^2*h4^-1"],
        vec!["basis", "--format", "text"],
    ] {
        let first = run(&args, &b);
        let second = run(&args, &b);
        assert_eq!(first.status.code(), Some(0), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn order_flag_permutes_the_input() {
    let dir = tempfile::tempdir().unwrap();
    let t = write_corpus_doc(dir.path(), "t");
    let out = run(&["basis", "--order", "3,1,2"], &t);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["arrangement"], "{x - y, x, y} in A^2 over q");
}

#[test]
fn errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"field":"q","dimension":1,"hyperplanes":[{"constant":"0","coeffs":["z"]}]}"#).unwrap();
    let out = run(&["rank"], &bad);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("hyperplanes[0].coeffs[0]"));

    let p = write_corpus_doc(dir.path(), "p");
    assert_eq!(run(&["reduce"], &p).status.code(), Some(2));
    // tame symbols need a normal crossing arrangement
    let t = write_corpus_doc(dir.path(), "t");
    assert_eq!(run(&["tame-symbol", "--word", "h1,h2,h3"], &t).status.code(), Some(2));
}

#[test]
fn backends_override_the_document() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_corpus_doc(dir.path(), "generic_4_lines");
    for backend in ["fp:5", "fp:7", "formal"] {
        let out = run(&["verify", "--backend", backend, "--trials", "20"], &g);
        assert_eq!(out.status.code(), Some(0), "{backend}");
        assert_eq!(json(&out)["failures"], 0);
    }
}
