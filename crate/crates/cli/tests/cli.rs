use std::process::{Command, Output};

use serde_json::Value;

fn crkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crkit")).args(args).output().expect("spawn crkit")
}

fn json(args: &[&str]) -> Value {
    let out = crkit(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn invalid_family_exits_one() {
    let out = crkit(&["orbits", "-p", "0", "-q", "1", "-m", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    assert_eq!(crkit(&["orbits", "-p", "2", "-q", "1", "-m", "1"]).status.code(), Some(1));
    assert_eq!(crkit(&["orbits", "-p", "1", "-q", "1", "-m", "2"]).status.code(), Some(1));
}

#[test]
fn parse_errors_are_single_line() {
    let out = crkit(&["orbits", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&out.stderr).trim_end().lines().count(), 1);
    assert_eq!(crkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn non_closed_spec_is_rejected() {
    let spec = r#"{"context":{"p":2,"q":0},"v_basis":[[["0","1"],["0","0"]],[["0","0"],["1","0"]]]}"#;
    let out = crkit(&["analyze", "--v-spec", spec]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a subalgebra"));
}

#[test]
fn spec_file_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("borel.json");
    std::fs::write(&path, r#"{"context":{"p":2,"q":0},"v_basis":[[["1","0"],["0","-1"]],[["0","1"],["0","0"]]]}"#)
        .unwrap();
    let v = json(&["check", "--v-spec", path.to_str().unwrap(), "--n-reductive"]);
    assert_eq!(v["dims"]["v"], 2);
    assert_eq!(v["n"], 1);
    assert_eq!(v["k"], 0);
}

#[test]
fn orbit_counts() {
    // positive, negative and null lines
    let v = json(&["orbits", "-p", "1", "-q", "1", "-m", "1"]);
    assert_eq!(v.as_array().unwrap().len(), 3);
    let v = json(&["orbits", "-p", "1", "-q", "2", "-m", "2"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["b"].as_u64().unwrap() >= 1));
    let v = json(&["orbits", "-p", "2", "-q", "2", "-m", "2"]);
    assert_eq!(v.as_array().unwrap().len(), 6);
}

#[test]
fn hypersurface_check() {
    let v = json(&["check", "--preset", "grassmann:1,2,1,0,0"]);
    assert_eq!(v["n_reductive"], true);
    assert_eq!(v["hnr"], "yes");
    assert_eq!((v["n"].as_u64(), v["k"].as_u64()), (Some(1), Some(1)));
}

#[test]
fn open_orbit_has_no_codimension() {
    let v = json(&["analyze", "-p", "2", "-q", "2", "-m", "1", "-a", "1", "-b", "0"]);
    assert_eq!(v["k"], 0);
    assert_eq!(v["orbit"]["flags"]["open_orbit"], true);
}

#[test]
fn report_lists_discrepancies() {
    let v = json(&["report", "-p", "1", "-q", "2", "-m", "1"]);
    assert_eq!(v["formulas_match"], true);
    assert!(v["discrepancies"].as_array().unwrap().is_empty());
    let v = json(&["report", "-p", "3", "-q", "3", "-m", "2"]);
    let pairs: Vec<(u64, u64)> = v["discrepancies"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| (d["a"].as_u64().unwrap(), d["b"].as_u64().unwrap()))
        .collect();
    assert!(pairs.contains(&(1, 0)) && pairs.contains(&(0, 1)), "{pairs:?}");
}

#[test]
fn report_writes_file_or_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = crkit(&["report", "-p", "1", "-q", "1", "-m", "1", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["orbits"], 3);
    let bad = dir.path().join("missing").join("r.json");
    let out = crkit(&["report", "-p", "1", "-q", "1", "-m", "1", "--output", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn csv_and_pretty_formats() {
    let out = crkit(&["orbits", "-p", "1", "-q", "2", "-m", "1", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let width = rdr.headers().unwrap().len();
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.len() == width));
    let out = crkit(&["duality", "-p", "1", "-q", "2", "-m", "1", "--format", "pretty"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 3);
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_crkit"))
            .args(["orbits", "-p", "2", "-q", "3", "-m", "2"])
            .env("CRKIT_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(run("zero").status.code(), Some(1));
}

#[test]
fn mostow_probe_default() {
    let v = json(&["mostow-probe", "--samples", "20"]);
    assert_eq!(v["full_rank_everywhere"], true);
    assert_eq!(v["samples"], 20);
}
