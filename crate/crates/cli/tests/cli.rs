use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_omltopo"))
}

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    root.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

#[test]
fn check_boolean_and_mo() {
    for spec in ["gen:boolean:3", "gen:mo:2"] {
        let out = run(&["check", spec]);
        assert!(out.status.success(), "{spec}");
        let v = json(&out);
        assert_eq!(v["orthomodular"], true);
        assert_eq!(v["atomic"], true);
        assert_eq!(v["atom_projection"], true);
    }
}

#[test]
fn check_hexagon_reports_witness() {
    let out = run(&["check", &fixture("o6.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["orthomodular"], false);
    assert_eq!(v["ortholattice"], true);
    assert_eq!(v["failure"]["witness"], serde_json::json!(["a", "b"]));
    assert_eq!(stderr_json(&out)["kind"], "check_failed");
}

#[test]
fn check_json_fixture() {
    let out = run(&["check", &fixture("mo2.json")]);
    assert!(out.status.success());
    assert_eq!(json(&out)["atoms"], 4);
}

#[test]
fn check_reports_missing_atom_projection() {
    let out = run(&["check", "gen:hsum:boolean:3,boolean:2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["orthomodular"], true);
    assert_eq!(v["atom_projection"], false);
}

#[test]
fn rn_boolean_stabilizes_at_zero() {
    let out = run(&["rn", "gen:boolean:3", "--family", "general"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["stabilization"], 0);
    let rels = v["relations"].as_array().unwrap();
    assert_eq!(rels[0]["n"], 0);
    assert_eq!(rels[0]["pairs"], rels[1]["pairs"]);
}

#[test]
fn topology_boolean_is_discrete() {
    let out = run(&["topology", "gen:boolean:3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["isolated"].as_array().unwrap().len(), 8);
    assert_eq!(v["discrete"], true);
    assert_eq!(v["balls"]["ab"]["0"], serde_json::json!([]));
}

#[test]
fn balls_mo2_atom_is_empty() {
    for family in ["at", "lattice", "general"] {
        let out = run(&["balls", "gen:mo:2", "--element", "a1", "--n", "0", "--family", family]);
        assert!(out.status.success(), "{family}");
        assert_eq!(json(&out)["balls"]["a1"]["0"], serde_json::json!([]));
    }
}

#[test]
fn balls_csv() {
    let out = run(&["balls", "gen:boolean:2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("element,n,size,members\n"));
    assert!(text.contains("0,0,1,0\n"));
}

#[test]
fn dot_export() {
    let out = run(&["check", "gen:boolean:2", "--format", "dot"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 4);
}

#[test]
fn geom_lemma_sweep() {
    let out = run(&["geom", "lemma", "--thetas", "50"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,closed_form_min,grid_min,refined_min,abs_err"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 50);
    assert!(rows.iter().all(|r| r[4] < 1e-6));
}

#[test]
fn geom_ladder() {
    let out = run(&["geom", "ladder", "--n", "1000"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["recursion_verified"], true);
    assert_eq!(v["strictly_decreasing"], true);
}

#[test]
fn geom_chain() {
    let out = run(&["geom", "chain", "--n", "3", "--trials", "100", "--seed", "7"]);
    assert!(out.status.success());
    let v = json(&out);
    let traces = v["traces"].as_array().unwrap();
    assert_eq!(traces.len(), 100);
    for t in traces {
        assert!(t["final_residual"].as_f64().unwrap() < 1e-7);
        assert_eq!(t["chain"].as_array().unwrap().len(), 4);
        assert!(t["input"].is_object() && t["angles"].is_array() && t["residuals"].is_array());
    }
}

#[test]
fn tolerance_override_surfaces_failure() {
    let out = run(&["geom", "lemma", "--thetas", "3", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(7));
    assert_eq!(stderr_json(&out)["kind"], "certificate_failure");
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 4);
}

#[test]
fn identical_runs_are_byte_identical() {
    let cases: [&[&str]; 4] = [
        &["geom", "chain", "--n", "2", "--trials", "10", "--seed", "3"],
        &["topology", "gen:product:mo:2,boolean:1"],
        &["rn", "gen:mo:3", "--family", "at", "--format", "csv"],
        &["geom", "lemma", "--thetas", "4"],
    ];
    for args in cases {
        let (a, b) = (run(args), run(args));
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let (a, b) = (
        run(&["geom", "chain", "--n", "2", "--trials", "3", "--seed", "1"]),
        run(&["geom", "chain", "--n", "2", "--trials", "3", "--seed", "2"]),
    );
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["topology", "gen:mo:2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let stdout = run(&["topology", "gen:mo:2"]).stdout;
    assert_eq!(text.as_bytes(), stdout.as_slice());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn failures_exit_nonzero_with_json() {
    let cases: [(&[&str], i32, &str); 8] = [
        (&["check", "/nonexistent/lattice.json"], 3, "io"),
        (&["check", "gen:cube:2"], 4, "parse"),
        (&["check", "gen:boolean:9"], 5, "size_limit"),
        (&["rn", &fixture("o6.json")], 5, "not_orthomodular"),
        (&["rn", "gen:hsum:boolean:3,boolean:2", "--family", "at"], 6, "no_atom_projection"),
        (&["rn", "gen:mo:40"], 6, "size_limit"),
        (&["frobnicate"], 2, "usage"),
        (&["geom", "ladder", "--format", "dot"], 2, "usage"),
    ];
    for (args, code, kind) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        assert_eq!(stderr_json(&out)["kind"], kind, "{args:?}");
    }
}

#[test]
fn malformed_json_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"elements\": [").unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}
