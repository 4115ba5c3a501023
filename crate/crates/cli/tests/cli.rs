use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_orient-lattice"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.env_remove("ORIENT_LATTICE_MAX_EDGES");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_out(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn json_err(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap()
}

#[test]
fn gen_piped_into_hasse_dot() {
    let gen = run(&["gen", "--family", "cycle", "--n", "4", "--k", "2"], None);
    assert!(gen.status.success());
    let dot = run(&["hasse", "--format", "dot"], Some(&stdout(&gen)));
    assert!(dot.status.success());
    let text = stdout(&dot);
    assert!(text.starts_with("digraph hasse {\n") && text.ends_with("}\n"));
    assert_eq!(text.matches("rank=").count(), 6);
    assert_eq!(text.matches(" -> ").count(), 6);
    let again = run(&["hasse", "--format", "dot", "--input", "-"], Some(&stdout(&gen)));
    assert_eq!(stdout(&again), text);
}

#[test]
fn hasse_json_matches_dot() {
    let v = json_out(&run(&["hasse", "--family", "path", "--n", "3"], None));
    assert_eq!(v["size"], 8);
    assert_eq!(v["covers"].as_array().unwrap().len(), 8);
    assert_eq!(v["rank"].as_array().unwrap().len(), 8);
}

#[test]
fn verify_grid_passes() {
    let o = run(&["verify", "--family", "grid", "--n", "3"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("pass  orientation.asm"));
    assert!(text.contains("pass  orientation.lattice"));
    assert!(!text.contains("FAIL"));
    let v = json_out(&run(&["verify", "--family", "grid", "--n", "3", "--format", "json"], None));
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_reports_first_counterexample() {
    let gen = json_out(&run(&["gen", "--family", "cycle", "--n", "4", "--k", "1"], None));
    let mut inst = gen.clone();
    for entry in inst["manifest"]["bias"].as_object_mut().unwrap().values_mut() {
        *entry = serde_json::json!(["1/2", "1/2"]);
    }
    let o = run(&["verify"], Some(&inst.to_string()));
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL  orientation.bias"));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("first counterexample: orientation.bias"), "{err}");
}

#[test]
fn torus_hasse_is_an_instance_error() {
    let o = run(&["hasse", "--family", "torus", "--width", "4", "--height", "4", "--json-errors"], None);
    assert_eq!(o.status.code(), Some(3));
    let e = json_err(&o);
    assert_eq!(e["error"]["kind"], "not_sphere");
    assert_eq!(e["error"]["code"], 3);
}

#[test]
fn schema_errors_name_the_pointer() {
    let o = run(&["enumerate", "--json-errors"], Some(r#"{"vertices":[0,1],"edges":[{"id":0}]}"#));
    assert_eq!(o.status.code(), Some(3));
    let e = json_err(&o);
    assert_eq!(e["error"]["kind"], "schema");
    assert!(e["error"]["message"].as_str().unwrap().contains("/edges/0"));
    let bad = run(&["enumerate"], Some("{not json"));
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["hasse", "--bogus"], None).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--family", "path", "--n", "2", "--format", "dot"], None).status.code(), Some(2));
    assert_eq!(run(&["gen", "--family", "cycle", "--n", "4"], None).status.code(), Some(2));
    let both = run(&["enumerate", "--family", "path", "--n", "2", "--input", "x.json", "--json-errors"], None);
    assert_eq!(both.status.code(), Some(2));
    assert_eq!(json_err(&both)["error"]["kind"], "usage");
    let cap = run_env(&["enumerate", "--family", "path", "--n", "2"], None, &[("ORIENT_LATTICE_MAX_EDGES", "many")]);
    assert_eq!(cap.status.code(), Some(2));
}

#[test]
fn edge_cap_comes_from_the_environment() {
    let ok = run_env(&["enumerate", "--family", "path", "--n", "3"], None, &[("ORIENT_LATTICE_MAX_EDGES", "4")]);
    assert_eq!(json_out(&ok)["count"], 8);
}

#[test]
fn region_file_tilings() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    let cells: Vec<[i64; 2]> = (0..2).flat_map(|y| (0..4).map(move |x| [x, y])).collect();
    write!(f, "{}", serde_json::json!({"kind": "squares", "cells": cells})).unwrap();
    let v = json_out(&run(&["tilings", "--input", f.path().to_str().unwrap()], None));
    assert_eq!(v["count"], 5);
    assert_eq!(v["kind"], "squares");
    for t in v["tilings"].as_array().unwrap() {
        assert_eq!(t["edges"].as_array().unwrap().len(), 4);
    }
    let hexagon = r#"{"kind":"triangles","cells":[[0,1],[2,0],[2,1],[1,0],[3,0],[1,1]]}"#;
    let tri = json_out(&run(&["tilings"], Some(hexagon)));
    assert_eq!(tri["count"], 2);
    let strip = run(&["tilings"], Some(r#"{"kind":"triangles","cells":[[0,0],[1,0],[2,0],[3,0]]}"#));
    assert_eq!(strip.status.code(), Some(3));
}

#[test]
fn asm_trees_heights_phase() {
    let asm = json_out(&run(&["asm", "--family", "grid", "--n", "3"], None));
    assert_eq!(asm.as_array().unwrap().len(), 7);
    let one = json_out(&run(&["asm", "--family", "grid", "--n", "3", "--index", "0"], None));
    assert_eq!(one[0]["asm"].as_array().unwrap().len(), 3);
    let trees = json_out(&run(&["trees", "--family", "kn", "--n", "4"], None));
    assert_eq!(trees["count"], 16);
    assert_eq!(trees["rank_generating_function"], serde_json::json!([1, 2, 3, 4, 3, 2, 1]));
    let heights = json_out(&run(&["heights", "--family", "path", "--n", "2"], None));
    assert_eq!(heights.as_array().unwrap().len(), 4);
    assert!(heights[0]["heights"]["0"].as_str().unwrap().contains('/'));
    let phase = json_out(&run(&["phase", "--family", "torus", "--width", "4", "--height", "4"], None));
    assert_eq!(phase.as_array().unwrap().len(), 13);
    let total: u64 = phase.as_array().unwrap().iter().map(|p| p["count"].as_u64().unwrap()).sum();
    assert_eq!(total, 272);
}

#[test]
fn gen_round_trips_through_the_binary() {
    for args in [
        vec!["--family", "hexagon", "--a", "1", "--b", "2", "--c", "2"],
        vec!["--family", "aztec", "--n", "2"],
        vec!["--family", "torus", "--width", "4", "--height", "4"],
    ] {
        let mut full = vec!["gen"];
        full.extend(&args);
        let first = stdout(&run(&full, None));
        let enumerate = run(&["enumerate"], Some(&first));
        assert!(enumerate.status.success() || args[1] == "torus");
        let v: Value = serde_json::from_str(&first).unwrap();
        assert!(v["manifest"]["pins"].is_array());
    }
}
