use std::process::Command;

use serde_json::Value;
use slidechrom::slide::slide_poly;
use slidechrom::{TPolynomial, Window};

fn slidechrom(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_slidechrom"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let (code, out) = slidechrom(&full);
    (code, serde_json::from_str(&out).expect("valid JSON"))
}

#[test]
fn graph_json_and_errors() {
    let (code, v) = json(&["graph", "ENEENENEE@3,3"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["edges"], serde_json::json!([[1, 2], [2, 3]]));
    let (code, v) = json(&["graph", "EEE@3,0"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");
}

#[test]
fn chromatic_both_prints_bar_notation() {
    let (code, out) = slidechrom(&["chromatic", "ENEENENEE@3,3"]);
    assert_eq!(code, 0);
    assert!(out.contains("S[1,1|1]"), "{out}");
    assert!(out.contains("equal: true"));
}

#[test]
fn chromatic_json_round_trips() {
    let (code, v) = json(&["chromatic", "ENEENENEE@3,3", "--mode", "brute", "--window", "-1", "3"]);
    assert_eq!(code, 0);
    let p = TPolynomial::from_json(&v["polynomial"]).unwrap();
    assert_eq!(p.window(), Window::new(-1, 3).unwrap());
    assert_eq!(TPolynomial::from_json(&p.to_json()).unwrap(), p);
}

#[test]
fn r_zero_path_gives_zero() {
    let (code, v) = json(&["chromatic", "NENE@2,0", "--mode", "brute"]);
    assert_eq!(code, 0);
    assert!(TPolynomial::from_json(&v["polynomial"]).unwrap().is_zero());
}

#[test]
fn slides_command_reads_a_file() {
    let w = Window::positive(4);
    let p = &slide_poly(&"0,2,0,1".parse().unwrap(), &w) + &slide_poly(&"1,1,1".parse().unwrap(), &w);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.json");
    std::fs::write(&file, p.to_json().to_string()).unwrap();
    let (code, v) = json(&["slides", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    let indices: Vec<&str> = v["expansion"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["index"].as_str().unwrap())
        .collect();
    assert_eq!(indices, ["0,2,0,1", "1,1,1"]);
}

#[test]
fn sweeps() {
    let (code, v) = json(&["sweep", "4", "3", "theorem"]);
    assert_eq!(code, 0);
    assert_eq!(v["failures"], serde_json::json!([]));
    let (code, _) = json(&["sweep", "3", "3", "corollary", "--m", "3"]);
    assert_eq!(code, 0);
    let (code, _) = json(&["sweep", "3", "2", "backstable", "--m", "2"]);
    assert_eq!(code, 0);
    let (code, v) = json(&["sweep", "7", "1", "theorem"]);
    assert_eq!(code, 2);
    assert!(v["message"].as_str().unwrap().contains("--force"));
}

#[test]
fn keys_sweep_reports_findings_without_failing() {
    let (code, v) = json(&["sweep", "5", "5", "keys"]);
    assert_eq!(code, 0);
    assert_eq!(v["findings"].as_array().unwrap().len(), 1);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let a = slidechrom(&["sweep", "4", "2", "theorem", "--json", "--threads", "1"]);
    let b = slidechrom(&["sweep", "4", "2", "theorem", "--json", "--threads", "3"]);
    assert_eq!(a, b);
    let c = slidechrom(&["chromatic", "ENEENENEE@3,3", "--json"]);
    let d = slidechrom(&["chromatic", "ENEENENEE@3,3", "--json"]);
    assert_eq!(c, d);
}

#[test]
fn other_commands_run() {
    for args in [
        vec!["rdes", "ENEENENEE@3,3"],
        vec!["backstable", "1,2|0,2,0,1", "--r", "4"],
        vec!["qsym", "ENEENENEE@3,3", "--m", "3"],
        vec!["keys", "ENEENENEE@3,3"],
        vec!["keys", "--key", "0,2", "--r", "2"],
        vec!["paths", "3", "3", "--list"],
    ] {
        let (code, v) = json(&args);
        assert_eq!(code, 0, "{args:?}: {v}");
    }
    let (_, v) = json(&["paths", "6", "6"]);
    assert_eq!(v["count"], 9996);
}
