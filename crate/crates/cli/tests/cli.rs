// Copyright 2026 The geophase Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use geophase_cli::commands::reserialize;
use serde_json::Value;
use tempfile::TempDir;

fn bin(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geophase"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(path: PathBuf) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

fn assert_round_trip(path: PathBuf) {
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(reserialize(&text).unwrap(), text, "{}", path.display());
}

#[test]
fn synth_pair_emits_four_steps() {
    let d = TempDir::new().unwrap();
    write(
        d.path(),
        "t.json",
        r#"{"variant":"pair","numQubits":2,"a":"1.0 * Z1","b":"1.0 * X2","theta":0.7853981633974483}"#,
    );
    let o = bin(
        d.path(),
        &["synth", "--target", "t.json", "--out", "p.json"],
    );
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "p.json");
    let p = json(d.path().join("p.json"));
    assert_eq!(p["steps"].as_array().unwrap().len(), 4);
    assert_eq!(p["cyclic"], true);
    assert_round_trip(d.path().join("p.json"));
}

#[test]
fn synth_projector_step_count() {
    let d = TempDir::new().unwrap();
    write(
        d.path(),
        "t.json",
        r#"{"variant":"projector","numQubits":3,"n":1,"phase":3.141592653589793}"#,
    );
    let o = bin(
        d.path(),
        &["synth", "--target", "t.json", "--out", "p.json"],
    );
    assert_eq!(code(&o), 0);
    assert_eq!(
        json(d.path().join("p.json"))["steps"]
            .as_array()
            .unwrap()
            .len(),
        25
    );
}

#[test]
fn synth_error_codes() {
    let d = TempDir::new().unwrap();
    write(
        d.path(),
        "generic.json",
        r#"{"variant":"triple_exact","numQubits":2,"a":"1.0 * Z1","b":"1.0 * I","c":"0.5 * Z1 + 0.5 * Z2","lambda":1.0,"t":0.3}"#,
    );
    let o = bin(
        d.path(),
        &["synth", "--target", "generic.json", "--out", "p.json"],
    );
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("classification failure"));
    assert!(o.stdout.is_empty());

    write(
        d.path(),
        "unknown.json",
        r#"{"variant":"cubic_phase","numQubits":1}"#,
    );
    assert_eq!(
        code(&bin(
            d.path(),
            &["synth", "--target", "unknown.json", "--out", "p.json"]
        )),
        3
    );

    write(
        d.path(),
        "bad.json",
        r#"{"variant": "pair", "numQubits": 2,"#,
    );
    assert_eq!(
        code(&bin(
            d.path(),
            &["synth", "--target", "bad.json", "--out", "p.json"]
        )),
        2
    );

    write(
        d.path(),
        "anti.json",
        r#"{"variant":"pair","numQubits":1,"a":"1.0 * X1","b":"1.0 * Z1","theta":0.5}"#,
    );
    let o = bin(
        d.path(),
        &["synth", "--target", "anti.json", "--out", "p.json"],
    );
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("commutation"));

    write(
        d.path(),
        "t.json",
        r#"{"variant":"global_phase","numQubits":1,"phase":0.5}"#,
    );
    let o = bin(
        d.path(),
        &[
            "synth",
            "--target",
            "t.json",
            "--out",
            "p.json",
            "--cutoff",
            "16",
            "--probe-dim",
            "9",
        ],
    );
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("probeDim"));
    assert_eq!(
        code(&bin(
            d.path(),
            &["synth", "--target", "missing.json", "--out", "p.json"]
        )),
        2
    );
    assert_eq!(code(&bin(d.path(), &["frobnicate"])), 2);
}

#[test]
fn verify_cnot_passes() {
    let d = TempDir::new().unwrap();
    assert_eq!(
        code(&bin(
            d.path(),
            &[
                "gate",
                "--name",
                "cnot",
                "--cutoff",
                "96",
                "--out",
                "cnot.json"
            ]
        )),
        0
    );
    let o = bin(d.path(), &["verify", "cnot.json", "--report", "r.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "r.json");
    let r = json(d.path().join("r.json"));
    assert_eq!(r["passed"], true);
    assert!(r["reports"][0]["fidelity"].as_f64().unwrap() >= 1.0 - 1e-8);
    assert_eq!(r["config"]["fidelityTol"].as_f64().unwrap(), 1e-8);
    assert_round_trip(d.path().join("cnot.json"));
    assert_round_trip(d.path().join("r.json"));
}

#[test]
fn verify_detects_perturbed_amplitude() {
    let d = TempDir::new().unwrap();
    write(
        d.path(),
        "t.json",
        r#"{"variant":"pair","numQubits":2,"a":"1.0 * Z1","b":"1.0 * Z2","theta":0.5}"#,
    );
    assert_eq!(
        code(&bin(
            d.path(),
            &["synth", "--target", "t.json", "--out", "p.json"]
        )),
        0
    );
    let mut p = json(d.path().join("p.json"));
    let re = p["steps"][0]["amp"][0].as_f64().unwrap();
    p["steps"][0]["amp"][0] = Value::from(re + 0.1);
    write(d.path(), "bent.json", &serde_json::to_string(&p).unwrap());
    let o = bin(d.path(), &["verify", "bent.json", "--report", "r.json"]);
    assert_eq!(code(&o), 1);
    let r = json(d.path().join("r.json"));
    assert!(r["reports"][0]["disentangleResidual"].as_f64().unwrap() > 1e-4);
    assert_eq!(r["reports"][0]["passed"], false);
}

#[test]
fn verify_empty_program_against_identity() {
    let d = TempDir::new().unwrap();
    write(
        d.path(),
        "e.json",
        r#"{"space":{"qubits":1,"cutoff":8},"stepOrder":"steps[0] is applied first","steps":[],"cyclic":true,"expected":[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[1.0,0.0]]]}"#,
    );
    let o = bin(
        d.path(),
        &["verify", "e.json", "--report", "r.json", "--probe-dim", "4"],
    );
    assert_eq!(code(&o), 0);
    let r = json(d.path().join("r.json"));
    assert_eq!(r["reports"][0]["fidelity"].as_f64().unwrap(), 1.0);
    let once = reserialize(&fs::read_to_string(d.path().join("e.json")).unwrap()).unwrap();
    assert_eq!(reserialize(&once).unwrap(), once);
}

#[test]
fn verify_input_errors() {
    let d = TempDir::new().unwrap();
    write(d.path(), "junk.json", "[1, 2");
    assert_eq!(code(&bin(d.path(), &["verify", "junk.json"])), 2);
    write(
        d.path(),
        "kind.json",
        r#"{"space":{"qubits":1,"cutoff":8},"stepOrder":"steps[0] is applied first","steps":[{"kind":"squeeze","r":0.1}],"cyclic":true}"#,
    );
    assert_eq!(code(&bin(d.path(), &["verify", "kind.json"])), 2);
    write(
        d.path(),
        "open.json",
        r#"{"space":{"qubits":1,"cutoff":8},"stepOrder":"steps[0] is applied first","steps":[],"cyclic":false}"#,
    );
    let o = bin(d.path(), &["verify", "open.json", "--probe-dim", "4"]);
    assert_eq!(code(&o), 1);
    assert_eq!(
        code(&bin(d.path(), &["verify", "open.json", "--jobs", "0"])),
        2
    );
}

#[test]
fn verify_jobs_are_deterministic() {
    let d = TempDir::new().unwrap();
    let mut names = Vec::new();
    for (i, g) in ["cnot", "cphase", "swap", "toffoli"].iter().enumerate() {
        let name = format!("g{i}.json");
        assert_eq!(
            code(&bin(d.path(), &["gate", "--name", g, "--out", &name])),
            0
        );
        names.push(name);
    }
    let mut args: Vec<&str> = vec!["verify"];
    args.extend(names.iter().map(String::as_str));
    args.extend(["--report", "r.json"]);
    let mut outputs = Vec::new();
    for jobs in ["1", "3"] {
        let mut a = args.clone();
        a.extend(["--jobs", jobs]);
        assert_eq!(code(&bin(d.path(), &a)), 0);
        outputs.push(fs::read_to_string(d.path().join("r.json")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let r: Value = serde_json::from_str(&outputs[0]).unwrap();
    let sources: Vec<&str> = r["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["source"].as_str().unwrap())
        .collect();
    assert_eq!(sources, ["g0.json", "g1.json", "g2.json", "g3.json"]);
}

#[test]
fn gate_toffoli_round_trips() {
    let d = TempDir::new().unwrap();
    let o = bin(d.path(), &["gate", "--name", "toffoli", "--out", "t.json"]);
    assert_eq!(code(&o), 0);
    assert_round_trip(d.path().join("t.json"));
    assert_eq!(
        code(&bin(
            d.path(),
            &["gate", "--name", "cn_not", "--out", "x.json"]
        )),
        2
    );
    assert_eq!(
        code(&bin(
            d.path(),
            &[
                "gate",
                "--name",
                "encoded_cphase",
                "--code",
                "shor9",
                "--out",
                "x.json"
            ]
        )),
        2
    );
    assert_eq!(
        code(&bin(
            d.path(),
            &["gate", "--name", "cn_not", "--n", "3", "--out", "c3.json"]
        )),
        0
    );
    assert_round_trip(d.path().join("c3.json"));
}

#[test]
fn encoded_gate_verifies_on_code_basis() {
    let d = TempDir::new().unwrap();
    let o = bin(
        d.path(),
        &[
            "gate",
            "--name",
            "encoded_cphase",
            "--code",
            "steane3",
            "--out",
            "e.json",
        ],
    );
    assert_eq!(code(&o), 0);
    assert_round_trip(d.path().join("e.json"));
    assert_eq!(
        code(&bin(d.path(), &["verify", "e.json", "--report", "r.json"])),
        0
    );
    let r = json(d.path().join("r.json"));
    assert_eq!(r["reports"][0]["basis"], "code");
    assert!(r["reports"][0]["disentangleResidual"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn run_aa_grover() {
    let d = TempDir::new().unwrap();
    let o = bin(
        d.path(),
        &[
            "run-aa",
            "--qubits",
            "3",
            "--marked",
            "101",
            "--phi",
            "3.141592653589793",
            "--vartheta",
            "3.141592653589793",
            "--iters",
            "2",
            "--report",
            "aa.json",
        ],
    );
    assert_eq!(code(&o), 0);
    let r = json(d.path().join("aa.json"));
    let it = r["iterations"].as_array().unwrap();
    assert_eq!(it.len(), 3);
    assert!((it[2]["p_marked"].as_f64().unwrap() - 0.9453).abs() < 1e-3);
    assert!((it[2]["p_marked"].as_f64().unwrap() - 0.9453125).abs() < 1e-6);
    assert_round_trip(d.path().join("aa.json"));
    let o = bin(
        d.path(),
        &["run-aa", "--qubits", "3", "--marked", "10", "--iters", "1"],
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn ghz_report() {
    let d = TempDir::new().unwrap();
    let o = bin(
        d.path(),
        &[
            "ghz",
            "--qubits",
            "3",
            "--theta",
            "0.7853981633974483",
            "--report",
            "g.json",
        ],
    );
    assert_eq!(code(&o), 0);
    let r = json(d.path().join("g.json"));
    assert!(r["fidelity"].as_f64().unwrap() >= 1.0 - 1e-8);
    assert_round_trip(d.path().join("g.json"));
    let first = fs::read_to_string(d.path().join("g.json")).unwrap();
    bin(
        d.path(),
        &[
            "ghz",
            "--qubits",
            "3",
            "--theta",
            "0.7853981633974483",
            "--report",
            "g.json",
        ],
    );
    assert_eq!(first, fs::read_to_string(d.path().join("g.json")).unwrap());
    assert_eq!(
        code(&bin(d.path(), &["ghz", "--qubits", "1", "--theta", "0.1"])),
        2
    );
}
