use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use povm_order::{Povm, Tolerances};
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_povm-order"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

/// Dumps every fixture into a fresh directory.
fn fixtures() -> TempDir {
    let dir = TempDir::new().unwrap();
    for name in ["ex3", "ex4", "prop1_counter"] {
        let o = run(&[
            "construct",
            "example",
            name,
            "--out-dir",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
    }
    dir
}

fn load(p: &str) -> Povm {
    Povm::from_json(&fs::read_to_string(p).unwrap(), &Tolerances::default()).unwrap()
}

fn hs_equal(a: &Povm, b: &Povm, eps: f64) -> bool {
    a.len() == b.len()
        && a.elements()
            .iter()
            .zip(b.elements())
            .all(|(x, y)| (x - y).hs_norm() <= eps)
}

#[test]
fn validate_exit_codes() {
    let dir = fixtures();
    let ok = run(&["validate", &path(dir.path(), "ex3_N.json")]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).starts_with("valid"));

    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"dim":2,"elements":[[[[1.5,0],[0,0]],[[0,0],[0,0]]],[[[-0.5,0],[0,0]],[[0,0],[1,0]]]]}"#,
    )
    .unwrap();
    let o = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("element 1 is not positive semidefinite"));
    let o = run(&["--json", "validate", bad.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"][0]["kind"], "not-psd");

    let malformed = dir.path().join("malformed.json");
    fs::write(&malformed, "{\"dim\": 2,").unwrap();
    assert_eq!(code(&run(&["validate", malformed.to_str().unwrap()])), 2);
    assert_eq!(
        code(&run(&["validate", &path(dir.path(), "missing.json")])),
        2
    );
}

#[test]
fn entropy_values() {
    let dir = fixtures();
    let d = dir.path();
    let o = run(&["entropy", &path(d, "ex3_M.json"), &path(d, "ex3_rho.json")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "0.811278 bits\n");

    let o = run(&[
        "entropy",
        &path(d, "ex3_N.json"),
        &path(d, "ex3_rho.json"),
        "--sigma",
        &path(d, "ex3_sigma.json"),
    ]);
    assert_eq!(stdout(&o), "inf\n");
    let o = run(&[
        "--json",
        "entropy",
        &path(d, "ex3_N.json"),
        &path(d, "ex3_rho.json"),
        "--sigma",
        &path(d, "ex3_sigma.json"),
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "inf");
    assert_eq!(v["config"]["seed"], 0);

    let trivial = d.join("trivial.json");
    fs::write(&trivial, povm_order::trivial::<f64>(2).unwrap().to_json()).unwrap();
    let o = run(&[
        "entropy",
        trivial.to_str().unwrap(),
        &path(d, "ex3_sigma.json"),
    ]);
    assert_eq!(stdout(&o), "1.000000 bits\n");
    let o = run(&[
        "--log-base",
        "e",
        "entropy",
        trivial.to_str().unwrap(),
        &path(d, "ex3_rho.json"),
    ]);
    assert_eq!(stdout(&o), format!("{:.6} nats\n", 2f64.ln()));
}

#[test]
fn dimension_mismatch_is_semantic() {
    let dir = fixtures();
    let d = dir.path();
    let qutrit = d.join("qutrit.json");
    fs::write(&qutrit, povm_order::trivial::<f64>(3).unwrap().to_json()).unwrap();
    let o = run(&[
        "entropy",
        qutrit.to_str().unwrap(),
        &path(d, "ex3_rho.json"),
    ]);
    assert_eq!(code(&o), 1);
    let o = run(&["classify", qutrit.to_str().unwrap(), &path(d, "ex3_M.json")]);
    assert_eq!(code(&o), 1);
}

fn classify_json(d: &Path, n: &str, m: &str) -> Value {
    let o = run(&[
        "--json",
        "--samples",
        "500",
        "classify",
        &path(d, n),
        &path(d, m),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn classify_examples() {
    let dir = fixtures();
    let d = dir.path();

    let c = classify_json(d, "ex3_N.json", "ex3_M.json");
    let nm = &c["classification"]["n_vs_m"];
    assert!(nm["linear"].is_object());
    assert!(nm["stochastic"]["map"].is_null());
    assert_eq!(nm["entropy"]["status"], "refuted");
    assert!(nm["entropy"]["witness"]["margin"].as_f64().unwrap() >= 0.81 - 1e-6);
    assert!(nm["entropy"]["witness"]["rho"]["matrix"].is_array());

    let c = classify_json(d, "ex3_N_lambda.json", "ex3_M.json");
    let nm = &c["classification"]["n_vs_m"];
    assert_eq!(nm["entropy"]["status"], "holds");
    assert_eq!(nm["entropy"]["certificate"]["kind"], "mixing");
    assert_eq!(nm["relent"]["status"], "refuted");

    let c = classify_json(d, "ex3_M.json", "ex3_M.json");
    assert_eq!(c["classification"]["equivalence"], true);

    let o = run(&[
        "--samples",
        "500",
        "classify",
        &path(d, "ex3_N.json"),
        &path(d, "ex3_M.json"),
    ]);
    let text = stdout(&o);
    assert!(text.contains("post-processing ≫   no"));
    assert!(text.contains("refuted (span witness)") || text.contains("refuted (search witness)"));
}

#[test]
fn json_output_is_deterministic() {
    let dir = fixtures();
    let d = dir.path();
    let args = [
        "--json",
        "--seed",
        "7",
        "--samples",
        "300",
        "classify",
        &path(d, "ex4_M.json"),
        &path(d, "ex4_N.json"),
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn constructions_round_trip() {
    let dir = fixtures();
    let d = dir.path();
    let pair = d.join("pair");
    let o = run(&[
        "construct",
        "eps-mix",
        "--eps",
        "0.25",
        "--out-dir",
        pair.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("λ″ = 0.015625"));
    let n = path(&pair, "N.json");
    let m = path(&pair, "M.json");
    assert!(hs_equal(&load(&n), &load(&path(d, "ex3_N.json")), 0.0));
    assert!(hs_equal(&load(&m), &load(&path(d, "ex3_M.json")), 1e-15));

    for file in [&n, &m] {
        assert_eq!(code(&run(&["validate", file])), 0);
        let written = fs::read_to_string(file).unwrap();
        assert_eq!(load(file).to_json(), written);
    }

    let nl = path(d, "nl.json");
    let o = run(&[
        "construct",
        "n-lambda",
        "--povm",
        &n,
        "--lambda",
        "0.015625",
        "--out",
        &nl,
    ]);
    assert_eq!(code(&o), 0);
    assert!(hs_equal(
        &load(&nl),
        &load(&path(d, "ex3_N_lambda.json")),
        1e-15
    ));

    let map = d.join("map.json");
    fs::write(&map, "[[0.75, 0.25], [0.25, 0.75]]").unwrap();
    let o = run(&[
        "construct",
        "postprocess",
        "--povm",
        &n,
        "--map",
        map.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let noisy = Povm::from_json(&stdout(&o), &Tolerances::default()).unwrap();
    assert!(hs_equal(&noisy, &load(&m), 1e-15));

    fs::write(&map, "[[0.75, 0.5], [0.5, 0.75]]").unwrap();
    let o = run(&[
        "construct",
        "postprocess",
        "--povm",
        &n,
        "--map",
        map.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    let o = run(&[
        "construct",
        "eps-mix",
        "--eps",
        "0.7",
        "--out-dir",
        pair.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(code(&run(&["construct", "example", "ex9"])), 1);
}

#[test]
fn reproduce_reports() {
    let o = run(&["--samples", "2000", "reproduce"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("All checks passed."));

    let o = run(&["--samples", "500", "reproduce", "--value-tol", "1e-30"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("MISMATCH"));

    let o = run(&["--json", "--samples", "500", "reproduce"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["passed"], true);
    assert!(v["report"]["values"][0]["closed_form"].is_string());
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(code(&run(&["--log-base", "10", "reproduce"])), 2);
    assert_eq!(code(&run(&["--tol-psd", "-1", "reproduce"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}
