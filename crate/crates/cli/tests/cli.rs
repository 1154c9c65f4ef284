use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reductor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let o = run(args);
    assert!(
        o.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn running() -> String {
    problem("running_example.json").to_string_lossy().into_owned()
}

#[test]
fn info_on_running_example() {
    let p = running();
    let text = run_ok(&["-i", &p, "info"]);
    assert!(text.contains("junior simplex: 7 points"));
    assert!(text.contains("crepant: true"));
    assert!(text.contains("1/4(1,2,1)  (E5)"));

    let v: Value = serde_json::from_str(&run_ok(&["-i", &p, "--json", "info"])).unwrap();
    assert_eq!(v["junior_simplex"].as_array().unwrap().len(), 7);
    assert_eq!(v["crepant"], true);
    assert_eq!(v["valid"], true);
    assert_eq!(v["lattice_index"], "8");
    assert_eq!(v["x_valuations"], serde_json::json!(["1", "1", "1"]));
}

#[test]
fn ramification_on_quarter() {
    let p = problem("quarter_1_2.json");
    let v: Value = serde_json::from_str(&run_ok(&["-i", p.to_str().unwrap(), "--json", "info"])).unwrap();
    assert_eq!(v["x_valuations"], serde_json::json!(["1/2", "1"]));
    assert_eq!(v["crepant"], false);
}

#[test]
fn count_only() {
    let p = running();
    let text = run_ok(&["-i", &p, "enumerate", "--count-only"]);
    assert_eq!(text.lines().last(), Some("1536"));
    assert!(text.contains("E7: 8"));
    let v: Value = serde_json::from_str(&run_ok(&["-i", &p, "--json", "enumerate", "--count-only"])).unwrap();
    assert_eq!(v["total"], 1536);
}

#[test]
fn maxshift_on_trivial_group() {
    let p = problem("trivial.json");
    let v: Value = serde_json::from_str(&run_ok(&["-i", p.to_str().unwrap(), "--json", "maxshift"])).unwrap();
    assert_eq!(v, serde_json::json!({"divisors": [{"char": [0], "coeffs": {}}]}));
}

#[test]
fn emitted_sets_pass_check() {
    let p = running();
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    let mut save = |name: &str, text: String| {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        files.push(path);
    };
    save("canonical.json", run_ok(&["-i", &p, "--json", "canonical"]));
    save("maxshift.json", run_ok(&["-i", &p, "--json", "maxshift"]));
    for (k, line) in run_ok(&["-i", &p, "--json", "enumerate", "--limit", "40"]).lines().enumerate() {
        save(&format!("set{k}.json"), line.to_string());
    }
    let max = dir.path().join("maxshift.json");
    let max = max.to_str().unwrap();
    save("reflect.json", run_ok(&["-i", &p, "--json", "reflect", "--set", max]));
    save("shift.json", run_ok(&["-i", &p, "--json", "shift", "--lambda", "χ3", "--set", max]));
    assert_eq!(files.len(), 44);
    for f in &files {
        let out = run_ok(&["-i", &p, "check", "--set", f.to_str().unwrap()]);
        assert!(out.ends_with("result: reductor set\n"), "{}", f.display());
    }
}

#[test]
fn output_is_deterministic() {
    let p = running();
    for args in [
        vec!["-i", p.as_str(), "info"],
        vec!["-i", p.as_str(), "--json", "enumerate", "--per-ray"],
        vec!["-i", p.as_str(), "enumerate", "--limit", "5"],
    ] {
        assert_eq!(run_ok(&args), run_ok(&args));
    }
}

#[test]
fn failures_and_exit_codes() {
    let p = running();
    let o = run(&["canonical"]);
    assert_eq!(o.status.code(), Some(1));
    let diag: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(diag["error"], "invalid_input");

    let o = run(&["-i", &p, "piece", "--cone", "0", "--set", &p]);
    assert_eq!(o.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let mut divisors: Vec<Value> = (0..8).map(|c| serde_json::json!({"char": c})).collect();
    divisors[1] = serde_json::json!({"char": 1, "coeffs": {"E4": "1/8", "E5": "1/4", "E6": "1/2", "E7": "13/8"}});
    std::fs::write(&bad, serde_json::json!({"divisors": divisors}).to_string()).unwrap();
    let o = run(&["-i", &p, "check", "--set", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("result: not a reductor set"));

    let can = dir.path().join("can.json");
    let max = dir.path().join("max.json");
    std::fs::write(&can, run_ok(&["-i", &p, "--json", "canonical"])).unwrap();
    std::fs::write(&max, run_ok(&["-i", &p, "--json", "maxshift"])).unwrap();
    let o = run(&["-i", &p, "equiv", "--set", can.to_str().unwrap(), "--set", max.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), "equivalent: no\n");

    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--no-such-flag"]).status.code(), Some(1));
}

#[test]
fn cartier_and_quiver() {
    let p = running();
    let coeffs = problem("chi6_coeffs.json");
    let v: Value = serde_json::from_str(&run_ok(&[
        "-i",
        &p,
        "--json",
        "cartier",
        "--char",
        "6",
        "--coeffs",
        coeffs.to_str().unwrap(),
    ]))
    .unwrap();
    assert_eq!(v["cones"][5]["exponent"], serde_json::json!([-3, 1, 3]));
    assert_eq!(v["cones"][5]["monomial"], "y*z^3/x^3");

    let dir = tempfile::tempdir().unwrap();
    let can = dir.path().join("can.json");
    std::fs::write(&can, run_ok(&["-i", &p, "--json", "canonical"])).unwrap();
    let can = can.to_str().unwrap();
    let dot = run_ok(&["-i", &p, "quiver", "--cone", "6", "--set", can, "--dot"]);
    assert!(dot.starts_with("digraph cone_6 {"));
    assert_eq!(dot.matches("->").count(), 24);
    let piece = run_ok(&["-i", &p, "piece", "--cone", "7", "--set", can]);
    assert!(piece.contains("x*y/z"));
}

#[test]
fn general_abelian_group() {
    let p = problem("klein_four.json");
    let p = p.to_str().unwrap();
    let text = run_ok(&["-i", p, "canonical"]);
    assert!(text.contains("χ(1,1)"));
    assert_eq!(run_ok(&["-i", p, "enumerate", "--count-only"]).lines().count(), 2);
}
