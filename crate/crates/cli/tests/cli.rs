//! End-to-end checks of the `heyq` binary.

use std::path::Path;
use std::process::{Command, Output};

fn heyq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heyq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn eval_in_divisor_lattice() {
    let out = heyq(&["eval", "--n", "900", "neg 10"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "9\n");

    let out = heyq(&["eval", "--n", "900", "10 => 75"]);
    assert_eq!(stdout(&out), "225\n");

    let out = heyq(&["eval", "--n", "900", "10 v neg 10"]);
    assert_eq!(stdout(&out), "90\n");
}

#[test]
fn eval_supernaturals() {
    let out = heyq(&["eval", "neg 2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "Omega(~{2})\n");

    let out = heyq(&["eval", "10 <=> 75"]);
    assert_eq!(stdout(&out), "5^1*Omega(~{2,3,5})\n");
}

#[test]
fn eval_group_rendering() {
    let out = heyq(&["eval", "--as-group", "--n", "900", "900"]);
    assert_eq!(stdout(&out), "900\ngroup: Z(900)\ndual: Z(900)\n");

    let out = heyq(&["eval", "--as-group", "neg 2"]);
    let text = stdout(&out);
    assert!(text.contains("group: (+)_[p in ~{2}] Q_p/Z_p"), "{text}");
    assert!(text.contains("dual: x_[p in ~{2}] Z_p"), "{text}");

    let out = heyq(&["eval", "--as-group", "Omega"]);
    let text = stdout(&out);
    assert!(text.contains("group: Q/Z") && text.contains("dual: Zhat"), "{text}");
}

#[test]
fn eval_parse_error_points_at_the_problem() {
    let out = heyq(&["eval", "10 => => 3"]);
    assert_eq!(code(&out), 1);
    let err = stderr(&out);
    let lines: Vec<&str> = err.lines().collect();
    assert!(lines[0].starts_with("error:"), "{err}");
    assert_eq!(lines[1], "  10 => => 3");
    assert_eq!(lines[2], "        ^");
}

#[test]
fn eval_rejects_non_divisor_atoms_under_a_modulus() {
    let out = heyq(&["eval", "--n", "900", "7 v 10"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("does not divide"));

    let out = heyq(&["eval", "--n", "900", "Omega"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("Omega"));
}

#[test]
fn table_full_and_single_connective() {
    let out = heyq(&["table", "--n", "6"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "a,b,meet,join,implies,equiv");
    assert_eq!(lines.len(), 1 + 16);

    let out = heyq(&["table", "--n", "6", "--op", "implies"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "a,b,implies");
    assert_eq!(lines.len(), 1 + 16);
    for line in &lines[1..] {
        let cells: Vec<&str> = line.split(',').collect();
        if cells[0] == cells[1] {
            assert_eq!(cells[2], "6", "implication diagonal is the top: {line}");
        }
    }

    let out = heyq(&["table", "--n", "1"]);
    assert_eq!(stdout(&out).lines().count(), 2);

    let out = heyq(&["table", "--n", "6", "--op", "xor"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("unknown connective"));
}

#[test]
fn hasse_exports_dot() {
    let out = heyq(&["hasse", "--n", "6"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("digraph {"));
    assert_eq!(text.matches("->").count(), 4);

    let out = heyq(&["hasse", "--n", "12"]);
    assert_eq!(stdout(&out).matches("->").count(), 7);

    let out = heyq(&["hasse", "--n", "900"]);
    let text = stdout(&out);
    // 27 node declarations, Hall divisors boxed
    assert_eq!(text.matches(";\n").count() - text.matches("->").count(), 27);
    assert!(text.contains("\"225\" [shape=box];"));
    assert!(text.contains("\"90\";"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hasse.dot");
    let out = heyq(&["hasse", "--n", "6", "--dot", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(std::fs::read_to_string(&path).unwrap().contains("digraph"));

    let out = heyq(&["hasse", "--n", "6", "--dot", "/nonexistent-dir/x.dot"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("/nonexistent-dir/x.dot"));
}

#[test]
fn bell_with_witness_weights_flags_violation() {
    let out = heyq(&["bell", "--n", "900", "--m", "10,75,36", "--a", "0.4", "--b", "0.3"]);
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["violated"], serde_json::Value::Bool(true));
    assert!((report["margin"].as_f64().unwrap() - 0.3).abs() < 1e-9);
    assert_eq!(report["r"], 900);
}

#[test]
fn bell_with_rho_file_on_a_chain_accepts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rho.json");
    let diag: Vec<f64> = (0..8).map(|i| if i == 1 { 1.0 } else { 0.0 }).collect();
    std::fs::write(&path, format!("{{\"n\": 8, \"diag\": {diag:?}}}")).unwrap();
    let out = heyq(&["bell", "--n", "8", "--m", "2,4,8", "--rho", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["violated"], serde_json::Value::Bool(false));
}

#[test]
fn bell_rejects_malformed_states() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"n": 2, "diag": [0.9, 0.3]}"#).unwrap();
    let out = heyq(&["bell", "--n", "900", "--m", "10,75", "--rho", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("trace"), "stderr: {}", stderr(&out));

    let out = heyq(&["bell", "--n", "900", "--m", "10,75"]);
    assert_eq!(code(&out), 1);

    let out = heyq(&["bell", "--n", "900", "--m", "1,10", "--a", "0.5"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn search_squarefree_modulus_runs_boolean_path() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("rows.csv");
    let out = heyq(&[
        "search", "--n", "30", "--seed", "7", "--samples", "50", "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["violated"], serde_json::Value::Bool(false));
    for member in report["members"].as_array().unwrap() {
        assert!(member["f"].as_f64().unwrap().abs() < 1e-10);
    }
    let rows = std::fs::read_to_string(&csv_path).unwrap();
    assert!(rows.starts_with("tuple,lhs,bound,margin,violated,source\n"));
    assert!(rows.lines().count() > 1);
}

#[test]
fn search_chain_lattice_prints_null() {
    let out = heyq(&["search", "--n", "8", "--seed", "7", "--samples", "10"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "null\n");
}

#[test]
fn search_finds_violation_for_900() {
    let out = heyq(&["search", "--n", "900", "--seed", "7", "--samples", "25"]);
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["margin"].as_f64().unwrap() >= 0.3);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [
        vec!["eval", "--n", "900", "10 <=> 75"],
        vec!["table", "--n", "12"],
        vec!["hasse", "--n", "36"],
        vec!["bell", "--n", "900", "--m", "10,75,36", "--a", "0.35", "--b", "0.25"],
    ] {
        let first = heyq(&args);
        let second = heyq(&args);
        assert_eq!(first.stdout, second.stdout, "args: {args:?}");
        assert_eq!(code(&first), code(&second));
    }
}

#[test]
fn missing_files_and_flags_fail_cleanly() {
    let out = heyq(&["bell", "--n", "900", "--m", "10,75", "--rho", "/no/such/file.json"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("cannot read"));

    // seed is mandatory for search
    let out = heyq(&["search", "--n", "30"]);
    assert_ne!(code(&out), 0);
    assert!(stderr(&out).contains("--seed"));
}

#[test]
fn table_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = heyq(&["table", "--n", "6", "--csv", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(Path::new(&path).exists());
    assert!(text.starts_with("a,b,meet,join,implies,equiv\n"));
}
