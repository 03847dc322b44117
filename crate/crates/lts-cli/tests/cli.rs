//! End-to-end tests driving the `lts` binary: exit codes, report
//! schemas, determinism, and the documented flags.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn lts() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lts"))
}

fn run(args: &[&str]) -> Output {
    lts().args(args).output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn json_of(output: &Output) -> Value {
    serde_json::from_str(&stdout_of(output)).expect("JSON report")
}

#[test]
fn check_sphere_is_controllable_exit_zero() {
    let out = run(&["check", "--catalog", "so3_mod_so2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["dim"], 2);
    assert_eq!(report["target_dim"], 2);
    assert_eq!(report["controllable"], true);
    // Schema keys, sorted.
    let keys: Vec<&String> = report.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        [
            "basis",
            "controllable",
            "depth",
            "dim",
            "target_dim",
            "words"
        ]
    );
}

#[test]
fn check_goe_published_controls_exit_one() {
    let out = run(&[
        "check",
        "--catalog",
        "goe_sym3",
        "--generators",
        "a1,a3,a4",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = json_of(&out);
    assert_eq!(report["dim"], 4);
    assert_eq!(report["target_dim"], 6);
    assert_eq!(report["controllable"], false);
}

#[test]
fn failed_check_names_unreached_directions() {
    let out = run(&[
        "check",
        "--catalog",
        "goe_sym3",
        "--generators",
        "a1,a3,a4",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = json_of(&out);
    assert_eq!(report["unreached"], serde_json::json!(["a5", "a6"]));
}

#[test]
fn paper_mode_cites_published_and_computed_values() {
    let out = run(&[
        "check",
        "--catalog",
        "goe_sym3",
        "--generators",
        "a1,a3,a4",
        "--paper-mode",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("[[a1,a4],a4] = -2 a2"), "text: {text}");
    assert!(text.contains("[[a1,a4],a4] = 2 a1 - 2 a2"), "text: {text}");
}

#[test]
fn check_empty_input_file_exit_two() {
    let dir = std::env::temp_dir();
    let path = dir.join("lts_cli_empty_input.json");
    std::fs::write(&path, "{}").unwrap();
    let out = run(&["check", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("generators"), "stderr: {err}");
}

#[test]
fn check_file_input_with_labels() {
    let path = write_m1_file("lts_cli_m1.json");
    let out = run(&[
        "check",
        "--file",
        path.to_str().unwrap(),
        "--generators",
        "e2,e4,e5",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout_of(&out));
    let report = json_of(&out);
    assert_eq!(report["dim"], 4);
    assert_eq!(report["controllable"], true);
}

#[test]
fn file_input_without_target_exit_two() {
    let dir = std::env::temp_dir();
    let path = dir.join("lts_cli_no_target.json");
    std::fs::write(
        &path,
        r#"{"generators": [{"n": 2, "entries": [[0, 1], [0, 0]]}]}"#,
    )
    .unwrap();
    let out = run(&["check", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("target"), "stderr: {err}");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = ["check", "--catalog", "coe_su3_mod_so3", "--format", "json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout_of(&first), stdout_of(&second));
}

#[test]
fn exit_code_does_not_depend_on_format() {
    for format in ["json", "text"] {
        let out = run(&["check", "--catalog", "goe_sym3", "--format", format]);
        assert_eq!(out.status.code(), Some(1), "format {format}");
    }
}

#[test]
fn catalog_list_is_stable_and_complete() {
    let first = run(&["catalog", "list"]);
    let second = run(&["catalog", "list"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout_of(&first), stdout_of(&second));
    let text = stdout_of(&first);
    assert!(text.contains("se3_lts_6"));
    assert_eq!(text.matches("se3_lts_").count(), 7);
}

#[test]
fn catalog_export_unknown_id_exit_two() {
    let out = run(&["catalog", "export", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn catalog_export_requires_pitch_for_class_two() {
    let out = run(&["catalog", "export", "se3_lts_2"]);
    assert_eq!(out.status.code(), Some(2));
    let ok = run(&[
        "catalog",
        "export",
        "se3_lts_2",
        "--pitch",
        "0.5",
        "--format",
        "json",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let entry = json_of(&ok);
    assert_eq!(entry["pitch"], 0.5);
    assert_eq!(entry["labels"][1], "e4+p*e1");
}

#[test]
fn min_controls_m1_reports_three() {
    let out = run(&["min-controls", "--catalog", "se3_lts_6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["minimum_cardinality"], 3);
    let subsets = report["subsets"].as_array().unwrap();
    assert!(subsets.contains(&serde_json::json!([2, 4, 5])));
}

#[test]
fn verify_axioms_pass_exit_zero() {
    let out = run(&["verify-axioms", "--catalog", "se3_full", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout_of(&out));
    let report = json_of(&out);
    assert_eq!(report["passed"], true);
}

#[test]
fn flow_cert_word_passes_for_certificate_word() {
    let out = run(&[
        "flow-cert",
        "word",
        "--catalog",
        "se3_lts_6",
        "--word",
        "[[2,4],5]",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout_of(&out));
    let report = json_of(&out);
    assert_eq!(report["word"], "[[2,4],5]");
    assert_eq!(report["passed"], true);
    assert_eq!(report["t_grid"].as_array().unwrap().len(), 5);
    assert_eq!(report["residuals"].as_array().unwrap().len(), 5);
    assert!(report["fitted_order"].as_f64().unwrap() >= 0.9);
}

#[test]
fn flow_cert_word_rejects_bad_grid() {
    let out = run(&[
        "flow-cert",
        "word",
        "--catalog",
        "se3_lts_6",
        "--word",
        "[[2,4],5]",
        "--t-grid",
        "1e-2,1e-1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flow_cert_phi_full_rank() {
    let out = run(&[
        "flow-cert",
        "phi",
        "--catalog",
        "so3_mod_so2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["rank"], 2);
    assert_eq!(report["full_rank"], true);
}

#[test]
fn flow_cert_phi_uncontrollable_reports_empty_certificate() {
    let out = run(&[
        "flow-cert",
        "phi",
        "--catalog",
        "goe_sym3",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = json_of(&out);
    assert_eq!(report["controllable"], false);
    assert_eq!(report["certificate"], serde_json::json!([]));
}

#[test]
fn depth_cap_reports_unstabilized_closure() {
    let out = run(&[
        "check",
        "--catalog",
        "goe_sym3",
        "--generators",
        "a1,a4,a6",
        "--max-depth",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = json_of(&out);
    assert_eq!(report["stabilized"], false);
    assert_eq!(report["dim"], 3);
}

#[test]
fn flow_cert_gamma_passes_on_sphere() {
    let out = run(&[
        "flow-cert",
        "gamma",
        "--catalog",
        "so3_mod_so2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["passed"], true);
    assert!(!report["reports"].as_array().unwrap().is_empty());
}

#[test]
fn lts_tol_env_is_honored_and_validated() {
    let out = lts()
        .args(["check", "--catalog", "so3_mod_so2"])
        .env("LTS_TOL", "1e-6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let bad = lts()
        .args(["check", "--catalog", "so3_mod_so2"])
        .env("LTS_TOL", "banana")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));

    // An explicit flag wins over the environment.
    let flag_wins = lts()
        .args(["check", "--catalog", "so3_mod_so2", "--tol", "1e-9"])
        .env("LTS_TOL", "banana")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
}

#[test]
fn output_flag_writes_report_file() {
    let dir = std::env::temp_dir();
    let path = dir.join("lts_cli_report.json");
    let _ = std::fs::remove_file(&path);
    let out = run(&[
        "check",
        "--catalog",
        "so3_mod_so2",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).is_empty());
    let body: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(body["controllable"], true);
}

#[test]
fn unknown_generator_label_exit_two() {
    let out = run(&["check", "--catalog", "goe_sym3", "--generators", "a9"]);
    assert_eq!(out.status.code(), Some(2));
}

fn write_m1_file(name: &str) -> PathBuf {
    // The M1 ambient family {e1, e2, e4, e5} in the wire format, with
    // real entries abbreviated to bare numbers.
    let body = r#"{
  "labels": ["e1", "e2", "e4", "e5"],
  "target_dim": 4,
  "generators": [
    {"n": 4, "entries": [[0,0,0,1],[0,0,0,0],[0,0,0,0],[0,0,0,0]]},
    {"n": 4, "entries": [[0,0,0,0],[0,0,0,1],[0,0,0,0],[0,0,0,0]]},
    {"n": 4, "entries": [[0,0,0,0],[0,0,-1,0],[0,1,0,0],[0,0,0,0]]},
    {"n": 4, "entries": [[0,0,1,0],[0,0,0,0],[-1,0,0,0],[0,0,0,0]]}
  ]
}"#;
    let path = std::env::temp_dir().join(name);
    std::fs::write(&path, body).unwrap();
    path
}
