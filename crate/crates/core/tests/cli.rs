use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn frenetlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frenetlab"))
        .args(args)
        .env_remove("FRENETLAB_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn frenet_csv_for_an_expression() {
    let out = frenetlab(&["frenet", "--curve", "cos(t), sin(t), t", "--grid", "0:1:11"]);
    assert!(out.status.success());
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(header.first().map(String::as_str), Some("param"));
    assert_eq!(rows.len(), 11);
    let (k, t) = (header.iter().position(|h| h == "kappa").unwrap(), header.iter().position(|h| h == "tau").unwrap());
    for row in &rows {
        assert!((row[k] - 0.5).abs() < 1e-9 && (row[t] - 0.5).abs() < 1e-9);
    }
}

#[test]
fn outputs_are_identical_across_runs() {
    let args = ["direction", "--curve", "ex7.2", "--kind", "mannheim", "--phase", "0.3"];
    let a = frenetlab(&args);
    let b = frenetlab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("-0.0000000000000000e0"));
}

#[test]
fn json_documents_embed_the_resolved_config() {
    let out = frenetlab(&["indicatrix", "--curve", "ex7.1", "--format", "json", "--tol", "1e-4"]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["config"]["command"], "indicatrix");
    assert_eq!(doc["config"]["tolerance"], 1e-4);
    assert!(doc["version"].is_string());
}

#[test]
fn output_file_and_svg_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("beta.svg");
    let out = frenetlab(&[
        "direction",
        "--curve",
        "ex7.1",
        "--kind",
        "bertrand",
        "--theta",
        "1.0471975511965979",
        "--format",
        "svg",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let svg = fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.matches("<polyline").count() == 3);
}

#[test]
fn classify_reports_the_slant_helix_example() {
    let out = frenetlab(&["classify", "--curve", "ex7.2"]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["results"]["is_slant_helix"], true);
    assert_eq!(doc["results"]["is_general_helix"], false);
    assert_eq!(doc["results"]["is_spherical"], false);
}

#[test]
fn verify_passes_for_every_standard_curve() {
    for id in ["circle", "slant-helix"] {
        let out = frenetlab(&["verify", "--curve", id]);
        assert!(out.status.success(), "{id}: {}", String::from_utf8_lossy(&out.stderr));
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        let checks = doc["checks"].as_array().unwrap();
        assert!(!checks.is_empty());
        assert!(checks.iter().all(|c| c["pass"] == true), "{id}");
    }
}

#[test]
fn degenerate_frames_exit_with_two_and_a_record() {
    let out = frenetlab(&["frenet", "--curve", "line", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["results"]["error"]["kind"], "degenerate");
    assert_eq!(doc["results"]["error"]["index"], 0);

    let out = frenetlab(&["frenet", "--curve", "line"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));
}

#[test]
fn input_errors_exit_with_one() {
    for args in [
        &["frenet", "--curve", "no-such-curve"][..],
        &["direction", "--curve", "ex7.1"],
        &["direction", "--curve", "ex7.1", "--kind", "bertrand"],
        &["frenet", "--curve", "cos(t), sin(", "--grid", "0:1:5"],
        &["frenet", "--curve", "ex7.1", "--grid", "1:0:5"],
        &["reproduce", "circle"],
    ] {
        let out = frenetlab(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_and_version_succeed() {
    assert!(frenetlab(&["--help"]).status.success());
    assert!(frenetlab(&["--version"]).status.success());
    assert_eq!(frenetlab(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn tolerance_can_come_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_frenetlab"))
        .args(["classify", "--curve", "circle"])
        .env("FRENETLAB_TOL", "0.01")
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["config"]["tolerance"], 0.01);
}
