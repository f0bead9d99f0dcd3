mod common;

use common::*;
use hrnr::cli::{run, EXIT_REPRODUCTION_FAILED};
use hrnr::geometry::TolerancePolicy;
use hrnr::io::{matrix_file, model_file, parse_region, DilationFile};
use hrnr::linalg::CMatrix;
use hrnr::models::{durszt, hermitian};
use hrnr::range::region;
use serde_json::Value;
use std::path::{Path, PathBuf};
use tempfile::TempDir;

fn hrnr(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("hrnr").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn diag(values: &[(f64, f64)]) -> CMatrix {
    let mut m = CMatrix::zeros(values.len(), values.len());
    for (i, &(re, im)) in values.iter().enumerate() {
        m[(i, i)] = hrnr::geometry::Point::new(re, im);
    }
    m
}

fn matrix_input(dir: &TempDir, values: &[(f64, f64)]) -> PathBuf {
    let body = serde_json::to_string(&matrix_file(&diag(values))).unwrap();
    write(dir, "matrix.json", &body)
}

#[test]
fn region_writes_all_outputs() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "durszt.json", &serde_json::to_string(&model_file(&durszt(2))).unwrap());
    let (svg, out, csv) = (dir.path().join("r.svg"), dir.path().join("r.json"), dir.path().join("r.csv"));
    let (code, stdout) = hrnr(&[
        "region", "--input", s(&input), "-k", "2", "--angles", "90",
        "--svg", s(&svg), "--json", s(&out), "--csv", s(&csv),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());

    let back = parse_region(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let direct = region(&durszt(2), 2, 90, &TolerancePolicy::default()).unwrap();
    assert_eq!(back, direct);

    let svg = std::fs::read_to_string(&svg).unwrap();
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains(r#"class="out""#));

    let csv = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(csv.lines().next(), Some("xi,h"));
    assert_eq!(csv.lines().count(), 91);
}

#[test]
fn region_prints_json_by_default() {
    let dir = TempDir::new().unwrap();
    let input = matrix_input(&dir, &[(0.5, 0.0), (-0.5, 0.0), (0.0, 0.5)]);
    let (code, stdout) = hrnr(&["region", "--input", s(&input), "-k", "1", "--angles", "32"]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["k"], 1);
    assert_eq!(v["support"].as_array().unwrap().len(), 32);
    assert_eq!(v["polygon"].as_array().unwrap().len(), 3);
}

#[test]
fn member_reports_verdicts() {
    let dir = TempDir::new().unwrap();
    let input = matrix_input(&dir, &[(0.5, 0.0), (-0.5, 0.0), (0.0, 0.5)]);
    let (code, stdout) = hrnr(&["member", "--input", s(&input), "-k", "1", "--point", "0,0.1"]);
    assert_eq!(code, 0);
    assert_eq!(json(&stdout)["verdict"], "in");
    let (code, stdout) = hrnr(&["member", "--input", s(&input), "-k", "2", "--point", "-0.9,-0.2"]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["verdict"], "out");
    assert!(v["witness"].is_object());

    let model = write(&dir, "d.json", &serde_json::to_string(&model_file(&durszt(1))).unwrap());
    let (code, stdout) = hrnr(&["member", "--input", s(&model), "-k", "inf", "--point", "0,0"]);
    assert_eq!(code, 0);
    assert_eq!(json(&stdout)["k"], "inf");
}

#[test]
fn selfadjoint_interval() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "h.json", &serde_json::to_string(&model_file(&hermitian())).unwrap());
    let (code, stdout) = hrnr(&["selfadjoint", "--input", s(&input), "-k", "2"]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["interval"][0], -0.2);
    assert_eq!(v["interval"][1], 0.5);
}

#[test]
fn dilate_checks_and_excludes() {
    let dir = TempDir::new().unwrap();
    let input = matrix_input(&dir, &[(0.5, 0.0), (-0.5, 0.0), (0.0, 0.3)]);
    let (code, stdout) = hrnr(&["dilate", "--input", s(&input), "--alpha", "0.7", "--check"]);
    assert_eq!(code, 0);
    let file: DilationFile = serde_json::from_str(&stdout).unwrap();
    assert_eq!(file.matrix.len(), 6);
    assert!(file.unitarity_residual < 1e-10 && file.compression_residual < 1e-10);

    let (code, stdout) = hrnr(&["dilate", "--input", s(&input), "--exclude", "0,-0.2", "-k", "1"]);
    assert_eq!(code, 0);
    let file: DilationFile = serde_json::from_str(&stdout).unwrap();
    assert!(file.unitarity_residual < 1e-10);

    let (code, stdout) = hrnr(&["dilate", "--input", s(&input), "--certify", "0,-0.2", "-k", "1"]);
    assert_eq!(code, 0);
    assert!(json(&stdout).is_object());
}

#[test]
fn wu_conjecture_and_intersection() {
    let dir = TempDir::new().unwrap();
    let input = matrix_input(&dir, &[(0.5, 0.0), (-0.5, 0.0), (0.0, 0.3)]);
    let (code, stdout) = hrnr(&["wu-check", "--input", s(&input), "-k", "1", "--angles", "64"]);
    assert_eq!(code, 0);
    assert_eq!(json(&stdout)["verdict"], "equality_predicted");

    let (code, stdout) = hrnr(&["conjecture", "--input", s(&input), "-k", "1", "--point", "0,-0.5", "--thetas", "90"]);
    assert_eq!(code, 0);
    assert!(json(&stdout).get("outcome").is_some());

    let (code, stdout) = hrnr(&["intersect", "--input", s(&input), "-k", "1", "--alphas", "90", "--samples", "3", "--seed", "7"]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["seed"], 7);
    assert!(v["polygon"].as_array().unwrap().len() >= 3);
}

#[test]
fn reproductions_pass() {
    for example in ["durszt", "bilateral-shift", "hermitian", "square-region"] {
        let (code, stdout) = hrnr(&["reproduce", example]);
        assert_eq!(code, 0, "{example}\n{stdout}");
        assert!(stdout.lines().all(|l| l.starts_with("PASS ")), "{stdout}");
    }
    assert_ne!(EXIT_REPRODUCTION_FAILED, 0);
}

#[test]
fn usage_and_input_errors_exit_1() {
    let dir = TempDir::new().unwrap();
    assert_eq!(hrnr(&["region"]).0, 1);
    assert_eq!(hrnr(&["member", "--input", "x.json", "-k", "1", "--point", "nope"]).0, 1);
    assert_eq!(hrnr(&["--help"]).0, 0);
    let missing = dir.path().join("missing.json");
    assert_eq!(hrnr(&["region", "--input", s(&missing), "-k", "1"]).0, 1);
    let broken = write(&dir, "broken.json", "{\"kind\": \"model\"");
    assert_eq!(hrnr(&["region", "--input", s(&broken), "-k", "1"]).0, 1);
    let ragged = write(&dir, "ragged.json", r#"{"kind":"matrix","data":[[[0,0],[1,0]],[[1,0]]]}"#);
    assert_eq!(hrnr(&["dilate", "--input", s(&ragged)]).0, 1);
}

#[test]
fn numerical_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let input = matrix_input(&dir, &[(1.5, 0.0), (0.0, 0.0)]);
    assert_eq!(hrnr(&["dilate", "--input", s(&input)]).0, 2);
    let model = write(&dir, "d.json", &serde_json::to_string(&model_file(&durszt(1))).unwrap());
    assert_eq!(hrnr(&["dilate", "--input", s(&model)]).0, 1);
}

#[test]
fn undecided_results_exit_3() {
    // Terms approaching their limit from one side of an oblique ray leave
    // the tail unresolved for some support directions.
    let spec = random_mixed_model(&mut rng(8550465162510517563));
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "tail.json", &serde_json::to_string(&model_file(&spec)).unwrap());
    assert_eq!(hrnr(&["region", "--input", s(&input), "-k", "2"]).0, 3);
}
