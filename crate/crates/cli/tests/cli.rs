use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use simple_drawings::{encode, fixtures};

fn drawings(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drawings"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_file(path: &Path) -> Value {
    serde_json::from_slice(&fs::read(path).unwrap()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_natural_k5_has_five_crossings() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k5.json");
    let run = drawings(&[
        "generate",
        "--kind",
        "natural",
        "--n",
        "5",
        "--seed",
        "1",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(
        run.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let doc = json_file(&out);
    assert_eq!(doc["n"], 5);
    assert_eq!(doc["crossings"].as_array().unwrap().len(), 5);
    assert!(dir.path().join("k5.points.json").exists());
}

#[test]
fn generate_random_k3_has_no_crossings() {
    let run = drawings(&["generate", "--kind", "random", "--n", "3", "--seed", "9"]);
    assert_eq!(run.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&run.stdout).unwrap();
    assert!(doc["crossings"].as_array().unwrap().is_empty());
}

#[test]
fn too_small_n_is_a_usage_error() {
    let run = drawings(&["generate", "--kind", "natural", "--n", "2"]);
    assert_eq!(run.status.code(), Some(3));
    assert!(!run.stderr.is_empty());
}

#[test]
fn unknown_flags_are_usage_errors() {
    assert_eq!(drawings(&["verify", "--bogus"]).status.code(), Some(3));
    assert_eq!(
        drawings(&["verify", "--kind", "natural", "--n", "5"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        drawings(&["verify", "--kind", "natural", "--n", "5", "--seed", "0", "--checks", "t9"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn verify_natural_k6_passes_with_expected_counts() {
    let run = drawings(&[
        "verify", "--kind", "natural", "--n", "6", "--seed", "3", "--checks", "all",
    ]);
    assert_eq!(
        run.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&run.stdout)
    );
    let doc: Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(doc["pass"], true);
    let reports = doc["entries"][0]["reports"].as_array().unwrap();
    let names: Vec<&str> = reports
        .iter()
        .map(|r| r["theorem"].as_str().unwrap())
        .collect();
    for t in ["t1", "t2", "t3", "segbound", "natural", "claims"] {
        assert!(names.contains(&t), "missing {t} in {names:?}");
    }
    for r in reports {
        assert_eq!(r["counts"]["faces"], 26);
        assert_eq!(r["counts"]["crossings"], 15);
        assert_eq!(r["counts"]["triangles"], 20);
    }
}

#[test]
fn verify_seed_range_orders_entries_by_seed() {
    let run = drawings(&[
        "verify", "--kind", "random", "--n", "6", "--seeds", "3..8", "--checks", "t1,t3",
    ]);
    assert_eq!(run.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&run.stdout).unwrap();
    let seeds: Vec<u64> = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["seed"].as_u64().unwrap())
        .collect();
    assert_eq!(seeds, vec![3, 4, 5, 6, 7]);
}

#[test]
fn verify_rejects_asymmetric_crossing_lists() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let mut doc: Value = serde_json::from_slice(&encode(&fixtures::one_crossing_k4())).unwrap();
    doc["order"]["2-4"] = Value::Array(vec![]);
    fs::write(&path, serde_json::to_vec(&doc).unwrap()).unwrap();
    let run = drawings(&["verify", "--in", path_str(&path), "--checks", "all"]);
    assert_eq!(
        run.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let report: Value = serde_json::from_slice(&run.stdout).unwrap();
    let violations = report["entries"][0]["validation"]["violations"]
        .as_array()
        .unwrap();
    assert!(violations
        .iter()
        .any(|v| v["rule"] == "crossing-list-asymmetry"));
}

#[test]
fn verify_rejects_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    fs::write(&path, b"{\"n\": 4,").unwrap();
    assert_eq!(
        drawings(&["verify", "--in", path_str(&path)]).status.code(),
        Some(2)
    );
    let missing = dir.path().join("absent.json");
    assert_eq!(
        drawings(&["verify", "--in", path_str(&missing)])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_k3_theorem2_alone() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k3.json");
    fs::write(&path, encode(&fixtures::k3())).unwrap();
    let run = drawings(&["verify", "--in", path_str(&path), "--checks", "t2"]);
    assert_eq!(run.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&run.stdout).unwrap();
    let reports = doc["entries"][0]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["theorem"], "t2");
    assert_eq!(reports[0]["pass"], true);
    assert_eq!(reports[0]["counts"]["faces"], 2);
    assert_eq!(reports[0]["counts"]["triangles"], 1);
}

#[test]
fn render_marks_every_crossing() {
    let dir = tempfile::tempdir().unwrap();
    let drawing = dir.path().join("k5.json");
    let svg = dir.path().join("k5.svg");
    assert_eq!(
        drawings(&[
            "generate",
            "--kind",
            "natural",
            "--n",
            "5",
            "--seed",
            "2",
            "--out",
            path_str(&drawing)
        ])
        .status
        .code(),
        Some(0)
    );
    let run = drawings(&[
        "render",
        "--in",
        path_str(&drawing),
        "--out",
        path_str(&svg),
    ]);
    assert_eq!(
        run.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("class=\"crossing\"").count(), 5);
    assert_eq!(text.matches("class=\"edge\"").count(), 10);
    assert_eq!(text.matches("class=\"vertex\"").count(), 5);
}

#[test]
fn render_triangle_has_no_crossing_markers() {
    let dir = tempfile::tempdir().unwrap();
    let drawing = dir.path().join("k3.json");
    let svg = dir.path().join("k3.svg");
    drawings(&[
        "generate",
        "--kind",
        "random",
        "--n",
        "3",
        "--seed",
        "4",
        "--out",
        path_str(&drawing),
    ]);
    let run = drawings(&[
        "render",
        "--in",
        path_str(&drawing),
        "--out",
        path_str(&svg),
        "--shade-faces",
    ]);
    assert_eq!(run.status.code(), Some(0));
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("class=\"edge\"").count(), 3);
    assert_eq!(text.matches("class=\"crossing\"").count(), 0);
    assert_eq!(text.matches("class=\"face\"").count(), 1);
}

#[test]
fn render_without_geometry_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("abstract.json");
    fs::write(&path, encode(&fixtures::planar_k4())).unwrap();
    let run = drawings(&["render", "--in", path_str(&path)]);
    assert_eq!(run.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&run.stderr);
    assert!(stderr.contains("no-geometry"), "{stderr}");
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut drawings_out = Vec::new();
    let mut reports = Vec::new();
    for round in 0..2 {
        let d = dir.path().join(format!("d{round}.json"));
        let r = dir.path().join(format!("r{round}.json"));
        drawings(&[
            "generate",
            "--kind",
            "random",
            "--n",
            "7",
            "--seed",
            "11",
            "--out",
            path_str(&d),
        ]);
        drawings(&[
            "verify",
            "--kind",
            "random",
            "--n",
            "7",
            "--seeds",
            "0..6",
            "--out",
            path_str(&r),
        ]);
        drawings_out.push(fs::read(&d).unwrap());
        reports.push(fs::read(&r).unwrap());
    }
    assert_eq!(drawings_out[0], drawings_out[1]);
    assert_eq!(reports[0], reports[1]);
}
