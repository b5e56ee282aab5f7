use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn fremb(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_fremb")).args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, report)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn matrix(v: &Value) -> Vec<Vec<f64>> {
    serde_json::from_value(v.clone()).unwrap()
}

#[test]
fn dist_of_identical_curves_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "same.jsonl",
        "{\"id\":\"a\",\"vertices\":[[0,0],[1,1],[2,0]]}\n{\"id\":\"b\",\"vertices\":[[0,0],[1,1],[2,0]]}\n",
    );
    for metric in ["continuous", "weak", "discrete"] {
        let (code, rep) = fremb(&["dist", "--input", &input, "--metric", metric]);
        assert_eq!(code, 0);
        assert_eq!(matrix(&rep["results"]["matrix"]), vec![vec![0.0, 0.0], vec![0.0, 0.0]]);
    }
}

#[test]
fn csv_and_jsonl_inputs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let jsonl = write(
        dir.path(),
        "c.jsonl",
        "{\"id\":\"a\",\"vertices\":[[0,0],[1,0]]}\n{\"id\":\"b\",\"vertices\":[[0,1],[1,1]]}\n",
    );
    let csv = write(dir.path(), "c.csv", "id,vertex_index,x0,x1\na,0,0,0\na,1,1,0\nb,0,0,1\nb,1,1,1\n");
    let (_, a) = fremb(&["dist", "--input", &jsonl]);
    let (_, b) = fremb(&["dist", "--input", &csv, "--format", "csv"]);
    assert_eq!(a["results"], b["results"]);
    assert_eq!(matrix(&a["results"]["matrix"])[0][1], 1.0);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.jsonl", "{\"id\":\"a\",\"vertices\":[[0,0],[1]]}\n");
    assert_eq!(fremb(&["dist", "--input", &bad]).0, 2);
    let missing = dir.path().join("nope.jsonl");
    assert_eq!(fremb(&["dist", "--input", missing.to_str().unwrap()]).0, 2);
    assert_eq!(fremb(&["embed", "--input", &bad, "--eps", "0", "--seed", "1"]).0, 2);
    assert_eq!(fremb(&["frobnicate"]).0, 2);
}

#[test]
fn too_many_centers_fails() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "two.jsonl",
        "{\"id\":\"a\",\"vertices\":[[0,0],[1,0]]}\n{\"id\":\"b\",\"vertices\":[[0,1],[1,1]]}\n",
    );
    let (code, _) = fremb(&["cluster", "--input", &input, "--k", "3", "--ell", "2"]);
    assert_ne!(code, 0);
}

#[test]
fn verify_distortion_matches_emitted_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("rw.jsonl");
    let data_s = data.to_str().unwrap();
    let (code, _) = fremb(&[
        "generate", "--family", "random-walk", "--seed", "3", "--n", "5", "--m", "4", "--d", "6", "--curves-out", data_s,
    ]);
    assert_eq!(code, 0);
    let (code, rep) = fremb(&["verify", "--input", data_s, "--eps", "0.2", "--seed", "1"]);
    assert_eq!(code, 0);
    let before = matrix(&rep["results"]["before"]);
    let after = matrix(&rep["results"]["after"]);
    let mut worst: f64 = 0.0;
    for i in 0..before.len() {
        for j in i + 1..before.len() {
            worst = worst.max((after[i][j] - before[i][j]).abs() / before[i][j]);
        }
    }
    assert_eq!(rep["results"]["max_distortion"].as_f64().unwrap(), worst);
    assert!(worst <= 0.2);
    assert_eq!(rep["passed"], Value::Bool(true));
}

#[test]
fn perturbed_copies_are_recovered_by_both_objectives() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("pc.jsonl");
    let data_s = data.to_str().unwrap();
    fremb(&[
        "generate", "--family", "perturbed-copies", "--seed", "9", "--n", "8", "--m", "4", "--d", "3", "--k", "2",
        "--curves-out", data_s,
    ]);
    for objective in ["center", "median"] {
        let (code, rep) = fremb(&["cluster", "--input", data_s, "--objective", objective, "--k", "2", "--ell", "4"]);
        assert_eq!(code, 0);
        let assignment = rep["results"]["clustering"]["assignment"].as_object().unwrap();
        let labels: Vec<u64> = (0..8).map(|i| assignment[&format!("c{i:04}")].as_u64().unwrap()).collect();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(labels[i] == labels[j], i % 2 == j % 2, "{objective}: {labels:?}");
            }
        }
    }
}

#[test]
fn simplify_keeps_endpoints_and_respects_ell() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "spike.jsonl",
        "{\"id\":\"s\",\"vertices\":[[0,0],[2,0],[3,2],[4,0],[6,0]]}\n",
    );
    let out = dir.path().join("out.jsonl");
    let (code, _) = fremb(&["simplify", "--input", &input, "--ell", "2", "--curves-out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(out).unwrap();
    let row: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(row["vertices"], serde_json::json!([[0.0, 0.0], [6.0, 0.0]]));
}
