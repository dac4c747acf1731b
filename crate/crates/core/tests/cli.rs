use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perverse-hodge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("perverse-hodge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn perverse_k3_csv() {
    let o = run(&["perverse", "--model", "k3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1,0,1\n0,20,0\n1,0,1\n");
}

#[test]
fn json_report_shape() {
    let o = run(&["perverse", "--model", "toy-b3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in [
        "n",
        "ph",
        "symmetric",
        "hodge_match",
        "violations",
        "input_digest",
        "version",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(
        v["ph"],
        serde_json::json!([[1, 0, 1], [0, 1, 0], [1, 0, 1]])
    );
    assert_eq!(v["hodge_match"], serde_json::Value::Null);
}

#[test]
fn reports_are_reproducible() {
    let a = run(&["lie", "--model", "toy-b3", "--seed", "3"]);
    let b = run(&["lie", "--model", "toy-b3", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["lie", "--model", "toy-b3", "--seed", "4"]);
    let digest = |o: &Output| {
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()["input_digest"].clone()
    };
    assert_ne!(digest(&a), digest(&c));
}

#[test]
fn gv_rows() {
    let o = run(&["gv", "--hmax", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1,,\n24,-2,\n324,-54,3\n");
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["perverse", "--model", "k4"]).status.code(), Some(2));
    assert_eq!(run(&["perverse"]).status.code(), Some(2));
    assert_eq!(
        run(&["perverse", "--model", "k3", "--b2", "22"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["perverse", "--model", "k3", "--beta", "e2", "--eta", "f2,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    let bad = temp_file(
        "bad.json",
        r#"{"n": 1, "graded_dims": [1, 0, 1], "integration": [1]}"#,
    );
    let o = run(&["model", "build", "--model-file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("graded_dims"));
}

#[test]
fn orthogonal_pair_is_an_input_error() {
    // e1 and e2 are orthogonal isotropic vectors.
    let o = run(&["perverse", "--model", "k3", "--eta", "e2", "--beta", "e1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failing_check_exits_1() {
    let hodge = temp_file(
        "res.json",
        r#"{"n": 1, "entries": [[1, 0, 0], [0, 10, 0], [0, 0, 1]]}"#,
    );
    let o = run(&[
        "surface",
        "--model",
        "rational-elliptic",
        "--hodge-file",
        hodge.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ph"][1][1], 8);
    assert_eq!(v["hodge_match"], false);
}

#[test]
fn surface_from_file() {
    let data = temp_file(
        "k3.json",
        r#"{"base_genus": 0, "betti": [1, 0, 22, 0, 1], "fiber_components": [3, 3, 2, 2, 1], "invariant_rank": 0}"#,
    );
    let o = run(&["surface", "--model-file", data.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["leray"][2][0], 7);
    assert_eq!(v["ph"][1][1], 20);
}

#[test]
fn gram_file_model() {
    let gram = temp_file("gram.json", r#"[[0, 1, 0], [1, 0, 0], [0, 0, "1"]]"#);
    let o = run(&[
        "model",
        "build",
        "--gram-file",
        gram.to_str().unwrap(),
        "--fujiki",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["graded_dims"], serde_json::json!([1, 0, 3, 0, 1]));
}

#[test]
fn description_model_with_explicit_classes() {
    let desc = temp_file(
        "plane.json",
        r#"{"n": 1, "graded_dims": [1, 0, 2, 0, 1], "mult": [[2, 2, 0, 1, 0, 1]], "integration": [1]}"#,
    );
    let path = desc.to_str().unwrap();
    let o = run(&[
        "perverse",
        "--model-file",
        path,
        "--eta",
        "1,0",
        "--beta",
        "0,1",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["ph"],
        serde_json::json!([[1, 0, 1], [0, 0, 0], [1, 0, 1]])
    );
    assert_eq!(
        run(&["perverse", "--model-file", path]).status.code(),
        Some(2)
    );
}

#[test]
fn compare_hodge_k3_markdown() {
    let o = run(&["compare-hodge", "--model", "k3", "--format", "markdown"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("### hodge numbers"));
    assert!(text.contains("- PASS perverse_equals_hodge"));
}
