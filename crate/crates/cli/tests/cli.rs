use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frozenqp")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn verify_triangle_example() {
    let o = run(&["verify-example", "5.1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_mutated_example_flags_sign() {
    let o = run(&["verify-example", "5.2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("be + hgf"));
}

#[test]
fn unknown_example_is_usage_error() {
    assert_eq!(run(&["verify-example", "6.1"]).status.code(), Some(2));
}

#[test]
fn non_reduced_word() {
    let o = run(&["coxeter", "reduced", "--graph", &data("a3.json"), "--word", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "false");
}

#[test]
fn birs_build_writes_dot() {
    let dot = scratch("triangle.dot");
    let o = run(&["birs", "build", "--graph", &data("triangle.json"), "--word", "1,2,3,1,3,2,1", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(text.matches("shape=").count(), 7);
    assert_eq!(text.matches("shape=box").count(), 3);
}

#[test]
fn build_rejects_non_reduced_word() {
    let o = run(&["birs", "build", "--graph", &data("triangle.json"), "--word", "1,1,2,3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = ["birs", "build", "--graph", &data("triangle.json"), "--word", "1,2,3,1,3,2,1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["verify-example", "5.2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn qp_commands() {
    let qp = data("mutated_qp.json");
    assert_eq!(run(&["qp", "check", "--qp", &qp]).status.code(), Some(0));
    assert_eq!(run(&["qp", "reduced", "--qp", &qp]).status.code(), Some(0));
    let o = run(&["keller", "verify", "--qp", &qp]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"potential_match\": true"));
    let o = run(&["subalgebra", "a", "--qp", &qp]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["presentation"]["relations"].as_array().unwrap().len(), 2);
}

#[test]
fn out_flag_writes_file() {
    let out = scratch("dim.json");
    let o = run(&["alg", "dim", "--presentation", &data("loop.json"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(out).unwrap().trim(), "2");
}

#[test]
fn dot_format_for_non_quiver_output_is_usage_error() {
    assert_eq!(run(&["alg", "dim", "--presentation", &data("loop.json"), "--format", "dot"]).status.code(), Some(2));
}

#[test]
fn lambda_of_longest_element() {
    let o = run(&["rep", "lambda", "--graph", &data("a3.json"), "--word", "1,2,3,1,2,1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim"], 10);
}

#[test]
fn exact_and_inexact_complexes() {
    let base = r#""quiver": {"vertices": [1, 2], "arrows": [{"id": 1, "src": 1, "tgt": 2}]}"#;
    let s2 = r#"{"dims": {"2": 1}, "mats": {}}"#;
    let p1 = r#"{"dims": {"1": 1, "2": 1}, "mats": {"1": [["1/1"]]}}"#;
    let s1 = r#"{"dims": {"1": 1}, "mats": {}}"#;
    // on column vectors an arrow matrix maps the target space to the source space, so S1 sits inside P
    let exact = format!(
        r#"{{{base}, "modules": [{s1}, {p1}, {s2}], "maps": [{{"blocks": {{"1": [["1/1"]]}}}}, {{"blocks": {{"2": [["1/1"]]}}}}]}}"#
    );
    let path = scratch("exact.json");
    std::fs::write(&path, exact).unwrap();
    assert_eq!(run(&["alg", "exact", "--complex", path.to_str().unwrap()]).status.code(), Some(0));
    let inexact = format!(r#"{{{base}, "modules": [{s1}, {p1}, {s2}], "maps": [{{"blocks": {{}}}}, {{"blocks": {{"2": [["1/1"]]}}}}]}}"#);
    std::fs::write(&path, inexact).unwrap();
    assert_eq!(run(&["alg", "exact", "--complex", path.to_str().unwrap()]).status.code(), Some(1));
}
