use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn rba(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rba")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_fixtures_pass() {
    for (kind, file) in [("rba", "example1.rba.json"), ("rba", "appendixA.rba.json"), ("mrba", "example2.mrba.json"), ("model", "figure3.model.json")] {
        let o = rba(&["check", kind, path(&fixture(file))]);
        assert_eq!(code(&o), 0, "{file}: {}", stdout(&o));
    }
}

#[test]
fn mutated_table_fails_with_rb1_witness() {
    let text = std::fs::read_to_string(fixture("example1.rba.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let meet = v["meet"].as_array_mut().expect("tables fixture");
    let row = meet[1].as_array_mut().unwrap();
    row[2] = serde_json::Value::from("1_B");
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("mutated.json");
    std::fs::write(&p, v.to_string()).unwrap();
    let o = rba(&["check", "rba", path(&p)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("rb1"), "{}", stdout(&o));
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\"elements\": [").unwrap();
    assert_eq!(code(&rba(&["check", "rba", path(&p)])), 2);
    assert_eq!(code(&rba(&["check", "model", "/nonexistent/model.json"])), 2);
    assert_eq!(code(&rba(&["suite", "nonsense"])), 2);
    let o = rba(&["validity", "--model", path(&fixture("figure3.model.json")), "--formula", "K r"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn validity_examples() {
    let ex1 = fixture("example1.rba.json");
    let o = rba(&["validity", "--mrba", path(&ex1), "--assign", "p=X_B,q=X_R", "--formula", "q -> p"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let fig = fixture("figure3.model.json");
    assert_eq!(code(&rba(&["validity", "--model", path(&fig), "--formula", "K 0"])), 1);
    assert_eq!(code(&rba(&["validity", "--model", path(&fig), "--formula", "~K 0"])), 0);
    let o = rba(&["validity", "--model", path(&fig), "--formula", "p", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["false"], "{by,bz,ry}");
}

#[test]
fn modal_formula_needs_an_operator() {
    let o = rba(&["validity", "--mrba", path(&fixture("example1.rba.json")), "--formula", "K p"]);
    assert_eq!(code(&o), 2);
    let o = rba(&["validity", "--mrba", path(&fixture("example2.mrba.json")), "--formula", "K p -> A p"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn render_is_deterministic() {
    for (what, file) in [("hasse", "example1.rba.json"), ("frame", "figure3.model.json"), ("embedding", "appendixA.rba.json")] {
        let a = rba(&["render", what, path(&fixture(file))]);
        let b = rba(&["render", what, path(&fixture(file))]);
        assert_eq!(code(&a), 0);
        assert!(stdout(&a).starts_with("digraph"));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn dualize_round_trip_checks() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("dual.model.json");
    let o = rba(&["dualize", "--mrba", path(&fixture("example2.mrba.json")), "--assign", "p=X_B,q=X_R", "--out", path(&model)]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&rba(&["check", "model", path(&model)])), 0);
    let alg = dir.path().join("dual.mrba.json");
    assert_eq!(code(&rba(&["dualize", "--model", path(&model), "--out", path(&alg)])), 0);
    assert_eq!(code(&rba(&["check", "mrba", path(&alg), "--max-elements", "243"])), 0);
    assert_eq!(code(&rba(&["check", "mrba", path(&alg)])), 2);
}

#[test]
fn verify_both_directions() {
    let o = rba(&["verify", "--prop", "1", "--model", path(&fixture("figure3.model.json")), "--battery", "depth=1,budget=4"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = rba(&["verify", "--prop", "2", "--mrba", path(&fixture("example2.mrba.json")), "--assign", "p=X_B,q=X_R", "--budget", "4"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn filters_and_stone() {
    let ex1 = fixture("example1.rba.json");
    let o = rba(&["filters", path(&ex1), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["filters"].as_array().unwrap().len(), 5);
    assert_eq!(code(&rba(&["stone", path(&ex1)])), 0);
}

#[test]
fn suite_json_is_reproducible() {
    let a = rba(&["suite", "algebra", "--format", "json", "--seed", "7", "--jobs", "1"]);
    let b = rba(&["suite", "algebra", "--format", "json", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
