use jacobi::diagrams::{chord_diagram, to_json, Diagram};
use std::path::Path;
use std::process::{Command, Output};

fn jacobi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacobi")).args(args).output().unwrap()
}

fn stdout_json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write_diagram(dir: &Path, name: &str, d: &Diagram) -> String {
    let p = dir.join(name);
    std::fs::write(&p, to_json(d).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn dims_table() {
    let v = stdout_json(&jacobi(&["dims", "6"]));
    let a: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["dim_a"].as_u64().unwrap()).collect();
    let p: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["dim_p"].as_u64().unwrap()).collect();
    assert_eq!(a, vec![0, 1, 1, 3, 4, 9]);
    assert_eq!(p, vec![0, 1, 1, 2, 3, 5]);
    assert_eq!(stdout_json(&jacobi(&["dims", "0"])), serde_json::json!([]));
}

#[test]
fn eval_files() {
    let dir = tempfile::tempdir().unwrap();
    let chord = write_diagram(dir.path(), "chord.json", &chord_diagram(&[1, 0]).unwrap());
    let v = stdout_json(&jacobi(&["eval", &chord, "--algebra", "slN"]));
    assert_eq!(v["value"], "N^1 - N^-1");
    let v = stdout_json(&jacobi(&["eval", &chord, "--algebra", "sl2"]));
    assert_eq!(v["value"], "3/2");
    let empty = write_diagram(dir.path(), "empty.json", &Diagram::empty());
    for alg in ["glN", "soN", "so5"] {
        assert_eq!(stdout_json(&jacobi(&["eval", &empty, "--algebra", alg]))["value"], "1", "{alg}");
    }
}

#[test]
fn export_empty_diagram() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write_diagram(dir.path(), "empty.json", &Diagram::empty());
    let o = jacobi(&["export", &empty]);
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().contains("graph"));
}

#[test]
fn exit_codes() {
    assert_eq!(jacobi(&["dims", "99"]).status.code(), Some(2));
    assert_eq!(jacobi(&["eval", "--named", "nope", "--algebra", "sl2"]).status.code(), Some(3));
    assert_eq!(jacobi(&["eval", "/no/such/file.json", "--algebra", "sl2"]).status.code(), Some(3));
    assert_eq!(jacobi(&["frobnicate"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"max_legs": 4, "bogus": 1}"#).unwrap();
    assert_eq!(jacobi(&["--config", cfg.to_str().unwrap(), "dims", "3"]).status.code(), Some(3));
    std::fs::write(&cfg, r#"{"max_chord_degree": 3}"#).unwrap();
    assert_eq!(jacobi(&["--config", cfg.to_str().unwrap(), "dims", "4"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_cache_neutral() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let plain = jacobi(&["basis", "P", "4"]).stdout;
    let cold = jacobi(&["--cache-dir", cache, "basis", "P", "4"]).stdout;
    let warm = jacobi(&["--cache-dir", cache, "basis", "P", "4"]).stdout;
    assert!(!plain.is_empty());
    assert_eq!(plain, cold);
    assert_eq!(cold, warm);
    assert_eq!(jacobi(&["dims", "5"]).stdout, jacobi(&["--cache-dir", cache, "dims", "5"]).stdout);
}

#[test]
fn markdown_format() {
    let o = jacobi(&["--format", "markdown", "dims", "3"]);
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().starts_with('|'));
}
