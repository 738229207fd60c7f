use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn inproj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inproj")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const EXAMPLE: &str = "char: 32003\nvars: x0 x1 x2 x3\ngens:\nx0*x2 - x1^2\nx0*x1 - x1*x3 - x2^2\nx0^2 - x0*x3 - x1*x2\n";

#[test]
fn eliminate_example() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write(dir.path(), "ex.txt", EXAMPLE);
    let o = inproj(&["eliminate", &doc, "--front", "x0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "x1^3 - x2^3 - x1*x2*x3");
    let o = inproj(&["--json", "eliminate", &doc]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vars"], serde_json::json!(["x1", "x2", "x3"]));
}

#[test]
fn gen_then_betti() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let o = inproj(&["gen", "plucker24", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    let o = inproj(&["betti", path.to_str().unwrap(), "--module", "ideal", "--imax", "4", "--jmax", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row2: Vec<&str> = text.lines().find(|l| l.trim_start().starts_with("2 |")).unwrap().split_whitespace().collect();
    assert_eq!(&row2[2..5], ["5", "5", "-"]);
    let o = inproj(&["--json", "betti", path.to_str().unwrap(), "--module", "ideal", "--imax", "4", "--jmax", "4"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["entries"][2][3], 1);
    assert_eq!(v["truncated"], false);
}

#[test]
fn gen_json_document_is_readable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    assert!(inproj(&["--json", "gen", "rnc:3", "-o", path.to_str().unwrap()]).status.success());
    let o = inproj(&["classify", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("MinimalDegree"));
}

#[test]
fn project_from_label_and_coordinates() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.txt");
    inproj(&["gen", "two_planes_p4", "-o", path.to_str().unwrap()]);
    let o = inproj(&["--json", "project", path.to_str().unwrap(), "--point", "e0"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["pd_after"], 2);
    assert_eq!(v["report"]["depth_after"], 2);
    let o = inproj(&["project", path.to_str().unwrap(), "--point", "1,0,1,0,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn chain_and_pei() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    inproj(&["gen", "rnc:5", "-o", path.to_str().unwrap()]);
    let o = inproj(&["--json", "chain", path.to_str().unwrap(), "--steps", "2"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["reports"][1]["beta02_after"], 3);
    let o = inproj(&["pei", path.to_str().unwrap()]);
    assert!(stdout(&o).contains("stabilization index: 1"));
}

#[test]
fn gb_orders() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write(dir.path(), "ex.txt", EXAMPLE);
    let o = inproj(&["gb", &doc, "--order", "block-x0"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "x1^3 - x2^3 - x1*x2*x3"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(inproj(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(inproj(&["verify", "no-such-check"]).status.code(), Some(2));
    let bad = write(dir.path(), "bad.txt", "char: 7\nvars: x\ngens:\ny\n");
    assert_eq!(inproj(&["gb", &bad]).status.code(), Some(2));
    let doc = write(dir.path(), "ex.txt", EXAMPLE);
    assert_eq!(inproj(&["--pair-budget", "1", "gb", &doc, "--order", "block-x0"]).status.code(), Some(3));
    let o = inproj(&["verify", "example-3.3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS example-3.3"));
}

#[test]
fn verify_json_is_stable() {
    let a = stdout(&inproj(&["--json", "verify", "lb-veronese", "nonacm-depth"]));
    let b = stdout(&inproj(&["--json", "verify", "lb-veronese", "nonacm-depth"]));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["passed"], 2);
}

#[test]
fn characteristic_override() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write(dir.path(), "ex.txt", EXAMPLE);
    let o = inproj(&["--char", "7", "--json", "gb", &doc]);
    assert!(o.status.success());
    let o = inproj(&["--char", "8", "gb", &doc]);
    assert_eq!(o.status.code(), Some(2));
}
