use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn segalkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_segalkit")).args(args).output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn suite_passes() {
    let o = segalkit(&["suite", path(&corpus("suite.json")), "--oracle"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn nerve_of_a_poset_is_complete() {
    let o = segalkit(&["check-complete", path(&corpus("nerve_poset.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("levels [3, 5, 7, 9]"));
}

#[test]
fn group_is_not_complete() {
    let o = segalkit(&["check-complete", path(&corpus("bz2.json"))]);
    assert_eq!(o.status.code(), Some(1));
    let o = segalkit(&["check-groupoid", path(&corpus("bz2.json"))]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn boundary_fails_segal_as_expected() {
    let o = segalkit(&["check-segal", path(&corpus("boundary.json"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn demo_reports_both_sizes() {
    let o = segalkit(&["counterexample-demo"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("has 4 objects"));
    assert!(stdout(&o).contains("has 2"));
}

#[test]
fn exponential_is_certified() {
    let f1 = corpus("f1.json");
    let o = segalkit(&["exponential", path(&f1), path(&f1), "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3 objects, 6 arrows"));
    assert!(stdout(&o).contains("passed"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{ "kind": "monoid" }"#).unwrap();
    assert_eq!(segalkit(&["check-segal", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(segalkit(&["check-segal", "no/such/file.json"]).status.code(), Some(2));
    let o = segalkit(&["externalize", path(&corpus("bz2.json")), "--base-bound", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn json_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let o = segalkit(&["yoneda", path(&corpus("f1.json")), path(&corpus("walking_iso.json")), "--json", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    let (a, b) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(a, b);
    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["command"], "yoneda");
    assert_eq!(report["status"], "pass");
}
