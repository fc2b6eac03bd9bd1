use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn qhopf(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhopf")).args(args).current_dir(dir).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("qhopf-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn factorizability_of_kz2_and_its_double() {
    let d = scratch("fact");
    assert_eq!(qhopf(&["example", "group_algebra", "-o", "kz2.json"], &d).status.code(), Some(0));
    let o = qhopf(&["factorizable", "kz2.json"], &d);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "not factorizable (rank 1 of 2)\n");
    assert_eq!(qhopf(&["double", "kz2.json", "-o", "dkz2.json"], &d).status.code(), Some(0));
    let o = qhopf(&["factorizable", "dkz2.json"], &d);
    assert_eq!(stdout(&o), "factorizable (rank 4 of 4)\n");
}

#[test]
fn check_passes_on_cocycle_dual() {
    let d = scratch("check");
    qhopf(&["example", "cocycle_dual", "-o", "h2.json"], &d);
    let o = qhopf(&["check", "h2.json"], &d);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("checks passed\n"));
    let o = qhopf(&["check", "h2.json", "--json"], &d);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn exit_codes() {
    let d = scratch("exit");
    // a broken axiom is a failed verification
    let text = String::from_utf8(qhopf(&["example", "group_algebra"], &d).stdout).unwrap();
    std::fs::write(d.join("bad.json"), text.replacen("\"beta\": [\"1\", \"0\"]", "\"beta\": [\"2\", \"0\"]", 1)).unwrap();
    assert_eq!(qhopf(&["check", "bad.json"], &d).status.code(), Some(1));
    // malformed input
    std::fs::write(d.join("oob.json"), text.replacen("[[1, 1, 0], \"1\"]", "[[1, 1, 5], \"1\"]", 1)).unwrap();
    let o = qhopf(&["check", "oob.json"], &d);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("index out of bounds"));
    assert_eq!(qhopf(&["check", "missing.json"], &d).status.code(), Some(2));
    qhopf(&["example", "cocycle_dual", "-o", "h2.json"], &d);
    assert_eq!(qhopf(&["qt-check", "h2.json"], &d).status.code(), Some(2));
    let o = qhopf(&["example", "cocycle_dual", "--n", "3"], &d);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("field lacks required roots of unity"));
}

#[test]
fn suites_on_the_double() {
    let d = scratch("suites");
    qhopf(&["example", "group_algebra", "-o", "kz2.json"], &d);
    qhopf(&["double", "kz2.json", "-o", "dkz2.json"], &d);
    for suite in ["core", "double", "transmutation", "integrals"] {
        let o = qhopf(&["identities", "dkz2.json", "--suite", suite], &d);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
    }
    for cmd in ["qt-check", "transmute", "zeta", "integrals"] {
        assert_eq!(qhopf(&[cmd, "kz2.json"], &d).status.code(), Some(0), "{cmd}");
    }
}

#[test]
fn example_over_a_prime_field() {
    let d = scratch("fp");
    let o = qhopf(&["example", "cocycle_dual", "--n", "3", "--field", "Fp:7"], &d);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"field\": {\"Fp\": 7}"));
    assert_eq!(qhopf(&["example", "group_algebra", "--field", "Fp:8"], &d).status.code(), Some(2));
}
