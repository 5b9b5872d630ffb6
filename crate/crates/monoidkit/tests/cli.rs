use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn doc(name: &str) -> String {
    corpus().join(name).display().to_string()
}

fn monoidkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monoidkit")).args(args).env_remove("MONOIDKIT_BOUND").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("monoidkit-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn idempotent_pair_has_four_primes() {
    let o = monoidkit(&["--json", "spec", &doc("idem2.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["primes"], serde_json::json!(["(0)", "(x)", "(y)", "(x,y)"]));
    assert_eq!(v["dimension"], 2);
}

#[test]
fn projective_plane_has_picard_group_z() {
    let o = monoidkit(&["pic", &doc("p2.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Z");
}

#[test]
fn output_is_deterministic() {
    for args in [["--json", "spec", "idem4.json"], ["--json", "hom", "ax.json"], ["--json", "pic", "lines3.json"]] {
        let mut argv: Vec<String> = args.iter().map(|a| if a.ends_with(".json") { doc(a) } else { a.to_string() }).collect();
        if args[1] == "hom" {
            argv.push(doc("ax.json"));
        }
        let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
        let a = monoidkit(&argv);
        let b = monoidkit(&argv);
        assert_eq!(a.stdout, b.stdout, "{argv:?}");
        assert_eq!(a.status.code(), Some(0), "{argv:?}");
        serde_json::from_slice::<serde_json::Value>(&a.stdout).expect("json output parses");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(monoidkit(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(monoidkit(&["spec"]).status.code(), Some(1));
    assert_eq!(monoidkit(&["--help"]).status.code(), Some(0));
    assert_eq!(monoidkit(&["validate", &doc("garbage.json")]).status.code(), Some(2));
    assert_eq!(monoidkit(&["validate", &doc("fold.json")]).status.code(), Some(2));
    assert_eq!(monoidkit(&["--bound", "2", "spec", &doc("trunc4.json")]).status.code(), Some(3));
    assert_eq!(monoidkit(&["hom", &doc("ax.json"), &doc("ax.json"), "--cap", "1"]).status.code(), Some(3));
}

#[test]
fn json_errors_are_structured() {
    let o = monoidkit(&["--json", "validate", &doc("garbage.json")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["error"].is_string());
    assert!(v["message"].as_str().unwrap().contains("table"));
}

#[test]
fn environment_bound_applies_and_flag_wins() {
    let run = |env: &str, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_monoidkit"));
        c.env("MONOIDKIT_BOUND", env).args(extra).args(["spec", &doc("trunc4.json")]);
        c.output().unwrap().status.code()
    };
    assert_eq!(run("2", &[]), Some(3));
    assert_eq!(run("2", &["--bound", "12"]), Some(0));
    assert_eq!(run("12", &[]), Some(0));
}

#[test]
fn corpus_passes() {
    let o = monoidkit(&["corpus", &corpus().display().to_string()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn empty_corpus_passes() {
    let dir = scratch("empty");
    assert_eq!(monoidkit(&["corpus", &dir.display().to_string()]).status.code(), Some(0));
}

#[test]
fn missing_or_corrupt_sidecars_fail() {
    let dir = scratch("corrupt");
    fs::copy(corpus().join("c2.json"), dir.join("c2.json")).unwrap();
    let o = monoidkit(&["--json", "corpus", &dir.display().to_string()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("MissingExpectation"), "{}", stdout(&o));
    fs::write(dir.join("c2.expect.json"), "{not json").unwrap();
    let o = monoidkit(&["--json", "corpus", &dir.display().to_string()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("MissingExpectation"), "{}", stdout(&o));
}

#[test]
fn wrong_expectation_is_a_mismatch() {
    let dir = scratch("mismatch");
    fs::copy(corpus().join("idem2.json"), dir.join("idem2.json")).unwrap();
    fs::write(dir.join("idem2.expect.json"), r#"{"command": "spec", "exit": 0, "json": {"dimension": 3}}"#).unwrap();
    let o = monoidkit(&["corpus", &dir.display().to_string()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAIL"));
}
