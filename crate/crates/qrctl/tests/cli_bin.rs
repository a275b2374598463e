//! End-to-end runs of the compiled binary: exit codes, stream separation,
//! and byte-for-byte determinism of repeated invocations.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_str()
        .unwrap()
        .to_owned()
}

fn qrctl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrctl"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn check_reports_satisfying_states_on_stdout() {
    let out = qrctl(&["check", &data("m1.json"), "Eas F r"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "s\nt\n");
    assert!(out.stderr.is_empty());
}

#[test]
fn diagnostics_go_to_stderr_not_stdout() {
    let out = qrctl(&["check", &data("m1.json"), "Eas F r", "--trace"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "s\nt\n");
    assert!(String::from_utf8(out.stderr).unwrap().contains("trace:"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["check", &data("m1.json"), "Eas F r", "--json"],
        vec!["equiv", &data("m2.json"), "pos", "--quotient"],
        vec!["star", &data("m1.json"), "Eas", &data("dra_eventually_r.json")],
        vec!["alternate", &data("m2.json")],
        vec!["oracle", &data("m1.json"), "U", "true", "r"],
    ] {
        let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let strs: Vec<&str> = owned.iter().map(String::as_str).collect();
        let first = qrctl(&strs);
        let second = qrctl(&strs);
        assert_eq!(first.status.code(), Some(0), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.stderr, second.stderr, "{args:?}");
    }
}

#[test]
fn missing_input_exits_one() {
    let out = qrctl(&["check", "/nonexistent/model.json", "Eas F r"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_formula_exits_one() {
    let out = qrctl(&["check", &data("m1.json"), "Epos (q U"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn non_qrctl_nesting_exits_two() {
    let out = qrctl(&["check", &data("m1.json"), "Eas (X X q)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exhausted_refinement_budget_exits_three() {
    let out = qrctl(&["equiv", &data("m2.json"), "pos", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn nondeterministic_automaton_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("partial.json");
    std::fs::write(
        &path,
        r#"{"alphabet": [], "locations": [{"name": "a", "successors": []}], "initial": ["a"], "pairs": []}"#,
    )
    .unwrap();
    let out = qrctl(&["star", &data("m1.json"), "Eas", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8(out.stderr).unwrap().contains("clause"));
}

#[test]
fn help_exits_zero() {
    let out = qrctl(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for sub in ["check", "equiv", "star", "alternate", "oracle"] {
        assert!(text.contains(sub), "help must mention {sub}");
    }
}
