use std::process::{Command, Output};

fn booltop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_booltop"))
        .args(args)
        .output()
        .expect("run booltop")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn min_dfa_json_is_deterministic_and_round_trips() {
    let args = ["min-dfa", "--alphabet", "ab", "--regex", "(a+b)*b(a+b)"];
    let first = booltop(&args);
    let second = booltop(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(v["states"], 4);
}

#[test]
fn min_dfa_table_lists_four_states() {
    let out = booltop(&[
        "min-dfa",
        "--alphabet",
        "ab",
        "--regex",
        "(a+b)*b(a+b)",
        "--format",
        "table",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("states: 4"));
}

#[test]
fn circ_min_dot_has_six_states() {
    let out = booltop(&[
        "circ-min",
        "--alphabet",
        "ab",
        "--circ-regex",
        "(a+b)*aa(a+b)*+a(a+b)*a",
        "--format",
        "dot",
    ]);
    assert!(out.status.success());
    let dot = stdout(&out);
    let nodes = (0..10).filter(|q| dot.contains(&format!("q{q} ["))).count();
    assert_eq!(nodes, 6);
    assert!(dot.contains("dashed"));
}

#[test]
fn cuttable_succeeds_and_fails_with_machine_readable_reason() {
    let good = booltop(&[
        "cuttable",
        "--alphabet",
        "ab",
        "--regex",
        "(a+b)*b(aa)*a+(aa)*a",
    ]);
    assert!(good.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&good)).unwrap();
    assert_eq!(v["pairs"].as_array().unwrap().len(), 2);

    let bad = booltop(&["cuttable", "--alphabet", "abc", "--regex", "ab+ac+ba+bc+ca+cb"]);
    assert_eq!(bad.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_str(&String::from_utf8(bad.stderr).unwrap()).unwrap();
    assert_eq!(err["error"], "NotCuttable");
}

#[test]
fn usage_errors_exit_one() {
    let missing_flag = booltop(&["min-dfa", "--regex", "a*"]);
    assert_eq!(missing_flag.status.code(), Some(1));
    let unknown_verb = booltop(&["frobnicate"]);
    assert_eq!(unknown_verb.status.code(), Some(1));
    let bad_format = booltop(&[
        "monoid",
        "--alphabet",
        "a",
        "--regex",
        "a*",
        "--format",
        "dot",
    ]);
    assert_eq!(bad_format.status.code(), Some(1));
}

#[test]
fn help_and_version_exit_zero() {
    assert!(booltop(&["--help"]).status.success());
    assert!(booltop(&["--version"]).status.success());
}

#[test]
fn validate_round_trips_through_a_file() {
    let dir = std::env::temp_dir().join("booltop-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dcfa.json");
    let write = booltop(&[
        "circ-min",
        "--alphabet",
        "ab",
        "--circ-regex",
        "(a+b)*aa(a+b)*+a(a+b)*a",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(write.status.success());
    let check = booltop(&["validate", "--in", path.to_str().unwrap()]);
    assert!(check.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&check)).unwrap();
    assert_eq!(v["valid"], true);
}

#[test]
fn state_space_reports_a_free_parity_space() {
    let out = booltop(&[
        "state-space",
        "--alphabet",
        "ab",
        "--regex",
        "(aa)*",
        "--circ-regex",
        "(aa)*",
        "--eps",
        "+-",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cardinality"], 16);
    assert_eq!(v["irreducibles"], 4);
    assert_eq!(v["free"], true);
}

#[test]
fn nonrotational_circular_regex_is_a_domain_error() {
    let out = booltop(&["circ-min", "--alphabet", "ab", "--circ-regex", "ab"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stderr).unwrap()).unwrap();
    assert_eq!(err["error"], "NotCircular");
}

#[test]
fn min_nfa_counts_liftings() {
    let out = booltop(&["min-nfa", "--alphabet", "ab", "--regex", "(a+b)*b(a+b)"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], "16");
    assert_eq!(v["nfas"].as_array().unwrap().len(), 16);
}

#[test]
fn derive_cyclic_agrees_with_min_dfa_of_the_derivative() {
    let out = booltop(&[
        "derive-cyclic",
        "--alphabet",
        "ab",
        "--circ-regex",
        "(a+b)*aa(a+b)*+a(a+b)*a",
        "--letter",
        "a",
        "--format",
        "table",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("states: 4"));
}
