//! End-to-end tests of the `gfkit` binary: output bytes, exit codes, and the
//! JSON report contract.

use std::path::PathBuf;
use std::process::{Command, Output};

use gfkit_cli::report::SequenceReport;

fn gfkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gfkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    path.display().to_string()
}

#[test]
fn seq_motzkin_csv() {
    let out = gfkit(&["seq", "motzkin", "--n", "6", "--method", "cf", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1,1,2,4,9,21,51\n");
}

#[test]
fn seq_single_term() {
    let out = gfkit(&["seq", "motzkin", "--n", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn seq_schroeder_bfile_is_byte_stable() {
    let expected = "0 1\n1 2\n2 6\n3 22\n4 90\n5 394\n6 1806\n";
    let first = gfkit(&["seq", "schroeder", "--n", "6", "--format", "bfile"]);
    assert!(first.status.success());
    assert_eq!(stdout(&first), expected);
    let second = gfkit(&["seq", "schroeder", "--n", "6", "--format", "bfile"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn seq_methods_cover_every_family() {
    for (family, extra) in [
        ("motzkin", vec![]),
        ("dyck", vec![]),
        ("riordan", vec![]),
        ("schroeder", vec![]),
        ("kcolored", vec!["--k", "3"]),
        ("gen_motzkin", vec!["--k", "2"]),
        ("fk", vec!["--k", "2"]),
        ("grand_motzkin", vec![]),
        ("trinomial", vec!["--a", "2", "--b", "0", "--c", "1"]),
    ] {
        let mut args = vec!["seq", family, "--n", "8"];
        args.extend(extra);
        let out = gfkit(&args);
        assert!(out.status.success(), "{family}: {}", stderr(&out));
    }
}

#[test]
fn seq_rejects_unknown_family_and_method() {
    let out = gfkit(&["seq", "nope", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown family"));

    let out = gfkit(&["seq", "motzkin", "--n", "4", "--method", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown method"));

    let out = gfkit(&["seq", "gen_motzkin", "--k", "2", "--n", "4", "--method", "formula"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seq_json_lists_terms_as_strings() {
    let out = gfkit(&["seq", "kcolored", "--k", "2", "--n", "5", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["family"], "kcolored");
    assert_eq!(value["params"]["k"], 2);
    assert_eq!(value["terms"][5], "132");
}

#[test]
fn verify_riordan_includes_oracle_columns() {
    let out = gfkit(&["verify", "riordan", "--n", "12"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: SequenceReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.all_agree());
    assert!(report.methods.contains_key("dp"));
    assert!(report.methods.contains_key("brute"));
    assert_eq!(report.methods["cf"].len(), 13);
}

#[test]
fn verify_grand_motzkin_all_methods() {
    let out = gfkit(&["verify", "grand_motzkin", "--n", "12"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: SequenceReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.all_agree());
    for m in ["cf", "radical", "sum", "dp", "brute", "formula"] {
        assert!(report.methods.contains_key(m), "missing {m}");
    }
}

#[test]
fn verify_trinomial_radical_vs_formula() {
    let out = gfkit(&["verify", "trinomial", "--a", "1", "--b", "2", "--c", "3", "--n", "10"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: SequenceReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.all_agree());
    assert!(report.methods.contains_key("radical"));
    assert!(report.methods.contains_key("formula"));
    // The triple sum needs equal rise and fall weights.
    assert!(!report.methods.contains_key("sum"));
}

#[test]
fn verify_report_roundtrips_byte_identically() {
    let out = gfkit(&["verify", "motzkin", "--n", "16"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let report: SequenceReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.render(), text);
}

#[test]
fn verify_caps_brute_with_note() {
    let out = gfkit(&["verify", "motzkin", "--n", "20"]);
    assert!(out.status.success());
    let report: SequenceReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.methods["brute"].len(), 15);
    assert!(report.notes.iter().any(|n| n.contains("brute")));
    assert!(report.all_agree());
}

#[test]
fn identities_pass_and_accept_degenerate_bound() {
    let out = gfkit(&["identities", "--n", "12"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("PASS"));

    let out = gfkit(&["identities", "--n", "0"]);
    assert!(out.status.success());
}

#[test]
fn automaton_fibonacci_file() {
    let out = gfkit(&["automaton", &fixture("fibonacci.aut"), "--n", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1,1,2,3,5,8\n");
}

#[test]
fn automaton_dyck_truncation_matches_dp_oracle() {
    let out = gfkit(&["automaton", &fixture("dyck3.aut"), "--n", "8", "--format", "csv"]);
    assert!(out.status.success());
    let text = fixture("dyck3.aut");
    let content = std::fs::read_to_string(text).unwrap();
    let automaton = gfkit::parse_automaton(&content, 9).unwrap();
    let expected: Vec<String> = gfkit::dp_count(&automaton, 8)
        .unwrap()
        .iter()
        .map(|v| v.to_string())
        .collect();
    assert_eq!(stdout(&out).trim_end(), expected.join(","));
}

#[test]
fn automaton_exit_codes() {
    let out = gfkit(&["automaton", &fixture("constant_edge.aut"), "--n", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("p -> q"));

    let out = gfkit(&["automaton", &fixture("parse_error.aut"), "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"));

    let out = gfkit(&["automaton", "/nonexistent/path.aut", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seq_accepts_automaton_flag() {
    let out = gfkit(&["seq", "--automaton", &fixture("fibonacci.aut"), "--n", "6"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1,1,2,3,5,8,13\n");

    let out = gfkit(&[
        "seq",
        "--automaton",
        &fixture("fibonacci.aut"),
        "--n",
        "4",
        "--method",
        "cf",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seq_depth_override_takes_effect() {
    let default = gfkit(&["seq", "motzkin", "--n", "10", "--method", "cf"]);
    let deep = gfkit(&["seq", "motzkin", "--n", "10", "--method", "cf", "--depth", "40"]);
    assert!(default.status.success() && deep.status.success());
    assert_eq!(default.stdout, deep.stdout);

    // A depth of 1 keeps only the loop level: visibly different terms.
    let shallow = gfkit(&["seq", "motzkin", "--n", "10", "--method", "cf", "--depth", "1"]);
    assert!(shallow.status.success());
    assert_ne!(shallow.stdout, default.stdout);
    assert_eq!(stdout(&shallow), "1,1,1,1,1,1,1,1,1,1,1\n");
}

#[test]
fn usage_errors_exit_2() {
    let out = gfkit(&["seq", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = gfkit(&["seq", "motzkin", "--format", "yaml"]);
    assert_eq!(out.status.code(), Some(2));
    let out = gfkit(&["nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}
