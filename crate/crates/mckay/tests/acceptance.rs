//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Criteria 1-6 are exact (no tolerances anywhere); criterion 7
//! checks byte-identical CLI output across repeated invocations.

use std::process::Command;

use mckay::report::Report;
use mckay::selftest;

fn assert_criterion(report: Report) {
    println!(
        "{}: {}",
        report.title,
        if report.pass() { "PASS" } else { "FAIL" }
    );
    assert!(report.pass(), "{report}");
}

#[test]
fn criterion_1_character_table_fidelity() {
    assert_criterion(selftest::criterion_1().unwrap());
}

#[test]
fn criterion_2_split_graph_catalog() {
    assert_criterion(selftest::criterion_2().unwrap());
}

#[test]
fn criterion_3_folding_catalog() {
    assert_criterion(selftest::criterion_3().unwrap());
}

#[test]
fn criterion_4_fold_consistency() {
    assert_criterion(selftest::criterion_4().unwrap());
}

#[test]
fn criterion_5_hilbert_and_realizability() {
    assert_criterion(selftest::criterion_5().unwrap());
}

#[test]
fn criterion_6_toric_end_to_end() {
    assert_criterion(selftest::criterion_6().unwrap());
}

fn run_cli(args: &[&str]) -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_mckay"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code())
}

#[test]
fn criterion_7_cli_determinism() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["info", "bo"],
        vec!["info", "cyclic:7"],
        vec!["graph", "bi", "--output", "json"],
        vec!["graph", "bd:4", "--output", "dot"],
        vec!["fold", "bt", "--field", "m=4,H=", "--output", "json"],
        vec!["fold", "cyclic:5", "--field", "m=5,H=4", "--output", "dot"],
        vec![
            "fold", "bd:4", "--field", "m=16,H=15", "--form", "twisted",
        ],
        vec!["realizable", "bd:2", "--field", "m=1,H="],
        vec!["realizable", "bt", "--field", "m=4,H="],
        vec!["realizable", "bi", "--field", "m=20,H=9"],
        vec!["resolve-cyclic", "5", "--form", "constant"],
        vec!["resolve-cyclic", "4", "--form", "mu", "--output", "json"],
        vec!["verify-mckay", "6", "--form", "constant"],
    ];
    for args in commands {
        let (first, code1) = run_cli(&args);
        let (second, code2) = run_cli(&args);
        assert_eq!(code1, code2, "exit codes differ for {args:?}");
        assert_eq!(
            first, second,
            "output of {args:?} differs between invocations"
        );
        assert!(!first.is_empty(), "no output for {args:?}");
    }
    println!("criterion 7: CLI determinism: PASS");
}
