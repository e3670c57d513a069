//! End-to-end checks of the `rttk` binary: exit-code contract, registry
//! listing, report determinism, and the preset-file import path.

use assert_cmd::Command;
use predicates::prelude::*;

fn rttk() -> Command {
    Command::cargo_bin("rttk").unwrap()
}

#[test]
fn list_suites_prints_registry() {
    rttk()
        .arg("list-suites")
        .assert()
        .success()
        .stdout(predicate::str::contains("main1-graded-limit"))
        .stdout(predicate::str::contains("pbw-twisted-dimension"))
        .stdout(predicate::str::contains("default bounds"));
}

#[test]
fn passing_suite_exits_zero_with_versioned_json() {
    rttk()
        .args(["run", "--m", "1", "--big-n", "1", "--suite", "qybe"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"schemaVersion\": 1"))
        .stdout(predicate::str::contains("\"allPassed\": true"));
}

#[test]
fn failing_suite_exits_one_with_witness() {
    // the transpose-commutation identity genuinely fails on a super space
    let out = rttk()
        .args(["run", "--m", "1", "--n", "1", "--suite", "r-identities"])
        .assert()
        .code(1);
    let stdout = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let report = &doc["reports"][0];
    assert_eq!(report["status"], "fail");
    assert!(!report["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn unknown_suite_is_a_config_error() {
    rttk()
        .args(["run", "--m", "1", "--big-n", "1", "--suite", "no-such-suite"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("unknown suite"));
}

#[test]
fn missing_parity_split_is_a_config_error() {
    rttk()
        .args(["run", "--m", "1", "--suite", "qybe"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("--n / --big-n"));
}

#[test]
fn no_timing_output_is_byte_stable() {
    let run = || {
        let out = rttk()
            .args([
                "run", "--m", "1", "--big-n", "1", "--suite", "qybe", "--suite", "r-identities",
                "--no-timing",
            ])
            .assert()
            .success();
        out.get_output().stdout.clone()
    };
    let first = run();
    assert!(!first.is_empty());
    assert_eq!(first, run());
}

#[test]
fn parallel_preserves_declaration_order() {
    let out = rttk()
        .args([
            "run", "--m", "1", "--big-n", "1", "--suite", "r-identities", "--suite", "qybe",
            "--no-timing", "--parallel", "--format", "text",
        ])
        .assert()
        .success();
    let stdout = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    let r_pos = stdout.find("r-identities").unwrap();
    let q_pos = stdout.find("qybe").unwrap();
    assert!(r_pos < q_pos);
}

#[test]
fn negative_controls_invert_the_contract() {
    // under the documented mutation the suite must fail with a witness,
    // and the run as a whole reports success of the negative control
    rttk()
        .args([
            "run", "--m", "1", "--big-n", "1", "--suite", "qybe", "--negative-controls",
        ])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"status\": \"fail\""));
}

#[test]
fn quaternary_alias_resolves() {
    // long-form alias accepted for the suite recording the variant
    rttk()
        .args([
            "run", "--m", "1", "--n", "1", "--suite", "twisted-quaternary", "--level-bound", "1",
            "--word-bound", "2", "--negative-controls",
        ])
        .assert()
        .code(predicate::in_iter([0, 1]));
}

#[test]
fn preset_file_round_trip_and_rejection() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(
        &good,
        r#"{
  "generators": [
    { "family": "loop-t", "i": 1, "j": 1, "r": 0, "parity": 0 },
    { "family": "loop-t", "i": 1, "j": 2, "r": 0, "parity": 1 }
  ],
  "relations": [ [ ["q - 1", [0, 1]], ["-1", [1, 0]] ] ],
  "grading": { "dim": 2, "fold": null, "graded": true, "maxLen": 2, "degMin": 0, "degMax": 2 }
}"#,
    )
    .unwrap();
    rttk()
        .args(["run", "--m", "1", "--big-n", "1", "--suite", "qybe"])
        .arg("--preset-file")
        .arg(&good)
        .assert()
        .success()
        .stderr(predicate::str::contains("preset file validated"));

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{
  "generators": [ { "family": "loop-t", "i": 5, "j": 1, "r": 0, "parity": 0 } ],
  "relations": [],
  "grading": { "dim": 2, "fold": null, "graded": true, "maxLen": 2, "degMin": 0, "degMax": 2 }
}"#,
    )
    .unwrap();
    rttk()
        .args(["run", "--m", "1", "--big-n", "1", "--suite", "qybe"])
        .arg("--preset-file")
        .arg(&bad)
        .assert()
        .code(2)
        .stderr(predicate::str::contains("generators[0]"));
}
