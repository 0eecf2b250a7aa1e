//! End-to-end tests of the command-line surface: verbs, exit codes, file
//! formats, and the byte-stability contract.

use std::path::Path;
use std::process::{Command, Output};

fn saxlkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_saxlkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn kron_exit_codes_follow_positivity() {
    let out = saxlkit(&["kron", "[3,3,3]", "[3,3,3]", "[3,3,3]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1");

    let out = saxlkit(&["kron", "[3,3]", "[3,3]", "[3,3]"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout(&out).trim(), "0");

    // malformed partitions are usage errors
    let out = saxlkit(&["kron", "[2,3]", "[3,2]", "[3,2]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn char_value_and_column_dump() {
    let out = saxlkit(&["char", "[2,1]", "[3]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "-1");

    let out = saxlkit(&["char", "--column", "[2,1]"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("class,partition,value"));
    assert_eq!(text.lines().count(), 4);
    assert!(text.contains("\"[2,1]\",[3],1"));
}

#[test]
fn support_lists_constituents() {
    let out = saxlkit(&["support", "[3,2,1]"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 12);
    assert!(text.trim_end().ends_with("# 11 constituents"));

    // the guard refuses silly sizes unless raised
    let out = saxlkit(&["support", "[8,7,6,5,4,3,2,1]"]);
    assert_eq!(out.status.code(), Some(2));
    let out = saxlkit(&["support", "[8,7,6,5,4,3,2,1]", "--max-n", "36"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn certify_and_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("target.kcert.json");
    let out = saxlkit(&[
        "certify",
        "10",
        "[19,19,3,3,3,3,1,1,1,1,1]",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = saxlkit(&["check-cert", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("valid:"));

    // tampering with the conclusion must be caught, with a node path
    let text = std::fs::read_to_string(&path).unwrap();
    let forged = text.replacen("\"[19,19,3,3,3,3,1,1,1,1,1]\"", "\"[19,19,3,3,3,3,2,1,1,1,1]\"", 1);
    assert_ne!(text, forged);
    let bad = dir.path().join("forged.kcert.json");
    std::fs::write(&bad, forged).unwrap();
    let out = saxlkit(&["check-cert", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("node"));

    // missing files are usage errors
    let out = saxlkit(&["check-cert", "missing.kcert.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_family_end_to_end_with_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let certs = dir.path().join("certs");
    let report_path = dir.path().join("report.csv");
    let out = saxlkit(&[
        "saxl-verify",
        "--family",
        "triple_hooks",
        "--from",
        "4",
        "--to",
        "4",
        "--certs-dir",
        certs.to_str().unwrap(),
        "--out",
        report_path.to_str().unwrap(),
        "--stable-output",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = std::fs::read_to_string(&report_path).unwrap();
    assert!(report.starts_with("target,status,certificate_path,millis"));
    assert!(report.trim_end().ends_with("failed=0 elapsed_ms=0"));

    // every emitted certificate re-checks through the CLI
    let family_dir = certs.join("triple_hooks").join("4");
    let mut checked = 0;
    for entry in std::fs::read_dir(&family_dir).unwrap() {
        let path = entry.unwrap().path();
        assert!(has_kcert_suffix(&path));
        let out = saxlkit(&["check-cert", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", path.display());
        checked += 1;
    }
    // one certificate per report row (header and summary excluded)
    let rows = report.lines().count() - 2;
    assert_eq!(checked, rows);
    assert_eq!(checked, 2, "the two Durfee-3 partitions of 10");
}

fn has_kcert_suffix(path: &Path) -> bool {
    path.file_name()
        .and_then(|n| n.to_str())
        .is_some_and(|n| n.ends_with(".kcert.json"))
}

#[test]
fn stable_output_is_byte_identical_across_runs() {
    let run = || {
        let out = saxlkit(&[
            "--threads",
            "2",
            "saxl-verify",
            "--family",
            "staircase_hooks",
            "--from",
            "1",
            "--to",
            "6",
            "--stable-output",
        ]);
        assert_eq!(out.status.code(), Some(0));
        stdout(&out)
    };
    let first = run();
    let second = run();
    assert_eq!(first, second);
    assert!(first.contains("6:[21],certified"));
}

#[test]
fn stats_table_pins_the_small_staircase() {
    let out = saxlkit(&["stats", "--rho-max", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row3 = text.lines().find(|l| l.starts_with("3,")).unwrap();
    // n=6, 11 partitions, 6 weakly below, all 11 comparable
    assert!(row3.starts_with("3,6,11,6,11,1.000000"));
}

#[test]
fn staircase_like_listing_and_verification() {
    let out = saxlkit(&["staircase-like", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "[4,1,1,1]");

    let out = saxlkit(&["staircase-like", "12", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("failed=0"));
}

#[test]
fn audit_passes_with_default_allowlist() {
    let out = saxlkit(&["audit", "--audit-cap", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("failed=0"));
}

#[test]
fn cache_cap_env_is_accepted() {
    let out = Command::new(env!("CARGO_BIN_EXE_saxlkit"))
        .env("SAXLKIT_CACHE_ENTRIES", "4096")
        .args(["char", "[3,2,1]", "[1,1,1,1,1,1]"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "16");
}

#[test]
fn triple_hooks_order_ten_full_family_via_binary() {
    let out = saxlkit(&[
        "saxl-verify",
        "--family",
        "triple_hooks",
        "--from",
        "10",
        "--to",
        "10",
        "--out",
        "/dev/null",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary = String::from_utf8_lossy(&out.stderr);
    assert!(summary.contains("targets=87252"), "{summary}");
    assert!(summary.contains("failed=0"), "{summary}");
}

#[test]
fn golden_report_for_tiny_hook_family() {
    let out = saxlkit(&[
        "saxl-verify",
        "--family",
        "staircase_hooks",
        "--from",
        "1",
        "--to",
        "3",
        "--stable-output",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let expected = "\
target,status,certificate_path,millis
1:[1],brute-forced,-,0
2:[3],brute-forced,-,0
\"2:[2,1]\",brute-forced,-,0
\"2:[1,1,1]\",brute-forced,-,0
3:[6],certified,-,0
\"3:[5,1]\",certified,-,0
\"3:[4,1,1]\",certified,-,0
\"3:[3,1,1,1]\",certified,-,0
\"3:[2,1,1,1,1]\",certified,-,0
\"3:[1,1,1,1,1,1]\",certified,-,0
# summary family=staircase_hooks from=1 to=3 targets=10 certified=6 brute-forced=4 failed=0 elapsed_ms=0
";
    assert_eq!(stdout(&out), expected);
}
