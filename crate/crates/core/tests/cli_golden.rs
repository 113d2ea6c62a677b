mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use common::fixture_path;

fn r2ps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_r2ps"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn fx(name: &str) -> String {
    fixture_path(name).to_string_lossy().into_owned()
}

fn assert_golden(args: &[&str], name: &str, code: i32) {
    let out = r2ps(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        golden(name),
        "args {args:?}"
    );
}

#[test]
fn combine_left_and_right() {
    assert_golden(
        &[
            "combine",
            "--rule",
            "left",
            &fx("two_sources.ev"),
            "--sources",
            "M1,M2",
        ],
        "combine_left_two_sources.txt",
        0,
    );
    assert_golden(
        &[
            "combine",
            "--rule",
            "right",
            &fx("two_sources.ev"),
            "--sources",
            "M1,M2",
        ],
        "combine_right_two_sources.txt",
        0,
    );
    let text = golden("combine_left_two_sources.txt");
    assert!(text.contains("# conflict 0.240000\n"));
    assert!(text.contains("b : 0.355263\n"));
}

#[test]
fn chain_reports_cumulative_conflict() {
    assert_golden(
        &["chain", "--rule", "left", &fx("three_sources.ev")],
        "chain_left_three_sources.txt",
        0,
    );
    assert!(golden("chain_left_three_sources.txt").contains("# cumulative conflict 0.375000\n"));
}

#[test]
fn associativity_check_lists_mixed_differences_without_failing() {
    assert_golden(
        &["check", &fx("three_sources.ev"), "--properties", "associativity"],
        "check_assoc_three_sources.txt",
        0,
    );
    let text = golden("check_assoc_three_sources.txt");
    assert!(text
        .lines()
        .any(|l| l.starts_with("DIFF associativity(left,right)")));
    assert!(!text.contains("FAIL"));
}

#[test]
fn full_check_on_panel() {
    assert_golden(&["check", &fx("experts.ev")], "check_experts.txt", 0);
}

#[test]
fn decide_outputs() {
    assert_golden(&["decide", &fx("experts.ev")], "decide_experts.txt", 0);
    assert_golden(&["decide", &fx("tie.ev")], "decide_tie.txt", 0);
    assert!(golden("decide_tie.txt").contains("tie broken by canonical order"));
}

#[test]
fn decision_output_parses_back() {
    let text = golden("decide_experts.txt");
    let doc = r2ps::io::parse_document(text.as_bytes(), 1e-5).unwrap();
    assert_eq!(
        doc.names().collect::<Vec<_>>(),
        ["led-by-E1", "led-by-E2", "led-by-E3", "decision"]
    );
}

#[test]
fn enumerate_and_project() {
    assert_golden(
        &["enumerate", "--frame", "a b", "--max-len", "2"],
        "enumerate_ab.txt",
        0,
    );
    let out = r2ps(&["enumerate", "--frame", "a b c", "--count-only"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "39\n");
    assert_golden(
        &["project", &fx("two_sources.ev"), "--source", "M1"],
        "project_m1.txt",
        0,
    );
}

#[test]
fn exit_codes() {
    let conflict = r2ps(&[
        "combine",
        "--rule",
        "left",
        &fx("disjoint.ev"),
        "--sources",
        "P,Q",
    ]);
    assert_eq!(conflict.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&conflict.stderr).contains("total conflict"));

    let dir = std::env::temp_dir().join(format!("r2ps-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.ev");
    std::fs::write(&bad, "frame: a b\nsource x\na : 0.5\nend\n").unwrap();
    let invalid = r2ps(&["validate", bad.to_str().unwrap()]);
    assert_eq!(invalid.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&invalid.stderr).contains("line 4"));
    std::fs::remove_dir_all(&dir).ok();

    assert_eq!(
        r2ps(&["validate", "/nonexistent/file.ev"]).status.code(),
        Some(1)
    );
    assert_eq!(r2ps(&["bogus"]).status.code(), Some(4));
    assert_eq!(
        r2ps(&[
            "combine",
            "--rule",
            "left",
            &fx("two_sources.ev"),
            "--sources",
            "M1,Z"
        ])
        .status
        .code(),
        Some(4)
    );
    assert_eq!(r2ps(&["--help"]).status.code(), Some(0));
    assert_eq!(
        r2ps(&["validate", &fx("experts.ev")]).status.code(),
        Some(0)
    );
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["decide", "experts.ev"],
        vec!["check", "three_sources.ev"],
        vec!["chain", "--rule", "right", "three_sources.ev"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| {
                if a.ends_with(".ev") {
                    fx(a)
                } else {
                    a.to_string()
                }
            })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = r2ps(&args);
        let second = r2ps(&args);
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(first.status.code(), second.status.code());
    }
}
