use std::path::Path;
use std::process::{Command, Output};

fn pktop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pktop"))
        .args(args)
        .output()
        .expect("pktop runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn matchup_prints_counts_and_both_conventions() {
    let o = pktop(&["matchup", "Ac2c", "3c5c"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("wins 1005468 ties 12168 losses 694668 total 1712304"), "{text}");
    assert!(text.contains("split-tie 21074/35673"), "{text}");
}

#[test]
fn matchup_json() {
    let o = pktop(&["--format", "json", "matchup", "3c5c", "2d2h"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["wins"], 832236);
    assert_eq!(v["total"], 1712304);
}

#[test]
fn overlapping_matchup_is_a_usage_error() {
    let o = pktop(&["matchup", "AcAd", "AcKd"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_subcommand_exits_1_and_help_exits_0() {
    assert_eq!(pktop(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(pktop(&["--help"]).status.code(), Some(0));
}

#[test]
fn eval_names_the_category() {
    let o = pktop(&["eval", "2h", "7h", "5h", "6h", "8h", "9h", "4d"]);
    assert_eq!(stdout(&o).trim(), "straight flush [9]");
}

#[test]
fn homology_of_a_three_cycle_file() {
    let dir = tempfile::tempdir().unwrap();
    let rps = dir.path().join("rps.txt");
    std::fs::write(&rps, "rock paper\npaper scissors\nscissors rock\n").unwrap();
    let o = pktop(&["homology", "--relation", rps.to_str().unwrap(), "--reduced"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0: 0\n1: Z^1\n");
}

#[test]
fn complex_file_round_trips_through_homology() {
    let dir = tempfile::tempdir().unwrap();
    let k = dir.path().join("k.txt");
    let o = pktop(&["complex", "--hands", "triangle", "--out", k.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(manifest(&k).exists());
    let o = pktop(&["homology", "--complex", k.to_str().unwrap(), "--reduced"]);
    assert_eq!(stdout(&o), "0: 0\n1: Z^1\n");
}

#[test]
fn penney_three() {
    let o = pktop(&["penney", "--n", "3"]);
    assert_eq!(stdout(&o), "0: 0\n1: Z^3\n2: 0\n");
    let o = pktop(&["penney", "--odds", "011", "110"]);
    assert!(stdout(&o).starts_with("P(011 before 110) = 3/4"));
    assert_eq!(pktop(&["penney", "--odds", "01", "110"]).status.code(), Some(1));
}

#[test]
fn sphere_relation_has_27_edges() {
    let o = pktop(&["relation", "--hands", "sphere"]);
    assert_eq!(stdout(&o).lines().count(), 27);
}

fn manifest(p: &Path) -> std::path::PathBuf {
    let mut s = p.as_os_str().to_owned();
    s.push(".manifest.json");
    s.into()
}

#[test]
fn bad_matrix_file_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("junk.pktp");
    std::fs::write(&m, b"not a matrix").unwrap();
    let o = pktop(&["closest", "--matrix", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let missing = dir.path().join("missing.pktp");
    let o = pktop(&["closest", "--matrix", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn modified_output_fails_its_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.pktp");
    std::fs::write(&m, b"PKTP").unwrap();
    let digest = holdem_topology_cli::manifest::FileDigest::of(&m).unwrap();
    let run = holdem_topology_cli::manifest::RunManifest {
        tool: "pktop".into(),
        version: "0".into(),
        subcommand: "matrix".into(),
        args: vec![],
        tie_convention: "split-tie".into(),
        jobs: 1,
        inputs: vec![],
        outputs: vec![digest],
        wall_clock_seconds: 0.0,
    };
    run.write_beside(&m).unwrap();
    std::fs::write(&m, b"PKTQ").unwrap();
    let o = pktop(&["closest", "--matrix", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("manifest"));
}

#[test]
fn verify_paper_fast_passes() {
    let o = pktop(&["verify-paper", "--fast"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(!text.contains("FAIL"));
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 10, "{text}");
}

#[test]
fn strict_win_fails_the_triangle() {
    let o = pktop(&["--tie-convention", "strict-win", "homology", "--hands", "triangle", "--reduced"]);
    assert_eq!(stdout(&o), "0: 0\n1: 0\n");
}
