use std::path::{Path, PathBuf};
use std::process::Command;

use galbim_cli::fixture::{parse, FixtureError, Kind};
use galbim_cli::run::{run, Options};

fn shipped(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_galbim"))
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("galbim-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn taft_fixture_parses() {
    let f = parse(&std::fs::read_to_string(shipped("taft_2_2.fix")).unwrap()).unwrap();
    assert_eq!(f.count(Kind::Coaction), 1);
    assert_eq!(f.count(Kind::Hopf), 1);
    assert_eq!(f.commands().count(), 4);
}

#[test]
fn empty_file_has_nothing_to_run() {
    assert!(matches!(parse(""), Err(FixtureError::Resolution { .. })));
    assert!(matches!(parse("# only a comment\n"), Err(FixtureError::Resolution { .. })));
}

#[test]
fn duplicate_names_are_parse_errors() {
    let text = "field Q = rationals\nfield Q = prime 3\nrun mat-semisimple M\n";
    assert!(matches!(parse(text), Err(FixtureError::Parse { .. })));
}

#[test]
fn reports_are_deterministic() {
    let text = std::fs::read_to_string(shipped("sqrt2_galois.fix")).unwrap();
    let f = parse(&text).unwrap();
    let a = run(&f, "sqrt2", Options::default()).to_json();
    let b = run(&parse(&text).unwrap(), "sqrt2", Options::default()).to_json();
    assert_eq!(a, b);
}

#[test]
fn analyze_exit_codes() {
    let ok = bin().arg("analyze").arg(shipped("nonsem_p2.fix")).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(report["pass"], true);

    let wrong = scratch("wrong.fix", "field Q = rationals\nmatrix M = entries Q [[1 1] [0 1]]\nrun mat-semisimple M expect semisimple=true\n");
    assert_eq!(bin().arg("analyze").arg(&wrong).output().unwrap().status.code(), Some(1));

    let broken = scratch("broken.fix", "field Q = rationals\nrun center P\n");
    let out = bin().arg("analyze").arg(&broken).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resolution error"));

    assert_eq!(bin().arg("analyze").output().unwrap().status.code(), Some(2));
    assert_eq!(bin().arg("analyze").arg("/nonexistent.fix").output().unwrap().status.code(), Some(2));
}

#[test]
fn analyze_writes_json_and_honours_bounds() {
    let out = scratch("report.json", "");
    let st = bin()
        .args(["analyze", "--group-bound", "1", "--json"])
        .arg(&out)
        .arg(shipped("sqrt2_galois.fix"))
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["options"]["group_bound"], 1);
    assert_eq!(report["entries"][0]["error"]["kind"], "ClosureBound");
}

#[test]
fn verify_only_does_not_run() {
    let out = bin().args(["analyze", "--verify-only"]).arg(shipped("taft_2_2.fix")).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("4 commands"));
}

#[test]
fn shipped_fixtures_all_pass() {
    let out = bin().args(["fixtures", "run-all", "--jobs", "4"]).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 7, "{text}");
}

#[test]
fn run_all_reads_the_environment_directory() {
    let dir = std::env::temp_dir().join(format!("galbim-env-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("a.fix"), "field Q = rationals\nmatrix M = entries Q [[2]]\nrun mat-min-poly M expect degree=1\n").unwrap();
    std::fs::write(dir.join("b.fix"), "field Q = rationals\nmatrix M = entries Q [[2]]\nrun mat-min-poly M expect degree=2\n").unwrap();
    let out = bin().args(["fixtures", "run-all"]).env("GALBIM_FIXTURES", &dir).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(1), "{text}");
    assert!(text.contains("PASS  a.fix") && text.contains("FAIL  b.fix"), "{text}");
}
