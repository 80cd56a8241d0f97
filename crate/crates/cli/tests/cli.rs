use std::path::PathBuf;
use std::process::{Command, Output};

use thomforge::presentation::{Presentation, Source};

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    p.to_string_lossy().into_owned()
}

fn thomforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thomforge"))
        .args(args)
        .env_remove("THOMFORGE_TRUNCATE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_cp2() {
    let o = thomforge(&["validate", &fixture("cp2.cdga")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("d²=0 OK"));
}

#[test]
fn formality_obstruction_exits_2() {
    let o = thomforge(&["formality", &fixture("massey-fixture.cdga")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("(5,6)"));
    let o = thomforge(&["--format", "json", "formality", &fixture("massey-fixture.cdga")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "finding");
    assert_eq!(v["result"]["obstructions"][0], serde_json::json!([5, 6]));
}

#[test]
fn thom_shifts_betti_table() {
    let o = thomforge(&[
        "--format", "json", "thom", "--base", &fixture("cpN.cdga"), "--euler", "x", "--rank", "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let thom: Vec<u64> = serde_json::from_value(v["result"]["betti"].clone()).unwrap();
    let base: Vec<u64> = serde_json::from_value(v["result"]["base_betti"].clone()).unwrap();
    assert_eq!(&thom[..2], &[0, 0]);
    assert_eq!(&thom[2..], &base[..]);
    assert_eq!(v["schema"], "thomforge.report");
    assert_eq!(v["version"], 1);
}

#[test]
fn bad_input_exits_1_and_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cdga");
    std::fs::write(&path, "gen x : 2\ngen y : 4\nd y = x^2\ntruncate 8\n").unwrap();
    let o = thomforge(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.cdga:3"), "{err}");

    std::fs::write(&path, "gen x : 2\nd x = x +\ntruncate 8\n").unwrap();
    let o = thomforge(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("bad.cdga:2"));

    std::fs::write(&path, "gen x : 2\nfoo\n").unwrap();
    let o = thomforge(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    let o = thomforge(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn truncation_sources() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("open.cdga");
    std::fs::write(&path, "gen x : 2\ngen y : 5\nd y = x^3\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(thomforge(&["cohomology", p]).status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_thomforge"))
        .args(["cohomology", p])
        .env("THOMFORGE_TRUNCATE", "7")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cutoff 7"));
    let o = thomforge(&["--truncate", "9", "cohomology", p]);
    assert!(stdout(&o).contains("cutoff 9"));
}

#[test]
fn json_round_trip() {
    for name in ["cp2.cdga", "cp2-hodge.cdga", "cp2-weighted.cdga", "cp2-formal.cdga", "massey-k4.cdga"] {
        let src = Source::read(fixture(name).as_ref()).unwrap();
        let json = serde_json::to_string(&src.presentation.to_json()).unwrap();
        let back = Source::parse("json", &json).unwrap();
        assert_eq!(back.presentation, src.presentation, "{name}");
        let text = Source::parse("text", &src.presentation.to_text()).unwrap();
        assert_eq!(text.presentation, src.presentation, "{name}");

        let o = thomforge(&["--format", "json", "validate", &fixture(name)]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        let emitted = serde_json::to_string(&v["result"]["presentation"]).unwrap();
        let again = Source::parse("emitted", &emitted).unwrap();
        assert_eq!(again.presentation, src.presentation, "{name}");
        let canonical: Presentation =
            Source::parse("canonical", &serde_json::to_string(&v["result"]["canonical"]).unwrap())
                .unwrap()
                .presentation;
        assert_eq!(canonical.generators.len(), src.presentation.generators.len());
    }
}

#[test]
fn json_files_are_accepted() {
    let o = thomforge(&["cohomology", &fixture("cp2.json")]);
    assert_eq!(o.status.code(), Some(0));
    let t = thomforge(&["cohomology", &fixture("cp2.cdga")]);
    let strip = |s: String| s.lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(stdout(&o)), strip(stdout(&t)));
}

#[test]
fn hodge_purity_gate() {
    let o = thomforge(&[
        "hodge-thom", "--input", &fixture("mixed-hodge.cdga"), "--euler", "x + z", "--chern-rank", "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = thomforge(&[
        "--format", "json", "hodge-thom", "--input", &fixture("mixed-hodge.cdga"), "--euler", "x", "--chern-rank", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["agrees_with_thom_weights"], true);
}

#[test]
fn quillen_cp2() {
    let o = thomforge(&["quillen", "--cohomology", &fixture("cp2-formal.cdga"), "--euler", "x", "--rank", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("phi(v3) = v1"));
    assert!(s.contains("s2v3 (degree 5): d = 0"));
}

#[test]
fn massey_and_minimal_model() {
    let o = thomforge(&["massey", &fixture("massey-fixture.cdga"), "x", "x", "y"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("contains zero: no"));
    let o = thomforge(&["massey", &fixture("massey-fixture.cdga"), "x", "y", "y"]);
    assert_eq!(o.status.code(), Some(2));
    let o = thomforge(&["minimal-model", &fixture("cp2-formal.cdga"), "--up-to", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("generators per degree: [0, 0, 1, 0, 0, 1, 0]"));
}
