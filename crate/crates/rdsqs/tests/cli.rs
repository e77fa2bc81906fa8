use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rdsqs::format::{emit_design, DesignFile, DesignKind};
use rdsqs_core::construction::{rdtd_blocks, LocalTables, Sqs16Template};
use rdsqs_core::Block;

fn rdsqs(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdsqs"))
        .current_dir(dir)
        .args(args)
        .env_remove("DESIGN_DATA_DIR")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_then_verify_sqs22() {
    let t = tempfile::tempdir().unwrap();
    assert_eq!(code(&rdsqs(t.path(), &["gen", "sqs22"])), 0);
    let o = rdsqs(t.path(), &["verify", "--kind", "rdsqs", "sqs22.design", "sqs22.res"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 23);
    assert!(out.lines().all(|l| l.contains(": PASS")));
    let o = rdsqs(t.path(), &["verify", "--kind", "sqs", "sqs22.design"]);
    assert_eq!(stdout(&o), "steiner: PASS (385 blocks)\n");
}

#[test]
fn corrupted_design_fails_with_a_witness() {
    let t = tempfile::tempdir().unwrap();
    rdsqs(t.path(), &["gen", "sqs8"]);
    let text = fs::read_to_string(t.path().join("sqs8.design")).unwrap();
    fs::write(t.path().join("bad.design"), text.replacen("0 1 2 5", "0 1 2 6", 1)).unwrap();
    let o = rdsqs(t.path(), &["verify", "--kind", "sqs", "bad.design"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("steiner: FAIL"));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("uncovered") || err.contains("overcovered"), "{err}");
}

#[test]
fn parse_and_usage_errors_exit_2() {
    let t = tempfile::tempdir().unwrap();
    fs::write(t.path().join("junk.design"), "KIND SQS\nT 3\nK 4\nV 4\nLABELS 0 1 2 3\nBLOCKS 1\n0 1 2 3 4\n").unwrap();
    let o = rdsqs(t.path(), &["verify", "--kind", "sqs", "junk.design"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 7"));
    assert_eq!(code(&rdsqs(t.path(), &["verify", "--kind", "nope", "junk.design"])), 2);
    assert_eq!(code(&rdsqs(t.path(), &["verify", "--kind", "sqs", "missing.design"])), 2);
    assert_eq!(code(&rdsqs(t.path(), &["gen", "sqs10"])), 2);
}

#[test]
fn derive_writes_a_triple_system() {
    let t = tempfile::tempdir().unwrap();
    rdsqs(t.path(), &["gen", "sqs14"]);
    let o = rdsqs(t.path(), &["derive", "sqs14.design", "3", "--out", "sts13.design"]);
    assert_eq!(code(&o), 0);
    let o = rdsqs(t.path(), &["verify", "--kind", "sts", "sts13.design"]);
    assert_eq!(stdout(&o), "steiner: PASS (26 blocks)\n");
    rdsqs(t.path(), &["gen", "rdgdd24"]);
    let o = rdsqs(t.path(), &["derive", "rdgdd24.design", "inf_0", "--out", "d.design"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&rdsqs(t.path(), &["verify", "--kind", "gdd", "d.design"])), "gdd: PASS (63 blocks)\n");
}

#[test]
fn gdd_and_td_kinds() {
    let t = tempfile::tempdir().unwrap();
    rdsqs(t.path(), &["gen", "rdgdd42"]);
    let o = rdsqs(t.path(), &["verify", "--kind", "rdgdd", "rdgdd42.design", "rdgdd42.res"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 43);
    let tables = LocalTables::new(&Sqs16Template::new()).unwrap();
    let td = rdtd_blocks(&Block::from_slice(&[0, 1, 2, 3]).unwrap(), &tables).unwrap();
    fs::write(t.path().join("td.design"), emit_design(&DesignFile::grouped(DesignKind::Td, td))).unwrap();
    let o = rdsqs(t.path(), &["verify", "--kind", "td", "td.design"]);
    assert_eq!(stdout(&o), "td: PASS (64 blocks)\n");
    // a GDD that is not transversal
    assert_eq!(code(&rdsqs(t.path(), &["verify", "--kind", "td", "rdgdd42.design"])), 2);
}

#[test]
fn resolve_reports_per_point() {
    let t = tempfile::tempdir().unwrap();
    rdsqs(t.path(), &["gen", "sqs8"]);
    let o = rdsqs(t.path(), &["resolve", "sqs8.design"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("not-resolvable")).count(), 8);
    rdsqs(t.path(), &["gen", "sqs22"]);
    let o = rdsqs(t.path(), &["resolve", "sqs22.design", "inf_0", "--budget", "10000000"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("point inf_0: resolvable"));
    let o = rdsqs(t.path(), &["resolve", "sqs22.design", "0", "--budget", "3"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("exhausted"));
}

#[test]
fn star_construct_and_report() {
    let t = tempfile::tempdir().unwrap();
    rdsqs(t.path(), &["gen", "sqs28"]);
    let o = rdsqs(t.path(), &["verify", "--kind", "star", "sqs28.design", "sqs28.star"]);
    assert_eq!(stdout(&o), "star: PASS (819 blocks)\n");

    let o = rdsqs(t.path(), &["--jobs", "1", "construct", "sqs28.star", "one"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = rdsqs(t.path(), &["--jobs", "3", "construct", "sqs28.star", "three", "--design", "sqs28.design"]);
    assert_eq!(code(&o), 0);
    let manifest = fs::read_to_string(t.path().join("one/MANIFEST")).unwrap();
    assert!(manifest.contains("blocks 56980\n"));
    assert!(manifest.contains("resolved 112\n"));
    for f in ["MANIFEST", "design.design", "points/0_0.res", "points/6_3.res"] {
        let a = fs::read(t.path().join("one").join(f)).unwrap();
        let b = fs::read(t.path().join("three").join(f)).unwrap();
        assert!(a == b, "{f} differs between job counts");
    }
    assert_eq!(fs::read_dir(t.path().join("one/points")).unwrap().count(), 112);

    let o = rdsqs(t.path(), &["report", "one"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("112 points, 56980 blocks, 112 resolutions verified\n"));

    // break one resolution: swap two lines between classes
    let p = t.path().join("one/points/2_1.res");
    let text = fs::read_to_string(&p).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.swap(3, 3 + 38);
    fs::write(&p, lines.join("\n") + "\n").unwrap();
    let o = rdsqs(t.path(), &["report", "one"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("point 2_1: FAIL"));
}

#[test]
fn data_dir_can_be_overridden() {
    let t = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_rdsqs"))
        .current_dir(t.path())
        .args(["gen", "rdgdd24"])
        .env("DESIGN_DATA_DIR", t.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("rdgdd24.res"));
}
