//! End-to-end tests of the binary: exit codes, parse errors, and output
//! determinism.

use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_repbar"))
}

fn write_monoid(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

const NAT: &str = r#"{"ambient_rank": 1, "generators": [[1]], "involution": [[1]]}"#;
const NAT2: &str = r#"{"ambient_rank": 2, "generators": [[1,0],[0,1]], "involution": null}"#;

#[test]
fn monoid_info_reports_flags() {
    let f = write_monoid(NAT2);
    let out = bin().args(["monoid-info"]).arg(f.path()).arg("--format").arg("json").output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ambient_rank"], 2);
    assert_eq!(v["sharp"], true);
    assert_eq!(v["saturated"], true);
}

#[test]
fn malformed_monoid_exits_2() {
    let f = write_monoid("{not json");
    let out = bin().args(["monoid-info"]).arg(f.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn dihedral_weight_two_is_a_circle() {
    let f = write_monoid(NAT);
    let out = bin()
        .args(["nerve-homology"])
        .arg(f.path())
        .args(["--kind", "dihedral", "--weight", "2", "--format", "json", "--max-degree", "3"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let betti: Vec<i64> =
        v["rows"].as_array().unwrap().iter().map(|r| r["betti"].as_i64().unwrap()).collect();
    assert_eq!(betti, vec![1, 1, 0, 0]);
}

#[test]
fn dihedral_weight_zero_is_a_point() {
    let f = write_monoid(NAT);
    let out = bin()
        .args(["nerve-homology"])
        .arg(f.path())
        .args(["--kind", "dihedral", "--weight", "0", "--format", "json", "--max-degree", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let betti: Vec<i64> =
        v["rows"].as_array().unwrap().iter().map(|r| r["betti"].as_i64().unwrap()).collect();
    assert_eq!(betti, vec![1, 0, 0, 0]);
}

#[test]
fn replete_without_budget_exits_2() {
    let f = write_monoid(NAT);
    let out = bin()
        .args(["nerve-homology"])
        .arg(f.path())
        .args(["--kind", "replete"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_single_id_passes_and_is_deterministic() {
    let run = || {
        bin()
            .args(["verify", "drep.6", "--format", "json", "--seed", "11"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_unknown_id_exits_2() {
    let out = bin().args(["verify", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
