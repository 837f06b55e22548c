use std::process::{Command, Output};

use serde_json::Value;

fn heckoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heckoid")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = heckoid(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "heckoid/1");
    v
}

#[test]
fn golden_outputs() {
    let v = json(&["sseq", "10/37"]);
    let s: Vec<u64> = v["s_sequence"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(s, [4, 4, 4, 3, 4, 4, 3, 4, 4, 3, 4, 4, 4, 3, 4, 4, 3, 4, 4, 3]);
    let v = json(&["intervals", "3/10", "2"]);
    assert_eq!((v["r1"].as_str(), v["r2"].as_str()), (Some("5/17"), Some("7/23")));
    let v = json(&["conjugate", "1/2", "2", "1/4", "3/4"]);
    assert_eq!(v["conjugate"], false);
    assert_eq!(v["certificate"]["outcome"], "certified");
    let v = json(&["decomp", "[4,2,1,2]"]);
    assert_eq!(v["s1"], serde_json::json!([5, 4, 5]));
    assert_eq!(json(&["word", "1/2"])["word"], "abAB");
}

#[test]
fn every_command_dispatches() {
    let cases: &[&[&str]] = &[
        &["word", "3/7"],
        &["sseq", "3/7"],
        &["decomp", "3/7"],
        &["tseq", "3/7"],
        &["intervals", "1/3", "2"],
        &["normalize", "1/3", "2", "5/13"],
        &["trivial", "1/2", "2", "7/16"],
        &["conjugate", "1/3", "2", "1/5", "1/5"],
        &["peripheral", "1/3", "2", "1/5"],
        &["torsion", "1/3", "2", "1/3"],
        &["smallcancel", "2/5", "2"],
        &["pieces", "1/2", "2", "abA"],
        &["rep", "1/2", "2", "0", "1/3"],
        &["verify", "relation", "--max-denom", "12"],
    ];
    for args in cases {
        json(args);
    }
    assert_eq!(json(&["trivial", "1/2", "2", "7/16"])["trivial"], true);
    assert_eq!(json(&["torsion", "1/3", "2", "1/3"])["holds"], true);
    assert_eq!(json(&["pieces", "1/2", "2", "abA"])["query"]["min_piece_count"], 3);
}

#[test]
fn verify_reports_counts() {
    let v = json(&["verify", "outside-orbit", "--max-denom", "20", "--n", "3"]);
    assert_eq!(v["failed"], 0);
    assert!(v["passed"].as_u64().unwrap() > 0);
    let v = json(&["verify", "orbit", "--max-denom", "8", "--seed", "5"]);
    assert_eq!(v["failed"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(heckoid(&["word", "3/2"]).status.code(), Some(1));
    assert_eq!(heckoid(&["intervals", "2", "2"]).status.code(), Some(1));
    assert_eq!(heckoid(&["word", "x/y"]).status.code(), Some(2));
    assert_eq!(heckoid(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(heckoid(&["intervals", "1/3"]).status.code(), Some(2));
    assert_eq!(heckoid(&["verify", "no-such-lemma"]).status.code(), Some(2));
    let err = heckoid(&["word", "3/2"]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("outside"));
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["conjugate", "1/2", "3", "2/7", "5/7"][..],
        &["rep", "3/10", "2", "1/4"],
        &["verify", "connection", "--max-denom", "15"],
    ] {
        assert_eq!(heckoid(args).stdout, heckoid(args).stdout);
    }
}

#[test]
fn tables() {
    let out = heckoid(&["intervals", "3/10", "2", "--table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("r1") && l.ends_with("5/17")));
}
