use std::process::{Command, Output};

use serde_json::Value;
use vtc_core::exact::RatFunc;

fn vtc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vtc")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = vtc(args);
    assert!(out.status.success(), "vtc {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split('\t').map(str::to_string).collect()).collect()
}

#[test]
fn virasoro_weights_table() {
    let out = stdout(&["weights", "--category", "virasoro-t", "--bound", "2"]);
    let rows = rows(&out);
    assert_eq!(rows.len(), 4);
    assert!(rows.contains(&vec!["Lt(1,1)".into(), "0".into()]));
    assert!(rows.contains(&vec!["Lt(2,2)".into(), "(3*t^2-6*t+3)/(4*t)".into()]));
}

#[test]
fn supervir_weights_tables() {
    assert_eq!(stdout(&["weights", "--category", "supervir", "--bound", "1"]), "S(1,1)\t0\n");
    let out = stdout(&["weights", "--category", "supervir", "--bound", "3"]);
    let row = rows(&out).into_iter().find(|r| r[0] == "S(1,3)").expect("S(1,3) row");
    let expected = RatFunc::parse("(2-s)/(2*s)", "s").unwrap();
    assert_eq!(RatFunc::parse(&row[1], "s").unwrap(), expected);
    assert_eq!(row[1], "-(s-2)/(2*s)");
}

#[test]
fn center_scan_row() {
    let out = stdout(&["center", "--category", "supervir", "--bound", "8", "--witness-bound", "8"]);
    assert_eq!(out, "S(1,1)\n");
    let out = stdout(&["center", "--category", "osp", "--bound", "8"]);
    assert_eq!(out, "M(1)\n");
}

#[test]
fn locality_report() {
    let out = stdout(&["locality", "--algebra", "svir-ext", "--n", "2", "--m", "1"]);
    assert_eq!(out, "base\tLk(2,1)⊗Lt(1,1)\nverdict\tnon-local\nwitness\t2\nfamily\t-(r-1)/2\n");
    let json: Value = serde_json::from_str(&stdout(&[
        "locality", "--algebra", "osp-ext", "--n", "3", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(json["verdict"], "local");
    assert_eq!(json["witness"], Value::Null);
}

#[test]
fn dirlim_selftest_passes() {
    let out = stdout(&["dirlim-selftest", "--seed", "0", "--cases", "100"]);
    assert_eq!(out, "100/100 passed\n");
}

#[test]
fn fuse_and_monodromy() {
    let out = stdout(&["fuse", "--category", "supervir", "--n", "2", "--m", "2", "--y", "S(3,5)"]);
    assert_eq!(out, "S(2,4)\t1\nS(2,6)\t1\nS(4,4)\t1\nS(4,6)\t1\n");

    let out = stdout(&["monodromy", "--category", "virasoro-t", "--r", "2", "--s-index", "1", "--y", "Lt(1,2)"]);
    assert_eq!(out, "Lt(2,2)\t1\t-1/2\tnon-integer-constant\t1/2\n");

    let json: Value = serde_json::from_str(&stdout(&[
        "monodromy", "--category", "virasoro-t", "--x", "Lt(2,1)", "--y", "Lt(1,2)", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(json[0]["summand"], "Lt(2,2)");
    assert_eq!(json[0]["phase"], "1/2");
}

#[test]
fn induction_commands() {
    assert_eq!(
        stdout(&["min-weight", "--algebra", "svir-ext", "--n", "2", "--m", "2"]),
        "2\t(3*s^2-6*s+3)/(8*s)\n"
    );
    assert_eq!(stdout(&["min-weight", "--algebra", "osp-ext", "--n", "5"]), "2\t3/s\n");
    assert_eq!(
        stdout(&["frobenius", "--algebra", "svir-ext", "--n", "2", "--m", "2", "--y", "Lk(2,1)⊗Lt(2,1)"]),
        "1\n"
    );
    assert_eq!(
        stdout(&["frobenius", "--algebra", "svir-ext", "--n", "2", "--m", "2", "--y", "Lk(3,1)⊗Lt(1,1)"]),
        "0\n"
    );
    assert_eq!(
        stdout(&["induce", "--algebra", "osp-ext", "--n", "3", "--truncate", "2"]),
        "1\tV(1)⊗Lt(3,1)\n2\tV(2)⊗Lt(3,2)\n"
    );
}

#[test]
fn json_outputs_parse() {
    let json: Value = serde_json::from_str(&stdout(&[
        "weights", "--category", "osp", "--bound", "3", "--format", "json",
    ]))
    .unwrap();
    let labels: Vec<&str> = json.as_array().unwrap().iter().map(|r| r["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["M(1)", "M(3)"]);
    let json: Value = serde_json::from_str(&stdout(&[
        "dirlim-selftest", "--cases", "5", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(json["passed"], 5);
}

#[test]
fn category_from_file() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("vir-window.json");
    std::fs::write(
        &path,
        r#"{"name":"window","base_parameter":"t","families":[{"builtin":"virasoro-t","min_index":1,"max_index":2}]}"#,
    )
    .unwrap();
    let out = stdout(&["weights", "--category", path.to_str().unwrap(), "--bound", "5"]);
    assert_eq!(rows(&out).len(), 4);
}

#[test]
fn output_is_deterministic() {
    let args = ["center", "--category", "osp", "--bound", "7", "--witness-bound", "7", "--format", "json"];
    let a = vtc(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_vtc"))
        .args(args)
        .env("VTC_THREADS", "1")
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(vtc(&["weights", "--category", "nope", "--bound", "2"]).status.code(), Some(2));
    assert_eq!(vtc(&["weights", "--category", "supervir", "--bound", "0"]).status.code(), Some(2));
    assert_eq!(vtc(&["weights", "--category", "supervir"]).status.code(), Some(2));
    assert_eq!(vtc(&["fuse", "--category", "supervir", "--x", "S(1,2)", "--y", "S(1,1)"]).status.code(), Some(2));
    assert_eq!(vtc(&["frobnicate"]).status.code(), Some(2));
    let threads = Command::new(env!("CARGO_BIN_EXE_vtc"))
        .args(["center", "--category", "osp", "--bound", "3"])
        .env("VTC_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(threads.status.code(), Some(2));
    let out = vtc(&["min-weight", "--algebra", "svir-ext", "--n", "9", "--m", "9", "--truncate", "9"]);
    assert_eq!(out.status.code(), Some(1));
    let out = vtc(&["frobenius", "--algebra", "svir-ext", "--x", "Lk(1,1)⊗Lt(1,1)", "--y", "S(1,1)"]);
    assert_eq!(out.status.code(), Some(2));
}
