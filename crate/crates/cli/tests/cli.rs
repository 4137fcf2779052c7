//! The binary end to end: exit codes, stdin chains, and output shape.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn spinoptics(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spinoptics"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn the CLI");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    spinoptics(args, None).status.code().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["compose", "rot(1)"]), 0);
    assert_eq!(code(&["compose", "lens()"]), 2);
    assert_eq!(code(&["compose", "prism(1)"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["compose", "lens(0)"]), 3);
    assert_eq!(code(&["lens", "--z1", "-1", "--z2", "1", "--f", "1"]), 3);
    assert_eq!(code(&["contract", "--side", "below", "--eps", "2"]), 3);
    assert_eq!(code(&["stokes", "rot(1)", "--in", "1,2,0,0"]), 3);
}

#[test]
fn errors_go_to_stderr() {
    let out = spinoptics(&["compose", "lens()"], None);
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("position 6"), "{err}");
}

#[test]
fn chain_from_stdin_matches_argument() {
    let piped = spinoptics(&["lift", "-"], Some("rot(1) xboost(0.5)\n"));
    let direct = spinoptics(&["lift", "rot(1) xboost(0.5)"], None);
    assert!(piped.status.success());
    assert_eq!(piped.stdout, direct.stdout);
}

#[test]
fn json_output_parses() {
    let out = spinoptics(&["compose", "dist(1) lens(2) dist(1)"], None);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "compose");
    assert_eq!(v["results"]["class"]["tag"], "Elliptic");
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["command", "inputs", "results", "tolerances"]);
}

#[test]
fn degrees_flag_matches_radians() {
    let deg = spinoptics(&["--degrees", "compose", "rot(90)"], None);
    let rad = spinoptics(&["compose", "rot(1.5707963267948966)"], None);
    let mat = |o: &Output| {
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()["results"]["matrix"].clone()
    };
    assert_eq!(mat(&deg), mat(&rad));
}
