//! Runs the built example binaries. `cargo test` builds them next to the main binary;
//! when a filtered invocation skipped them, the check is reported and skipped.

use std::path::PathBuf;
use std::process::Command;

fn example(name: &str) -> Option<PathBuf> {
    let bin = PathBuf::from(env!("CARGO_BIN_EXE_qhopf"));
    let path = bin.parent()?.join("examples").join(format!("{name}{}", std::env::consts::EXE_SUFFIX));
    path.exists().then_some(path)
}

fn run(name: &str, args: &[&str]) -> Option<(i32, String)> {
    let Some(path) = example(name) else {
        eprintln!("example {name} not built, skipping");
        return None;
    };
    let o = Command::new(path).args(args).output().unwrap();
    Some((o.status.code().unwrap_or(-1), String::from_utf8_lossy(&o.stdout).into_owned()))
}

#[test]
fn q_combinatorics() {
    if let Some((code, out)) = run("q_combinatorics", &[]) {
        assert_eq!(code, 0);
        assert!(out.contains("[4]_q  = 1 + q + q^2 + q^3"));
    }
}

#[test]
fn serre_coproduct() {
    if let Some((code, out)) = run("serre_coproduct", &[]) {
        assert_eq!(code, 0);
        assert!(out.contains("mon2: closed form agrees"));
    }
}

#[test]
fn shuffle_omega() {
    if let Some((code, out)) = run("shuffle_omega", &[]) {
        assert_eq!(code, 0);
        assert!(out.contains("G2: Omega([x1x2^4]) = 0"));
    }
}

#[test]
fn g2_coproduct() {
    if let Some((code, out)) = run("g2_coproduct", &[]) {
        assert_eq!(code, 0);
        assert!(out.contains("c5             pass"));
    }
}

#[test]
fn parse_render() {
    if let Some((code, out)) = run("parse_render", &[]) {
        assert_eq!(code, 0);
        assert!(out.contains("x1x2 - p12*x2x1"));
        assert!(out.contains("g2top requires g2 mode"));
    }
}

#[test]
fn identity_suite() {
    if let Some((code, _)) = run("identity_suite", &["mon1", "3"]) {
        assert_eq!(code, 0);
    }
    if let Some((code, out)) = run("identity_suite", &["mon1", "3", "--corrupt"]) {
        assert_eq!(code, 1);
        assert!(out.contains("witness: n = 3"));
    }
}
