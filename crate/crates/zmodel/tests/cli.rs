//! End-to-end checks of the command-line interface: the documented exit
//! codes (0 pass, 1 semantic failure, 2 usage/input error) and byte-level
//! determinism of repeated invocations.

use std::path::PathBuf;
use std::process::{Command, Output};

fn zmodel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zmodel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("zmodel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn pipeline_exit_codes() {
    let dir = tempdir();
    let sys = dir.join("sys.txt");
    let art = dir.join("art.json");
    let wit = dir.join("wit.json");
    std::fs::write(&sys, "x*y = z\n").unwrap();

    let out = zmodel(&[
        "compile",
        "--system",
        sys.to_str().unwrap(),
        "--out",
        art.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{:?}", out);

    let out = zmodel(&[
        "lift",
        "--artifact",
        art.to_str().unwrap(),
        "--system",
        sys.to_str().unwrap(),
        "--solution",
        "3,4,12",
        "--out",
        wit.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{:?}", out);

    let out = zmodel(&[
        "verify",
        "--artifact",
        art.to_str().unwrap(),
        "--witness",
        wit.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: pass"));

    // non-solution is rejected with exit 1
    let out = zmodel(&[
        "lift",
        "--artifact",
        art.to_str().unwrap(),
        "--system",
        sys.to_str().unwrap(),
        "--solution",
        "3,4,11",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // corrupted witness fails verification with exit 1
    let corrupted = dir.join("bad.json");
    let body = std::fs::read_to_string(&wit).unwrap();
    let bad = body.replace("\"u_x\": \"", "\"u_x\": \"1 + ");
    assert_ne!(body, bad, "corruption must change the witness");
    std::fs::write(&corrupted, bad).unwrap();
    let out = zmodel(&[
        "verify",
        "--artifact",
        art.to_str().unwrap(),
        "--witness",
        corrupted.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "{:?}", out);

    // missing file is a usage error: exit 2
    let out = zmodel(&[
        "verify",
        "--artifact",
        dir.join("nope.json").to_str().unwrap(),
        "--witness",
        wit.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn singular_curve_is_a_usage_error() {
    let out = zmodel(&["twist-info", "--curve", "0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn admissibility_exit_codes() {
    let out = zmodel(&["admissible", "--f", "x"]);
    assert_eq!(out.status.code(), Some(0));
    let out = zmodel(&["admissible", "--f", "x^2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("non-étale above branch point 0"), "{}", text);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempdir();
    let sys = dir.join("det.txt");
    std::fs::write(&sys, "x + y = z\n").unwrap();
    let run = || {
        let out = zmodel(&["compile", "--system", sys.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    assert_eq!(run(), run(), "byte-identical compile output");
    let gamma = || zmodel(&["gamma", "-n", "4"]).stdout;
    assert_eq!(gamma(), gamma(), "byte-identical gamma output");
}

#[test]
fn analysis_commands() {
    let out = zmodel(&["qform", "--form", "1,1,1,1", "--place", "real"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("anisotropic"));

    let out = zmodel(&["newton", "--poly", "3 + t^2", "-p", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(0, 1) (2, 0)"), "{}", text);
    assert!(text.contains("-1/2"));

    let out = zmodel(&["varkr", "--r", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("v0(s): 0"), "{}", text);
    assert!(text.contains("v_inf(s): -2"));

    let out = zmodel(&["encode", "-n", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"u\": \"1\""), "{}", text);
    assert!(text.contains("\"w\": \"t\""));
}
