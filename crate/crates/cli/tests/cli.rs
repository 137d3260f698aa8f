use std::path::PathBuf;
use std::process::{Command, Output};

use hyperpfaffian::poly::{rational, vandermonde};
use hyperpfaffian::Polynomial;

fn hpf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hpf"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn spec_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hpf-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const TORELLI_4: &str = r#"{"n":4,"k":2,"terms":[{"r":[0,3],"a":"1"},{"r":[1,2],"a":"-3"}]}"#;

#[test]
fn compute_methods_print_the_same_polynomial() {
    let path = spec_file("torelli4.json", TORELLI_4);
    let path = path.to_str().unwrap();
    let outputs: Vec<String> = ["definition", "exterior", "theorem"]
        .iter()
        .map(|m| {
            let out = hpf(&["compute", "--input", path, "--method", m]);
            assert_eq!(out.status.code(), Some(0), "{m}");
            stdout(&out)
        })
        .collect();
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    let parsed: Polynomial = outputs[0].trim().parse().unwrap();
    assert_eq!(parsed, vandermonde(4).scale(&rational(-3)));
}

#[test]
fn theorem_on_wrong_degree_is_an_input_error() {
    let path = spec_file(
        "low.json",
        r#"{"n":4,"k":2,"degree":1,"terms":[{"r":[0,1],"a":"2"}]}"#,
    );
    let path = path.to_str().unwrap();
    let out = hpf(&["compute", "--input", path, "--method", "theorem"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree"));
    let out = hpf(&["compute", "--input", path, "--method", "definition"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn malformed_input_exits_2_and_names_the_tuple() {
    let path = spec_file("bad.json", r#"{"n":4,"k":2,"terms":[{"r":[2,1],"a":"1"}]}"#);
    let out = hpf(&[
        "compute",
        "--input",
        path.to_str().unwrap(),
        "--method",
        "definition",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[2, 1]"));
    let out = hpf(&[
        "compute",
        "--input",
        "/nonexistent/spec.json",
        "--method",
        "exterior",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        hpf(&["coeffs", "--n", "6", "--k", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(hpf(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn identity_commands_report_their_constants() {
    let out = hpf(&["torelli", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "constant = -50, verified\n");
    let out = hpf(&["involution", "--n", "4", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("W^r sum = 0, φ²=id on 24 elements, verified\n"));
    let out = hpf(&["compose", "--k", "2", "--n", "4", "--p", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "constant = 3, verified\n");
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = [
        "verify", "--n", "6", "--k", "2", "--trials", "3", "--seed", "11",
    ];
    let (a, b) = (hpf(&args), hpf(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let points = [
        "verify", "--n", "12", "--k", "4", "--trials", "1", "--points", "2",
    ];
    let (a, b) = (hpf(&points), hpf(&points));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("2 points each"));
}

#[test]
fn size_guards_need_force() {
    let out = hpf(&["torelli", "--n", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("945") && err.contains("--force"), "{err}");
    assert_eq!(
        hpf(&["involution", "--n", "6", "--k", "2"]).status.code(),
        Some(0)
    );
    assert_eq!(
        hpf(&["involution", "--n", "8", "--k", "2"]).status.code(),
        Some(2)
    );
}
