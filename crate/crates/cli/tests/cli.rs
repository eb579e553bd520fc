use std::io::Write;
use std::process::{Command, Output, Stdio};

use binfind::groebner::IdealHandle;
use binfind::poly::{parse_poly, Ring};

fn run(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_binfind"))
        .args(args)
        .arg("-")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str], input: &str) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--json", "--no-timing"]);
    let o = run(&a, input);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn decide_finds_cyclotomic_witness() {
    let v = json(&["decide"], "ring: x\nideal: x^2+x+1\n");
    assert_eq!(v["status"], "true");
    assert_eq!(v["witness"], "x^3 - 1");
    assert_eq!(v["certificates"], serde_json::json!([true]));
}

#[test]
fn decide_rejects_product_of_differences() {
    let v = json(&["decide"], "ring: x,y,z,w\nideal: (x-y)*(z-w)\n");
    assert_eq!(v["status"], "false");
    assert!(v["witness"].is_null());
}

#[test]
fn tropspan_of_a_line() {
    let o = run(&["tropspan", "--no-timing"], "ring: x,y\nideal: x-2*y\n");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("status: rank 1"), "{text}");
    assert!(text.lines().any(|l| l.trim() == "1 1"), "{text}");
}

#[test]
fn monomial_and_oracle() {
    let v = json(&["monomial"], "ring: x,y\nideal: x*y, x+y\n");
    assert_eq!(v["status"], "true");
    let v = json(&["oracle", "--degree", "3"], "ring: x,y,z\nideal: (x-z)^2, 3*x-y-2*z\n");
    assert_eq!(v["status"], "true");
    assert!(v["generators"].as_array().unwrap().iter().any(|g| g == "x^3 - y*z^2"));
    assert!(v["certificates"].as_array().unwrap().iter().all(|c| c == true));
}

#[test]
fn bin_generators_round_trip() {
    let src = "ring: x,y,z\nideal: (x-z)^2, 3*x-y-2*z\n";
    let v = json(&["bin"], src);
    assert_eq!(v["status"], "LATTICE");
    assert_eq!(v["basis"], serde_json::json!([[3, -1, -2]]));
    let names = ["x", "y", "z"];
    let poly = Ring::polynomial(&names).unwrap();
    let laurent = Ring::laurent(&names).unwrap();
    let ideal = IdealHandle::new(
        3,
        ["(x-z)^2", "3*x-y-2*z"].iter().map(|g| parse_poly(g, &poly).unwrap()).collect(),
    );
    for g in v["generators"].as_array().unwrap() {
        let g = parse_poly(g.as_str().unwrap(), &laurent).unwrap();
        assert!(ideal.contains(&g.monomial_normalize()), "{g:?}");
    }
}

#[test]
fn reports_are_deterministic() {
    let src = "ring: x,y\nideal: x*y-2, y^2-3\n";
    for args in [["bin", "--no-timing"].as_slice(), &["bin", "--no-timing", "--json"]] {
        let a = run(args, src);
        let b = run(args, src);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn flags_override_file_options() {
    let src = "ring: x\nideal: x^2+x+1\noption relations = box-search\n";
    let v = json(&["bin"], src);
    assert_eq!(v["options"]["relations"], "box-search");
    let v = json(&["bin", "--relations", "eigen-lll"], src);
    assert_eq!(v["options"]["relations"], "eigen-lll");
}

#[test]
fn input_errors_exit_with_one() {
    let o = run(&["bin"], "ring: x\nideal: x^2+\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2, column"), "{}", stderr(&o));

    let o = run(&["bin"], "ring: x\nideal: x\noption bogus = 1\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bogus"));

    let o = run(&["oracle"], "ring: x\nideal: x\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--degree"));

    let o = run(&["frobnicate"], "ring: x\nideal: x\n");
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["bin", "--relations", "psychic"], "ring: x\nideal: x^2+1\n");
    assert_eq!(o.status.code(), Some(1));
}
