use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn indpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn write_file(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const C6: &str = "n 6\nr 0\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n";

#[test]
fn synth_1_2_is_a_six_cycle() {
    let out = indpoly(&["synth", "1", "2"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.trim() == "n 6"), "{text}");
    let edges = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('n') && !l.starts_with('r'))
        .count();
    assert_eq!(edges, 6);
}

#[test]
fn synth_rejects_out_of_bound_targets() {
    let out = indpoly(&["synth", "1", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("2^1"), "{}", stderr(&out));
    assert_eq!(code(&indpoly(&["synth", "3", "-9"])), 2);
    assert_eq!(code(&indpoly(&["synth", "0", "0"])), 2);
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(code(&indpoly(&["frobnicate"])), 2);
    assert_eq!(code(&indpoly(&["sweep", "13"])), 2);
}

#[test]
fn eval_reports_value_polynomial_and_bracket() {
    let dir = TempDir::new().unwrap();
    let c6 = write_file(&dir, "c6.txt", C6);
    let out = indpoly(&["eval", &c6, "--poly"]);
    assert_eq!(code(&out), 0);
    let lines: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
    assert_eq!(lines, ["I(-1) = 2", "1 6 9 2", "bracket = <2, 1, -1>"]);

    let k1 = write_file(&dir, "k1.txt", "n 1\n");
    let out = indpoly(&["eval", &k1]);
    assert_eq!(stdout(&out).trim(), "I(-1) = 0");
}

#[test]
fn parse_errors_name_the_line() {
    let dir = TempDir::new().unwrap();
    let bad = write_file(&dir, "bad.txt", "n 3\n0 1\n1 1\n");
    let out = indpoly(&["eval", &bad]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    let out = indpoly(&["eval", dir.path().join("missing.txt").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn fvs_of_c6() {
    let dir = TempDir::new().unwrap();
    let c6 = write_file(&dir, "c6.txt", C6);
    let out = indpoly(&["fvs", &c6]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("phi = 1\n"), "{}", stdout(&out));

    let k4 = write_file(&dir, "k4.txt", "n 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let out = indpoly(&["fvs", &k4, "--cap", "1"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn synthesized_graph_round_trips_through_verify() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("g.txt");
    let graph = graph.to_str().unwrap();
    let out = indpoly(&["synth", "2", "3", "--out", graph]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("k = 2, q = 3"));

    let out = indpoly(&["eval", graph]);
    assert!(stdout(&out).starts_with("I(-1) = 3\n"), "{}", stdout(&out));

    let out = indpoly(&["verify", graph, "--k", "2", "--q", "3"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = indpoly(&["verify", graph, "--k", "2", "--q", "4"]);
    assert_eq!(code(&out), 1);
    let out = indpoly(&["verify", graph, "--k", "1", "--q", "3", "--level", "poly"]);
    assert_eq!(code(&out), 1);

    let out = indpoly(&["verify", graph, "--k", "2", "--q", "3", "--json"]);
    assert_eq!(code(&out), 0);
    assert!(
        stdout(&out).contains("\"version\": \"report-v1\""),
        "{}",
        stdout(&out)
    );
}

#[test]
fn negative_targets_and_certificates() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("g.txt");
    let cert = dir.path().join("g.json");
    let out = indpoly(&[
        "synth",
        "4",
        "-11",
        "--out",
        graph.to_str().unwrap(),
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(Path::new(&cert).exists());

    let out = indpoly(&["verify-cert", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = indpoly(&["verify", graph.to_str().unwrap(), "--k", "4", "--q", "-11"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));

    // Tampering with the target value must be caught.
    let text = fs::read_to_string(&cert).unwrap().replacen("-11", "-13", 1);
    let forged = write_file(&dir, "forged.json", &text);
    let out = indpoly(&["verify-cert", &forged]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));

    let junk = write_file(&dir, "junk.json", "{");
    assert_eq!(code(&indpoly(&["verify-cert", &junk])), 2);
}

#[test]
fn tables_reproduce() {
    let out = indpoly(&["table", "c6"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 7);
    let row = text.lines().find(|l| l.starts_with("l = 4")).unwrap();
    assert!(row.contains("<-1, -2, -1>") && row.ends_with("ok"), "{row}");

    let out = indpoly(&["table", "small"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("C3  I(-1) = -2"));
}

#[test]
fn sweeps_pass() {
    let out = indpoly(&["sweep", "1"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("5/5 passed"), "{}", stdout(&out));

    let out = indpoly(&["sweep", "3", "--level", "oracle", "--jobs", "2"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("17/17 passed"), "{}", stdout(&out));
}

#[test]
fn engstrom_sweep_runs() {
    let out = indpoly(&["engstrom", "--trials", "200", "--seed", "7", "--json"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(
        stdout(&out).contains("\"violations\": []"),
        "{}",
        stdout(&out)
    );
    assert_eq!(code(&indpoly(&["engstrom", "--n-max", "13"])), 2);
}
