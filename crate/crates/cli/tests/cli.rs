//! Black-box tests of the binary: output grammar, exit codes, cache
//! transparency, and report determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rainbow"))
}

fn run_in(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = bin();
    cmd.current_dir(dir).args(args).env_remove("RAINBOW_CACHE_DIR");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn result_lines(out: &Output) -> Vec<String> {
    stdout(out)
        .lines()
        .filter(|l| l.starts_with("RESULT "))
        .map(|l| l.to_string())
        .collect()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn chromatic_of_complete_graph() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(
        tmp.path(),
        &["gadget", "h", "--d", "2", "--n", "2", "--r", "1", "--output", "k4.hyp"],
        &[],
    );
    assert!(out.status.success());
    let out = run_in(tmp.path(), &["chromatic", "--input", "k4.hyp", "--cmax", "5"], &[]);
    assert!(out.status.success());
    assert_eq!(result_lines(&out), vec!["RESULT chromatic 4"]);
}

#[test]
fn covering_number_result_line() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(tmp.path(), &["cover", "exhaustive", "--q", "4", "--d", "2", "--c", "2"], &[]);
    assert!(out.status.success());
    assert_eq!(result_lines(&out), vec!["RESULT B 3"]);
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    // missing required flag: usage error
    let out = run_in(tmp.path(), &["chromatic", "--cmax", "3"], &[]);
    assert_eq!(out.status.code(), Some(2));
    // unreadable input: domain error
    let out = run_in(tmp.path(), &["chromatic", "--input", "nope.hyp", "--cmax", "3"], &[]);
    assert_eq!(out.status.code(), Some(1));
    // bad file contents: domain error with a line diagnostic
    write(tmp.path(), "bad.hyp", "h 3 1 3\ne 3 1 2\n");
    let out = run_in(tmp.path(), &["chromatic", "--input", "bad.hyp", "--cmax", "3"], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("non-increasing"));
}

#[test]
fn result_grammar_and_no_stray_prefix() {
    let tmp = tempfile::tempdir().unwrap();
    run_in(
        tmp.path(),
        &["gadget", "h", "--d", "3", "--n", "2", "--r", "1", "--output", "g.hyp"],
        &[],
    );
    let out = run_in(tmp.path(), &["chromatic", "--input", "g.hyp", "--cmax", "4", "--witness"], &[]);
    assert!(out.status.success());
    for line in stdout(&out).lines() {
        if line.starts_with("RESULT") {
            let fields: Vec<&str> = line.split_ascii_whitespace().collect();
            assert!(fields.len() >= 3, "RESULT line too short: {line}");
            assert_eq!(fields[0], "RESULT");
        }
    }
    // witness lines do not collide with the RESULT prefix
    assert!(stdout(&out).lines().any(|l| l.starts_with("s ")));
}

#[test]
fn cache_is_transparent_and_counts_entries() {
    let tmp = tempfile::tempdir().unwrap();
    let cache_dir = tmp.path().join("cache");
    let cache = [("RAINBOW_CACHE_DIR", cache_dir.to_str().unwrap())];
    run_in(
        tmp.path(),
        &["gadget", "h", "--d", "3", "--n", "2", "--r", "1", "--output", "g.hyp"],
        &[],
    );
    let plain = run_in(tmp.path(), &["chromatic", "--input", "g.hyp", "--cmax", "4"], &[]);
    let cold = run_in(tmp.path(), &["chromatic", "--input", "g.hyp", "--cmax", "4"], &cache);
    let warm = run_in(tmp.path(), &["chromatic", "--input", "g.hyp", "--cmax", "4"], &cache);
    assert_eq!(result_lines(&plain), result_lines(&cold));
    assert_eq!(result_lines(&cold), result_lines(&warm));
    let stats = run_in(tmp.path(), &["cache", "stats"], &cache);
    assert_eq!(result_lines(&stats), vec!["RESULT cache-entries 1"]);
    // corruption degrades to recomputation, never to a wrong answer
    std::fs::write(cache_dir.join("cache.jsonl"), "not json\n").unwrap();
    let after = run_in(tmp.path(), &["chromatic", "--input", "g.hyp", "--cmax", "4"], &cache);
    assert_eq!(result_lines(&plain), result_lines(&after));
}

#[test]
fn decode_reports_identical_for_equal_seeds() {
    let tmp = tempfile::tempdir().unwrap();
    let args: &[&str] = &[
        "lc", "gen", "--layers", "2", "--vars", "2", "--range", "2", "--density", "1.0",
        "--seed", "12", "--output", "toy.lc", "--assignment-out", "toy.asn",
    ];
    assert!(run_in(tmp.path(), args, &[]).status.success());
    let out = run_in(
        tmp.path(),
        &["reduce", "fig3", "--t", "1", "--d", "3", "--input", "toy.lc", "--output", "toy.mft"],
        &[],
    );
    assert!(out.status.success());
    let out = run_in(
        tmp.path(),
        &["reduce", "fig3", "--t", "1", "--d", "3", "--input", "toy.lc", "--output", "toy.hyp",
          "--emit", "hypergraph"],
        &[],
    );
    assert!(out.status.success());
    // find a proper 2-coloring and feed it back
    let out = run_in(tmp.path(), &["chromatic", "--input", "toy.hyp", "--cmax", "2", "--witness"], &[]);
    let witness: String = stdout(&out)
        .lines()
        .filter(|l| l.starts_with("s ") || l.starts_with("l "))
        .map(|l| format!("{l}\n"))
        .collect();
    write(tmp.path(), "toy.col", &witness);
    for name in ["r1.jsonl", "r2.jsonl"] {
        let out = run_in(
            tmp.path(),
            &["decode", "fig3", "--instance", "toy.mft", "--coloring", "toy.col",
              "--seed", "7", "--report", name],
            &[],
        );
        assert!(out.status.success());
        assert!(result_lines(&out).iter().any(|l| l.starts_with("RESULT seed 7")));
    }
    let r1 = std::fs::read(tmp.path().join("r1.jsonl")).unwrap();
    let r2 = std::fs::read(tmp.path().join("r2.jsonl")).unwrap();
    assert_eq!(r1, r2, "reports must be byte-identical under equal seeds");
}

#[test]
fn greedy_cover_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    // constant coloring of the 10 3-subsets of [5]
    let body: String = std::iter::repeat("1\n").take(10).collect();
    write(tmp.path(), "f.txt", &format!("f 5 3 2\n{body}"));
    let out = run_in(
        tmp.path(),
        &["cover", "greedy2", "--q", "5", "--d", "3", "--input", "f.txt"],
        &[],
    );
    assert!(out.status.success());
    assert_eq!(result_lines(&out), vec!["RESULT cover 2 1"]);
    let sets: Vec<String> =
        stdout(&out).lines().filter(|l| l.starts_with("set ")).map(String::from).collect();
    assert_eq!(sets.len(), 2);
}

#[test]
fn lift_counts() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "single.hyp", "h 2 1 2\ne 1 2\n");
    let out = run_in(
        tmp.path(),
        &["lift", "--input", "single.hyp", "--reps", "1", "--output", "lifted.hyp"],
        &[],
    );
    assert!(out.status.success());
    assert_eq!(result_lines(&out), vec!["RESULT lift 5 4 3"]);
}

#[test]
fn seed_is_printed_when_absent() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(
        tmp.path(),
        &["lc", "gen", "--layers", "2", "--vars", "1", "--range", "2", "--output", "x.lc"],
        &[],
    );
    assert!(out.status.success());
    assert!(result_lines(&out).iter().any(|l| l.starts_with("RESULT seed ")));
}

#[test]
fn records_format_adds_json_lines() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_in(
        tmp.path(),
        &["--format", "records", "cover", "exhaustive", "--q", "3", "--d", "2", "--c", "2"],
        &[],
    );
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "RESULT B 2"));
    assert!(text.lines().any(|l| l.starts_with('{')));
}
