use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn jumbled(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jumbled"))
        .args(args)
        .output()
        .expect("run jumbled")
}

fn stdout(args: &[&str]) -> String {
    let out = jumbled(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_0110_with_each_string_backend() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("s.txt");
    fs::write(&input, "0110\n").unwrap();
    let want = "size,min_ones,max_ones\n1,0,1\n2,1,2\n3,2,2\n4,2,2\n";
    for algo in ["naive", "blocked", "recursive"] {
        assert_eq!(stdout(&["build", "--input", path(&input), "--kind", "string", "--algo", algo]), want);
    }
    assert_eq!(stdout(&["build", "--input", path(&input), "--kind", "string", "--block", "3"]), want);
}

#[test]
fn build_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "").unwrap();
    let out = jumbled(&["build", "--input", path(&empty), "--kind", "string"]);
    assert!(!out.status.success());
    assert!(out.stdout.is_empty());

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "01\n1a0\n").unwrap();
    let out = jumbled(&["build", "--input", path(&bad), "--kind", "string"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column 2"), "{err}");

    let out = jumbled(&["build", "--input", path(&bad), "--kind", "string", "--algo", "micro-macro"]);
    assert!(!out.status.success());
}

#[test]
fn query_answers() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("p.csv");
    fs::write(&csv, "size,min_ones,max_ones\n1,0,1\n2,1,2\n3,2,2\n4,2,2\n").unwrap();
    let q = |i: &str, j: &str| stdout(&["query", "--profile", path(&csv), "-i", i, "-j", j]);
    assert_eq!(q("2", "1"), "yes\n");
    assert_eq!(q("2", "0"), "no\n");
    assert_eq!(q("99", "0"), "no\n");
    assert_eq!(q("0", "0"), "no\n");
    assert_eq!(q("3", "-1"), "no\n");

    fs::write(&csv, "size,min_ones,max_ones\n1,0\n").unwrap();
    assert!(!jumbled(&["query", "--profile", path(&csv), "-i", "1", "-j", "0"]).status.success());
}

#[test]
fn gen_is_deterministic_and_parses() {
    let a = stdout(&["gen", "--kind", "string", "--n", "8", "--seed", "1"]);
    let b = stdout(&["gen", "--kind", "string", "--n", "8", "--seed", "1"]);
    assert_eq!(a, b);
    assert_eq!(a.trim().len(), 8);

    let zeros = stdout(&["gen", "--kind", "string", "--n", "50", "--density", "0"]);
    assert!(zeros.trim().chars().all(|c| c == '0'));

    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("t.txt");
    stdout(&["gen", "--kind", "tree", "--n", "5", "--seed", "2", "--out", path(&tree)]);
    let text = fs::read_to_string(&tree).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "5");
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[1..].iter().filter(|l| l.starts_with("0 ")).count(), 1);
    let csv = stdout(&["build", "--input", path(&tree), "--kind", "tree"]);
    assert_eq!(csv.lines().count(), 6);

    assert!(!jumbled(&["gen", "--kind", "string", "--n", "0"]).status.success());
    assert!(!jumbled(&["gen", "--kind", "string", "--n", "4", "--density", "2"]).status.success());
}

#[test]
fn weighted_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.txt");
    fs::write(&w, "2 -1\n3\n").unwrap();
    let want = "size,max_sum\n1,3\n2,2\n3,4\n";
    for algo in ["naive", "recursive"] {
        assert_eq!(stdout(&["build", "--input", path(&w), "--kind", "weighted-string", "--algo", algo]), want);
    }
    let t = dir.path().join("wt.txt");
    fs::write(&t, "3\n0 2\n1 -1\n2 3\n").unwrap();
    for algo in ["simple-tree", "enumerate"] {
        assert_eq!(stdout(&["build", "--input", path(&t), "--kind", "weighted-tree", "--algo", algo]), want);
    }
}

#[test]
fn verify_self_and_mutant() {
    let out = stdout(&["verify", "--kind", "string", "--algo", "naive", "--oracle", "naive", "--seeds", "10"]);
    assert!(out.contains("0 mismatches"), "{out}");
    stdout(&["verify", "--kind", "tree", "--algo", "simple-tree", "--oracle", "enumerate", "--max-n", "14", "--seeds", "30"]);
    stdout(&["verify", "--kind", "weighted-string", "--algo", "recursive", "--oracle", "naive", "--max-n", "300", "--seeds", "30"]);

    let out = jumbled(&["verify", "--kind", "weighted-tree", "--algo", "broken", "--oracle", "enumerate", "--max-n", "10", "--seeds", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("expected") && err.contains("input"), "{err}");

    assert!(!jumbled(&["verify", "--kind", "tree", "--algo", "enumerate", "--oracle", "simple-tree", "--max-n", "40"]).status.success());
}

#[test]
fn bench_rows_per_size() {
    let out = stdout(&["bench", "--kinds", "string,tree", "--algos", "naive,blocked,micro-macro", "--sizes", "32,64"]);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "backend,kind,n,param,build_ms,peak_mem_bytes");
    assert_eq!(rows.len(), 1 + 2 * 2 + 2);
    assert!(rows.iter().any(|r| r.starts_with("blocked,string,64,8,")));
    assert!(rows.iter().any(|r| r.starts_with("micro-macro,tree,32,6,")));
}
