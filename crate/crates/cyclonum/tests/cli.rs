use std::fs;
use std::process::{Command, Output};

use cyclonum::record::{OutputRecord, SweepRecord};

fn cyclonum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclonum"))
        .args(args)
        .env_remove("CYCLONUM_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn record(out: &Output) -> OutputRecord {
    serde_json::from_slice(&out.stdout).expect("valid output record")
}

const A5_ROWS: [&str; 16] = [
    "0 0 0 0 0 0 0 1 0 0 1 0 0 1 0 0",
    "0 0 0 0 0 0 1 0 1 0 0 0 0 0 0 1",
    "0 0 0 0 0 1 0 0 0 0 0 1 1 0 0 0",
    "0 0 0 0 1 0 0 0 0 1 0 0 0 0 1 0",
    "0 0 1 0 0 0 0 0 0 1 0 0 0 0 0 1",
    "1 0 0 0 0 0 0 0 0 0 0 1 0 0 1 0",
    "0 0 0 1 0 0 0 0 1 0 0 0 0 1 0 0",
    "0 1 0 0 0 0 0 0 0 0 1 0 1 0 0 0",
    "0 0 0 1 0 1 0 0 0 0 0 0 0 0 1 0",
    "0 0 1 0 0 0 0 1 0 0 0 0 1 0 0 0",
    "0 1 0 0 1 0 0 0 0 0 0 0 0 0 0 1",
    "1 0 0 0 0 0 1 0 0 0 0 0 0 1 0 0",
    "0 1 0 0 0 0 1 0 0 0 0 1 0 0 0 0",
    "0 0 0 1 1 0 0 0 0 0 1 0 0 0 0 0",
    "1 0 0 0 0 0 0 1 0 1 0 0 0 0 0 0",
    "0 0 1 0 0 1 0 0 1 0 0 0 0 0 0 0",
];

#[test]
fn compute_pinned_example() {
    let out = cyclonum(&[
        "compute",
        "-p",
        "5",
        "-n",
        "1",
        "-r",
        "6",
        "-a",
        "0",
        "-b",
        "0",
        "--norm-target",
        "2",
        "--method",
        "digraph",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rec = record(&out);
    assert_eq!(rec.schema_version, 1);
    assert_eq!(rec.context.omega_k[0], 2);
    assert_eq!(rec.results.len(), 1);
    assert_eq!(rec.results[0].value, Some(932));
}

#[test]
fn compute_closed_and_all() {
    let out = cyclonum(&[
        "compute", "-p", "2", "-n", "1", "-r", "5", "-a", "0", "-b", "0", "--method", "closed",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(record(&out).results[0].value, Some(30));

    let out = cyclonum(&[
        "compute", "-p", "3", "-n", "1", "-r", "3", "-a", "0", "-b", "1", "--method", "all",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rec = record(&out);
    let methods: Vec<&str> = rec.results.iter().map(|r| r.method.as_str()).collect();
    assert_eq!(
        methods,
        [
            "oracle-coset",
            "oracle-norm",
            "rank",
            "chars",
            "digraph",
            "ell",
            "closed"
        ]
    );
    assert!(rec.results.iter().all(|r| r.value == Some(7)));
    let chars = rec.results.iter().find(|r| r.method == "chars").unwrap();
    assert_eq!(chars.main_term.as_deref(), Some("28/4"));
    assert!(chars.error_term.is_some());
}

#[test]
fn json_round_trip() {
    let out = cyclonum(&[
        "compute", "-p", "7", "-r", "2", "-a", "1", "-b", "3", "--method", "all",
    ]);
    let text = stdout(&out);
    let rec: OutputRecord = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&rec).unwrap();
    assert_eq!(again.trim_end(), text.trim_end());
    assert_eq!(rec.request.a, Some(1));
    assert_eq!(rec.request.b, Some(3));
    assert_eq!(rec.request.method, "all");
}

#[test]
fn exit_codes() {
    let inapplicable = cyclonum(&[
        "compute", "-p", "5", "-r", "4", "-a", "0", "-b", "0", "--method", "ell",
    ]);
    assert_eq!(inapplicable.status.code(), Some(2));
    let cap = cyclonum(&[
        "compute", "-p", "3", "-r", "9", "-a", "0", "-b", "0", "--method", "rank",
    ]);
    assert_eq!(cap.status.code(), Some(3));
    let ell_cap = cyclonum(&["table", "-p", "17", "-r", "5", "--method", "ell"]);
    assert_eq!(ell_cap.status.code(), Some(3));
    let usage = cyclonum(&["compute", "-p", "4", "-r", "2", "-a", "0", "-b", "0"]);
    assert_eq!(usage.status.code(), Some(64));
    let cell = cyclonum(&["compute", "-p", "3", "-r", "2", "-a", "2", "-b", "0"]);
    assert_eq!(cell.status.code(), Some(64));
    let missing = cyclonum(&["compute", "-p", "3"]);
    assert_eq!(missing.status.code(), Some(64));
    assert_eq!(cyclonum(&["--help"]).status.code(), Some(0));
}

#[test]
fn enumeration_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_cyclonum"))
        .args([
            "compute", "-p", "3", "-r", "4", "-a", "0", "-b", "0", "--method", "oracle",
        ])
        .env("CYCLONUM_CAP", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_cyclonum"))
        .args([
            "compute", "-p", "3", "-r", "4", "-a", "0", "-b", "0", "--method", "oracle",
        ])
        .env("CYCLONUM_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn tables() {
    let out = cyclonum(&["table", "-p", "3", "-r", "2", "--format", "csv"]);
    assert_eq!(stdout(&out), "b=0,b=1\n1,2\n2,2\n");

    let out = cyclonum(&["table", "-p", "2", "-r", "6", "--method", "all"]);
    assert_eq!(stdout(&out), "b=0\n62\n");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q4.json");
    let out = cyclonum(&[
        "table",
        "-p",
        "2",
        "-n",
        "2",
        "-r",
        "2",
        "--format",
        "json",
        "--method",
        "all",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rec: OutputRecord = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let first = rec.results[0].values.clone().unwrap();
    assert_eq!(first.len(), 3);
    assert!(first.iter().flatten().all(|&v| v <= 2));
    assert_eq!(first.iter().flatten().sum::<u64>(), 14);
    assert!(rec
        .results
        .iter()
        .all(|r| r.values.as_ref() == Some(&first)));
}

#[test]
fn export_matrices() {
    let out = cyclonum(&[
        "export-matrix",
        "-p",
        "5",
        "-r",
        "6",
        "--norm-target",
        "2",
        "--which",
        "A",
        "--ordering",
        "natural",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with('#'));
    let body: Vec<&str> = lines.collect();
    assert_eq!(body, A5_ROWS);

    let out = cyclonum(&["export-matrix", "-p", "2", "-r", "3", "--which", "C"]);
    let text = stdout(&out);
    let body: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(body.len(), 7);
    assert!(body.iter().all(|l| *l == "1 1 1 1 1 1 1"));

    let out = cyclonum(&["export-matrix", "-p", "3", "-r", "2", "--which", "A"]);
    let text = stdout(&out);
    let rows: Vec<Vec<u32>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(' ').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.iter().sum::<u32>() == 1));

    let out = cyclonum(&[
        "export-matrix",
        "-p",
        "2",
        "-n",
        "2",
        "-r",
        "2",
        "--which",
        "A",
        "--ordering",
        "natural",
    ]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn verify_configs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("small.cfg");
    fs::write(&cfg, "triple = 2,1,3\ntriple = 3,1,2\ntriple = 5,1,6\npin = 5,1,6,2\nmethods = oracle,digraph,closed\n").unwrap();
    let report = dir.path().join("report.json");
    let out = cyclonum(&[
        "verify",
        cfg.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let rec: SweepRecord = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(rec.summary.contexts, 3);
    let binary = &rec.contexts[0];
    assert_eq!(binary.cells[0].verdict.as_ref().unwrap().relation, "above");
    let example = &rec.contexts[2];
    assert_eq!(
        example.cells[0]
            .values
            .iter()
            .map(|v| v.value)
            .collect::<Vec<_>>(),
        [Some(932); 3]
    );

    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "triple = 6,1,2\n").unwrap();
    assert_eq!(
        cyclonum(&["verify", bad.to_str().unwrap()]).status.code(),
        Some(64)
    );
    assert_eq!(
        cyclonum(&["verify", "/nonexistent/cfg"]).status.code(),
        Some(64)
    );

    let unpinnable = dir.path().join("unpinnable.cfg");
    fs::write(
        &unpinnable,
        "triple = 5,1,6\npin = 5,1,6,4\nmethods = oracle\n",
    )
    .unwrap();
    let out = cyclonum(&["verify", unpinnable.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("counterexample"));
}
