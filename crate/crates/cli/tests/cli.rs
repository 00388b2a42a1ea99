use std::io::Write as _;
use std::process::{Command, Stdio};

use minorlab::{schema_name, Envelope, FormulaTable, LambdaRecord, MinorRecord};
use minorlab_core::constructions::split_graph;
use minorlab_core::extremal::{BoundCheck, HarnessSummary, SearchReport};
use minorlab_core::to_graph6;
use serde::de::DeserializeOwned;
use serde::Serialize;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("minorlab").chain(args.iter().copied());
    let code = minorlab::run(argv, stdin.as_bytes(), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

/// Parses one JSON line, checks its schema tag, and re-serializes it unchanged.
fn round_trip<T: Serialize + DeserializeOwned>(line: &str, kind: &str) -> T {
    let env: Envelope<T> = serde_json::from_str(line).unwrap();
    assert_eq!(env.schema, schema_name(kind));
    assert_eq!(serde_json::to_string(&env).unwrap(), line);
    env.body
}

const C5: &str = "Dhc";

#[test]
fn construct_split_graph() {
    let o = run(&["construct", "--family", "S", "--n", "10", "--r", "5"], "");
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.trim(), to_graph6(&split_graph(10, 2).unwrap()));
    let o = run(&["construct", "--family", "S(10,2)"], "");
    assert_eq!(o.stdout.trim(), to_graph6(&split_graph(10, 2).unwrap()));
}

#[test]
fn minor_on_five_cycle() {
    let o = run(&["minor", "--pattern", "Kr-", "--r", "4", "--witness"], &format!("{C5}\n"));
    assert_eq!(o.code, 0, "{}", o.stderr);
    let rec: MinorRecord = round_trip(o.stdout.trim(), "minor");
    assert!(!rec.has_minor);
    assert!(rec.witness.is_none());

    let o = run(&["minor", "--pattern", "K3", "--witness"], &format!("{C5}\n"));
    let rec: MinorRecord = round_trip(o.stdout.trim(), "minor");
    assert!(rec.has_minor);
    assert_eq!(rec.witness.unwrap().branch_sets.len(), 3);
}

#[test]
fn lambda_records() {
    let o = run(&["lambda", "--exact"], &format!("{C5}\nA_\n"));
    assert_eq!(o.code, 0, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    let rec: LambdaRecord = round_trip(lines[0], "lambda");
    assert!((rec.lambda - 2.0).abs() < 1e-9);
    assert!((rec.exact_lambda.unwrap() - 2.0).abs() < 1e-9);
    let rec: LambdaRecord = round_trip(lines[1], "lambda");
    assert!((rec.lambda - 1.0).abs() < 1e-9);

    let o = run(&["lambda", "--format", "csv"], &format!("{C5}\n"));
    let mut rows = csv::Reader::from_reader(o.stdout.as_bytes());
    assert_eq!(rows.headers().unwrap().iter().next(), Some("graph6"));
    assert_eq!(rows.records().count(), 1);
}

#[test]
fn formulas_example() {
    let o = run(&["formulas", "--r", "5", "--n-range", "9..12"], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let table: FormulaTable = round_trip(o.stdout.trim(), "formula-table");
    assert_eq!(table.rows.len(), 4);
    let row = table.rows.iter().find(|row| row.n == 10).unwrap();
    assert_eq!(row.f_case, "even");
    assert!((row.lambda_f_closed - 5.0).abs() < 1e-12);
    assert!(row.f_deviation < 1e-8);
    assert_eq!(row.lambda_f_printed, Some(4.5));
    assert!(table.passed);
}

#[test]
fn search_report_round_trips() {
    let o = run(&["search", "--pattern", "F1", "--n", "5", "--connected"], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let report: SearchReport = round_trip(o.stdout.trim(), "search-report");
    assert_eq!(report.corpus_size, 1 << 10);
    assert_eq!(report.n, Some(5));

    // the same corpus through stdin
    let corpus: String = minorlab_core::extremal::enumerate_labeled(5)
        .unwrap()
        .map(|g| to_graph6(&g) + "\n")
        .collect();
    let o = run(&["search", "--pattern", "F1", "--stdin", "--connected", "--jobs", "1"], &corpus);
    let piped: SearchReport = round_trip(o.stdout.trim(), "search-report");
    assert_eq!(piped, report);
}

#[test]
fn bounds_and_aliases() {
    let a = run(&["bounds", "--theorem", "mader", "--r", "4", "--n", "5"], "");
    let b = run(&["bounds", "--theorem", "1.1", "--r", "4", "--n", "5"], "");
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let check: BoundCheck = round_trip(a.stdout.trim(), "bound-check");
    assert!(check.passed);
    assert_eq!(check.max_edges, Some(7));

    let c = run(&["bounds", "--theorem", "1.2", "--r", "5", "--n", "6"], "");
    let d = run(&["bounds", "--theorem", "kr-minus", "--r", "5", "--n", "6"], "");
    assert_eq!(c.stdout, d.stdout);
    assert_eq!(c.code, d.code);
}

#[test]
fn harness_is_byte_identical() {
    let args = ["harness", "--name", "lemma31", "--r", "4", "--n", "8", "--trials", "60", "--seed", "9"];
    let first = run(&args, "");
    let second = run(&args, "");
    assert_eq!(first.code, 0, "{}", first.stderr);
    assert_eq!(first.stdout, second.stdout);
    let summary: HarnessSummary = round_trip(first.stdout.trim(), "harness-summary");
    assert_eq!(summary.config.trials, 60);
    assert!(summary.passed);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"], "").code, 0);
    assert_eq!(run(&["frobnicate"], "").code, 2);
    assert_eq!(run(&["construct", "--family", "S", "--r", "5"], "").code, 2);
    assert_eq!(run(&["minor", "--pattern", "Kq"], "").code, 2);
    assert_eq!(run(&["bounds", "--theorem", "1.3", "--r", "4"], "").code, 2);
    assert_eq!(run(&["bounds", "--theorem", "mader", "--r", "9", "--n", "5"], "").code, 2);
    assert_eq!(run(&["search", "--pattern", "F1", "--n", "9"], "").code, 2);
    assert_eq!(run(&["formulas", "--r", "5", "--n-range", "12..9"], "").code, 2);

    let bad = run(&["lambda"], "Dhc\n!!\n");
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("record 2"));

    let mixed = run(&["search", "--pattern", "F1", "--stdin"], "Dhc\nA_\n");
    assert_eq!(mixed.code, 2);
}

#[test]
fn failed_checks_exit_one() {
    let o = run(
        &["harness", "--name", "rewire", "--r", "4", "--n", "8", "--trials", "500", "--seed", "20240531", "--delta", "0.5"],
        "",
    );
    let summary: HarnessSummary = round_trip(o.stdout.trim(), "harness-summary");
    assert!(!summary.passed);
    assert_eq!(o.code, 1);

    let k5_minus = to_graph6(
        &minorlab_core::constructions::pattern_graph(&minorlab_core::constructions::PatternSpec::kr_minus(5).unwrap())
            .unwrap(),
    );
    let o = run(&["bounds", "--theorem", "mader", "--r", "5"], &format!("{k5_minus}\n"));
    let check: BoundCheck = round_trip(o.stdout.trim(), "bound-check");
    assert!(check.passed);
    assert_eq!(o.code, 0);
}

#[test]
fn binary_streams_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_minorlab"))
        .args(["lambda", "--format", "csv"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"Dhc\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph6,n,lambda"));
    assert!(text.contains("Dhc,5,"));
}
