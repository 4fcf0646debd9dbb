use std::process::{Command, Output};

fn gradedlc(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gradedlc"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("GRADEDLC_THREADS", t),
        None => cmd.env_remove("GRADEDLC_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const MIXED: [&str; 6] = ["--n", "3", "--ideal", "(x1*x2,x1*x3)", "--i", "2"];

fn with(cmd: &str, rest: &[&str]) -> Vec<String> {
    std::iter::once(cmd).chain(rest.iter().copied()).map(String::from).collect()
}

fn run(args: &[String]) -> Output {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    gradedlc(&refs, None)
}

#[test]
fn lc_prints_pattern_table() {
    let out = run(&with("lc", &MIXED));
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("{2,3}: 1\n{1,2,3}: 1\n"));
}

#[test]
fn invariants_report_dim_injdim_ass() {
    let out = run(&with("invariants", &MIXED));
    let text = stdout(&out);
    assert!(text.contains("dim: 1\ninjdim: 0\nass: {(x2,x3)}\n"), "{text}");
    assert!(text.contains("monomial primes only"));
}

#[test]
fn verify_paper_mixed_passes() {
    let out = gradedlc(&["verify-paper", "mixed"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("mixed: PASS\n"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(gradedlc(&["lc", "--n", "3"], None).status.code(), Some(1));
    assert_eq!(gradedlc(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(gradedlc(&["verify-paper", "nonexistent"], None).status.code(), Some(1));
    let bad = gradedlc(&["lc", "--n", "3", "--ideal", "(x1*x1)", "--i", "1"], None);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("squarefree only"));
    let out_of_range = gradedlc(&["cd", "--n", "2", "--ideal", "(x3)"], None);
    assert_eq!(out_of_range.status.code(), Some(1));
    assert_eq!(gradedlc(&["cd", "--n", "2", "--ideal", "(x1)", "--char", "4"], None).status.code(), Some(1));
}

#[test]
fn bad_thread_count_is_usage_error() {
    assert_eq!(gradedlc(&["cd", "--n", "2", "--ideal", "(x1)"], Some("many")).status.code(), Some(1));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(gradedlc(&["--help"], None).status.code(), Some(0));
    assert_eq!(gradedlc(&["--version"], None).status.code(), Some(0));
}

#[test]
fn oracle_dump_format() {
    let out = gradedlc(&["oracle-check", "--n", "1", "--ideal", "(x1)", "--i", "1", "--box", "-2..1", "--dump"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("-2  1\n-1  1\n0  0\n1  0\n"));
}

#[test]
fn json_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["invariants", "--n", "5", "--ideal", "V(x1,x2) & V(x3,x4) & V(x5,x1)", "--i", "3", "--json"];
    let one = gradedlc(&args, Some("1"));
    let four = gradedlc(&args, Some("4"));
    let auto = gradedlc(&args, Some("0"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, auto.stdout);

    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["ring", "ideal", "command", "result", "citations", "timing"]);
    assert_eq!(v["timing"], serde_json::Value::Null);
    assert_eq!(v["result"]["dim"], 1);
    assert_eq!(v["result"]["injdim"], 1);
}

#[test]
fn timing_is_opt_in() {
    let out = gradedlc(&["cd", "--n", "3", "--ideal", "(x1*x2,x1*x3)", "--json", "--timing"], None);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["timing"]["elapsed_ms"].is_number());
}

#[test]
fn infinite_bass_numbers_are_strings_in_json() {
    // H^1_(x1)(R) in two variables has an unbounded Koszul class at (x1,x2)
    let out = gradedlc(&["bass", "--n", "2", "--ideal", "(x1)", "--i", "1", "--json"], None);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = v["result"]["entries"].as_array().unwrap();
    assert!(entries.iter().all(|e| e["value"].is_u64() || e["value"] == "infinite"));
}

#[test]
fn mv_check_reports_exactness() {
    let out = gradedlc(&["mv-check", "--n", "3", "--ideal", "(x1)", "--ideal2", "(x2,x3)", "--json"], None);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["exact"], true);
    assert_eq!(v["result"]["engine_agrees"], true);
}

#[test]
fn cofinite_verdict_with_witness() {
    let out = run(&with("cofinite", &MIXED));
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0));
    assert!(text.contains("witness class (deep,-1,-1)"));
    assert!(text.ends_with("verdict: not-cofinite\n"));
}
