//! End-to-end CLI behavior: exit codes, error messages, file handling.

use std::path::Path;
use std::process::{Command, Output};

fn gallai(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gallai"))
        .args(args)
        .current_dir(dir)
        .env_remove("GALLAI_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn count_prints_exact_value() {
    let dir = tempfile::tempdir().unwrap();
    let out = gallai(&["count", "--n", "3", "--k", "3"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "21\n");

    let out = gallai(&["count", "--n", "6", "--k", "3", "--format", "json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["count"], "210987");
    assert_eq!(value["k"], "3");
    assert_eq!(value["n"], 6);
}

#[test]
fn count_pow2_requires_exact_method() {
    let dir = tempfile::tempdir().unwrap();
    let out = gallai(&["count", "--n", "3", "--k", "pow2:10"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--method exact"));

    let out = gallai(
        &["count", "--n", "3", "--k", "pow2:10", "--method", "exact"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    // 3k^2 - 2k at k = 1024.
    assert_eq!(stdout(&out), format!("{}\n", 3u64 * 1024 * 1024 - 2048));
}

#[test]
fn budget_exceeded_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = gallai(&["count", "--n", "7", "--k", "4", "--budget", "1000"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("instance too large"));
    assert!(stderr(&out).contains("1000"));

    // The env var has the same effect.
    let out = Command::new(env!("CARGO_BIN_EXE_gallai"))
        .args(["count", "--n", "7", "--k", "4"])
        .env("GALLAI_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_coloring_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.txt"), "3 3\n0 1 1\n1 0 2\n").unwrap();
    let out = gallai(&["analyze", "--input", "bad.txt"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "stderr: {}", stderr(&out));

    let out = gallai(&["analyze", "--input", "missing.txt"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("missing.txt"));
}

#[test]
fn analyze_rejects_incomplete_coloring() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("partial.txt"), "4 2\n0 1 1\n0 2 1\n").unwrap();
    let out = gallai(&["analyze", "--input", "partial.txt"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("incomplete coloring"), "stderr: {}", stderr(&out));
}

#[test]
fn count_checkpoint_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("c53.ckpt");
    let args = [
        "count", "--n", "5", "--k", "3",
        "--checkpoint", ckpt.to_str().unwrap(),
        "--method", "dfs",
    ];
    let first = gallai(&args, dir.path());
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), "6129\n");
    let text = std::fs::read_to_string(&ckpt).unwrap();
    assert!(text.starts_with("gallai-checkpoint v1 n=5 k=3 split=4"));
    // A rerun consumes the finished units and reproduces the count.
    let second = gallai(&args, dir.path());
    assert_eq!(stdout(&second), "6129\n");
}

#[test]
fn analyze_rejects_non_gallai_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("rainbow3.txt"), "3 3\n0 1 1\n0 2 2\n1 2 3\n").unwrap();
    let out = gallai(&["analyze", "--input", "rainbow3.txt"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not a Gallai coloring: rainbow triangle {0,1,2}"));
}

#[test]
fn analyze_text_report_fields() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("mono.txt"), "4 2\n0 1 1\n0 2 1\n1 2 1\n0 3 1\n1 3 1\n2 3 1\n").unwrap();
    let out = gallai(&["analyze", "--input", "mono.txt"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("spanning_color: 1"));
    assert!(text.contains("class: TwoColored"));
    assert!(text.contains("in_F: true"));
    assert!(text.contains("in_F_prime: false"));
}

#[test]
fn extensions_count_and_stream_agree() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("mono2.txt"), "2 2\n0 1 1\n").unwrap();
    let count = gallai(&["extensions", "--input", "mono2.txt", "--k", "2"], dir.path());
    assert_eq!(stdout(&count), "4\n");
    let stream = gallai(
        &["extensions", "--input", "mono2.txt", "--k", "2", "--enumerate"],
        dir.path(),
    );
    assert_eq!(stdout(&stream), "1 1\n1 2\n2 1\n2 2\n");
}

#[test]
fn verify_failing_suite_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // The trend suite fails honestly against exact ground truth.
    let out = gallai(&["verify", "--suite", "trend", "--n-max", "6"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("suite trend failed"));
    assert!(stdout(&out).contains("fail"));

    let out = gallai(&["verify", "--suite", "no-such-suite"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown verification suite"));
}

#[test]
fn verify_passing_suite_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = gallai(
        &["verify", "--suite", "mono-ext", "--n-max", "6", "--k-max", "4", "--format", "csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("suite,cell,status,detail\n"));
    assert!(text.lines().skip(1).all(|l| l.contains(",pass,")));

    let out = gallai(
        &["verify", "--suite", "ext-ceiling", "--n-max", "4", "--k-max", "4"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("suite ext-ceiling: pass"));
}

#[test]
fn table_emits_csv_with_agreeing_methods() {
    let dir = tempfile::tempdir().unwrap();
    let out = gallai(
        &["table", "--n", "2..4", "--k", "2..3", "--method", "both"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,k,method,count,seconds"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3 * 2 * 2); // 3 n-values, 2 k-values, 2 methods
    assert!(rows.iter().any(|r| r.starts_with("3,3,dfs,21,")));
    assert!(rows.iter().any(|r| r.starts_with("3,3,exact-color,21,")));
}

#[test]
fn out_flag_writes_file_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("result.json");
    let out = gallai(
        &["count", "--n", "4", "--k", "3", "--format", "json", "--out", path.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["count"], "279");
    // No stray temp files left behind.
    let leftovers: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name() != "result.json")
        .collect();
    assert!(leftovers.is_empty(), "leftovers: {leftovers:?}");
}

#[test]
fn classify_all_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = gallai(&["classify-all", "--n", "5", "--k", "3"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("label,count\n"));
    assert!(text.contains("TwoColored,3069\n")); // C(3,2)(2^10-2)+3
    let total: u64 = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 6129); // c(5,3)
}

#[test]
fn bounds_evaluates_tags() {
    let dir = tempfile::tempdir().unwrap();
    let out = gallai(&["bounds", "--n", "3", "--k", "3", "--expr", "mono-ext"], dir.path());
    assert_eq!(stdout(&out), "15\n");
    let out = gallai(&["bounds", "--n", "5", "--k", "5", "--expr", "three-color-lower"], dir.path());
    assert_eq!(stdout(&out), "420\n");
    let out = gallai(&["bounds", "--n", "6", "--expr", "cn-three"], dir.path());
    assert_eq!(stdout(&out), format!("{}\n", 7 * 7 * 32768));
    // Radical values render symbolically; hypothesis flags are reported.
    let out = gallai(
        &["bounds", "--n", "10", "--k", "3", "--t", "2", "--expr", "no-big-f", "--format", "json"],
        dir.path(),
    );
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["hypothesis_met"], false);
    let out = gallai(&["bounds", "--n", "4", "--k", "0", "--expr", "mono-ext"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}
