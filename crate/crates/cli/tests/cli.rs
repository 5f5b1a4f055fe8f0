use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tokengraph")).args(args).output().expect("spawn tokengraph")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .take_while(|l| !l.is_empty())
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn theorem_small_sweep() {
    let o = run(&["theorem", "--n-max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = json_lines(&o);
    // 1 tree on 2 vertices, 1 on 3, 2 on 4; k in 1..n
    assert_eq!(recs.len(), 1 + 2 + 2 * 3);
    assert!(recs.iter().all(|r| r["status"] == "confirmed" && r["mode"] == "theorem"));
    let text = stdout(&o);
    assert!(text.contains("\n\nmode"), "summary table follows a blank line");
}

#[test]
fn json_flag_suppresses_summary() {
    let o = run(&["--json", "theorem", "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().all(|l| serde_json::from_str::<Value>(l).is_ok()));
}

#[test]
fn p4_record_values() {
    let o = run(&["--json", "theorem", "--n-max", "4"]);
    let p4 = json_lines(&o)
        .into_iter()
        .find(|r| r["n"] == 4 && r["k"] == 2 && r["delta"] == 1)
        .expect("P_4 with k = 2");
    assert_eq!((p4["kappa"].as_u64(), p4["lambda"].as_u64()), (Some(1), Some(1)));
}

#[test]
fn paths_summary_mentions_slack() {
    let o = run(&["paths", "--n-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("distance-2 pairs"));
    assert!(text.contains("Case1 δ-m"));
    assert!(text.contains("Case2 δ-m"));
}

#[test]
fn hfamily_m3() {
    let o = run(&["--json", "hfamily", "--m-min", "3", "--m-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json_lines(&o)[0];
    assert_eq!((r["kappa"].as_u64(), r["lambda"].as_u64(), r["delta"].as_u64()), (Some(2), Some(2), Some(2)));
}

#[test]
fn out_of_range_is_a_usage_error() {
    for args in [
        &["theorem", "--n-max", "1"][..],
        &["theorem", "--n-max", "11"],
        &["paths", "--n-max", "9"],
        &["hfamily", "--m-min", "5", "--m-max", "4"],
        &["generate", "--n-max", "10"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(run(&["theorem"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--jobs", "0", "theorem", "--n-max", "3"]).status.code(), Some(2));
    assert_eq!(run(&["conjecture", "--input", "x.g6", "--k", "2", "--all-k"]).status.code(), Some(2));
}

#[test]
fn missing_or_malformed_input_exit_2() {
    assert_eq!(run(&["conjecture", "--input", "/nonexistent/graphs.g6"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("tokengraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("bad.g6");
    std::fs::File::create(&file).unwrap().write_all(b"Dhc\n!!\n").unwrap();
    let o = run(&["conjecture", "--input", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":2:"), "error names the line");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn conjecture_on_c5_and_petersen() {
    let dir = std::env::temp_dir().join(format!("tokengraph-cli-c5-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("g.g6");
    // C_5, the Petersen graph, and K_3 (girth 3, skipped)
    std::fs::write(&file, "Dhc\nIheA@GUAo\nBw\n").unwrap();
    let o = run(&["--json", "conjecture", "--input", file.to_str().unwrap(), "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = json_lines(&o);
    assert_eq!(recs.len(), 3);
    assert_eq!(recs[0]["status"], "confirmed");
    assert_eq!(recs[1]["status"], "confirmed");
    assert_eq!(recs[2]["status"], "skipped");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn generate_matches_catalog() {
    let o = run(&["generate", "--n-max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let committed =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/girth5_connected_n1-8.g6")).unwrap();
    assert_eq!(stdout(&o), committed);
}
