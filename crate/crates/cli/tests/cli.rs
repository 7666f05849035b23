use cohsys_cli::record::ResultRecord;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohsys"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("json output")
}

#[test]
fn classify_exit_codes_follow_status() {
    let exact = run(&["classify", "6", "7", "4", "--format", "json"]);
    assert_eq!(exact.status.code(), Some(0));
    let rec = json(&exact);
    assert_eq!(rec["status"], "EXACT");
    assert_eq!(rec["lo"], "5/4");
    assert_eq!(rec["hi"], "2");

    let empty = run(&["classify", "4", "6", "2", "--format", "json"]);
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(json(&empty)["status"], "EMPTY_ALL");

    let partial = run(&["classify", "5", "7", "5"]);
    assert_eq!(partial.status.code(), Some(10));
    assert!(stdout(&partial).contains("PARTIAL"));

    let unknown = run(&["classify", "5", "6", "7"]);
    assert_eq!(unknown.status.code(), Some(11));

    assert_eq!(run(&["classify", "2", "3"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "0", "1", "1"]).status.code(), Some(2));
}

#[test]
fn csv_and_json_agree() {
    let csv = run(&["classify", "9", "15", "11", "--format", "csv"]);
    let text = stdout(&csv);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(cohsys_cli::record::CSV_HEADER));
    let parsed = ResultRecord::from_csv_row(lines.next().unwrap()).unwrap();

    let from_json: ResultRecord =
        serde_json::from_str(&stdout(&run(&["classify", "9", "15", "11", "--format", "json"])))
            .unwrap();
    assert_eq!(parsed, from_json);
    assert_eq!(parsed.lo.as_deref(), Some("6/7"));
    assert_eq!(parsed.hi.as_deref(), Some("inf"));
}

#[test]
fn sample_boundary_behaviour() {
    let hot = json(&run(&["sample", "2", "3", "3", "9/10", "1000", "1"]));
    assert!(hot["total_violations"].as_u64().unwrap() >= 1);
    let violation = hot["subtypes"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["violations"].as_array().unwrap())
        .next()
        .unwrap();
    assert_eq!(violation["range"]["kind"], "up-to");
    assert_eq!(violation["range"]["bound"], "1");
    assert_eq!(violation["n1"], 1);
    assert_eq!(violation["d1"], 2);
    assert_eq!(violation["k1"], 1);

    let cold = json(&run(&["sample", "2", "3", "3", "2", "1000", "1"]));
    assert_eq!(cold["total_violations"], 0);

    let exact = json(&run(&["sample", "2", "3", "3", "9/10", "50", "1", "--exact"]));
    assert_eq!(exact["exact_only"], true);
    assert!(exact["total_violations"].as_u64().unwrap() >= 1);

    assert_eq!(run(&["sample", "2", "3", "3", "0", "10", "1"]).status.code(), Some(2));
    assert_eq!(run(&["sample", "2", "3", "6", "1", "10", "1"]).status.code(), Some(2));
}

#[test]
fn single_point_sweep_matches_classify() {
    let sweep = run(&["sweep", "--n", "6", "--d", "7", "--k", "4", "--format", "json"]);
    let classify = run(&["classify", "6", "7", "4", "--format", "json"]);
    assert_eq!(stdout(&sweep), stdout(&classify));
}

#[test]
fn band_sweep_contains_known_empty_rows() {
    let out = run(&["sweep", "--n", "4..=6", "--a", "2..=3", "--k", "n..=an-1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<ResultRecord> = text
        .lines()
        .skip(1)
        .map(|l| ResultRecord::from_csv_row(l).unwrap())
        .collect();
    for (n, d, k) in [(4, 5, 7), (5, 7, 9), (6, 9, 11)] {
        let row = rows
            .iter()
            .find(|r| (r.n, r.d, r.k) == (n, d, k))
            .unwrap_or_else(|| panic!("({n},{d},{k}) missing from sweep"));
        assert_eq!(row.status, "EMPTY_ALL");
    }
    assert!(rows.windows(2).all(|w| (w[0].n, w[0].d, w[0].k) < (w[1].n, w[1].d, w[1].k)));
}

fn sweep_json(cache: Option<&Path>, jobs: &str) -> String {
    let mut args = vec![
        "sweep", "--n", "2..=4", "--a", "2", "--k", "0..=an+n", "--format", "json", "--jobs", jobs,
    ];
    let cache_arg;
    if let Some(path) = cache {
        cache_arg = path.to_str().unwrap().to_string();
        args.push("--cache");
        args.push(&cache_arg);
    }
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0));
    stdout(&out)
}

#[test]
fn cache_and_parallelism_leave_output_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("results.jsonl");

    let plain = sweep_json(None, "0");
    let cold = sweep_json(Some(&cache), "1");
    let warm = sweep_json(Some(&cache), "4");
    assert_eq!(plain, cold);
    assert_eq!(plain, warm);

    let stored = std::fs::read_to_string(&cache).unwrap();
    assert!(stored.starts_with(&format!(
        "{{\"engine_version\":\"{}\"}}",
        cohsys::engine_version()
    )));

    // A stale version header invalidates every stored record.
    std::fs::write(&cache, stored.replacen(&cohsys::engine_version(), "0.0.0+none", 1)).unwrap();
    let refreshed = sweep_json(Some(&cache), "0");
    assert_eq!(plain, refreshed);
}

#[test]
fn certify_exit_codes() {
    assert_eq!(run(&["certify", "2", "3", "3", "large-alpha"]).status.code(), Some(0));
    assert_eq!(run(&["certify", "5", "8", "9", "empty"]).status.code(), Some(1));
    assert_eq!(run(&["certify", "3", "6", "3", "large-alpha"]).status.code(), Some(2));

    let high = run(&["certify", "5", "7", "9", "empty"]);
    assert_eq!(high.status.code(), Some(0));
    let cert = json(&high);
    assert_eq!(cert["success"], true);
    assert_eq!(cert["ext"]["dim"], 2);
    assert_eq!(cert["ext"]["threshold"], 3);
}

#[test]
fn certify_sweep_marks_known_families() {
    let out = run(&["sweep", "--n", "5", "--a", "2", "--k", "n+1..=an", "--mode", "certify",
        "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let line = text.lines().find(|l| l.starts_with("5,7,9,")).unwrap();
    assert_eq!(line, "5,7,9,false,true,,false");
}

#[test]
fn conjecture_scan_flags_the_known_family() {
    let out = run(&["conjectures", "--n", "4..=5", "--a", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let flagged: Vec<&str> = text
        .lines()
        .skip(1)
        .filter(|l| l.contains("upward-closure-test-case"))
        .collect();
    assert!(flagged.iter().any(|l| l.starts_with("4,5,6,")));
    assert!(flagged.iter().any(|l| l.starts_with("5,6,8,")));
    assert_eq!(flagged.len(), 2);
}

#[test]
fn beta_and_extdim_print_plain_values() {
    let beta = run(&["beta", "6", "7", "4"]);
    assert_eq!(stdout(&beta).trim(), "1");

    let ext = json(&run(&["extdim", "1", "1", "2", "2", "4", "3"]));
    assert_eq!(ext["c21"], 2);
    assert_eq!(ext["ext1"], 2);
}
