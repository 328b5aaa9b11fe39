use std::path::Path;
use std::process::{Command, Output};

use binform::harness::CSV_HEADER;

fn binform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binform")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// CSV body with the timing column dropped.
fn without_timing(path: &Path) -> Vec<Vec<String>> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            r.iter().take(CSV_HEADER.len() - 1).map(String::from).collect()
        })
        .collect()
}

#[test]
fn compute_reports_example_values() {
    let o = binform(&["compute", "--family", "dp-inner", "--c", "1", "--d", "1", "--p", "19"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("14 mod 19"), "{text}");
    assert!(text.contains("-5"), "{text}");

    let o = binform(&["compute", "--family", "bracket", "--c", "0", "--d", "2", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("0"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["compute", "--family", "bracket", "--c", "1", "--d", "1"][..],
        &["compute", "--family", "bracket", "--c", "1", "--d", "1", "--n", "8"],
        &["compute", "--family", "bracket", "--c", "1", "--d", "1", "--n", "9", "--p", "5"],
        &["compute", "--family", "nonsense", "--p", "5"],
        &["verify", "no-such-suite"],
        &["verify", "cor-dp11", "--n-max", "9"],
        &["verify", "cor-dp11", "--p-min", "50", "--p-max", "10"],
        &["scan", "conjecture", "--part", "iv", "--out", "/dev/null"],
    ] {
        let o = binform(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn verify_writes_csv_and_meta() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dp.csv");
    let o = binform(&["verify", "cor-dp11", "--p-max", "60", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut reader = csv::Reader::from_path(&out).unwrap();
    assert_eq!(reader.headers().unwrap().iter().collect::<Vec<_>>(), CSV_HEADER);
    assert_eq!(reader.records().count(), 15);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("dp.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["grid"]["p"], serde_json::json!([5, 60]));
    assert_eq!(meta["tally"]["pass"], 15);
}

#[test]
fn same_seed_gives_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, seed: &str, threads: &str| {
        let out = dir.path().join(name);
        let o = binform(&["verify", "thm-rational", "--p-max", "13", "--trials", "20", "--seed", seed, "--threads", threads, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        without_timing(&out)
    };
    let a = run("a.csv", "9", "1");
    assert_eq!(a, run("b.csv", "9", "1"));
    assert_eq!(a, run("c.csv", "9", "3"));
    assert_ne!(a, run("d.csv", "10", "1"));
}

#[test]
fn json_reports_parse() {
    let o = binform(&["verify", "engines", "--trials", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let records: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!records.is_empty());
    for r in &records {
        for key in CSV_HEADER {
            assert!(r.get(key).is_some(), "missing {key} in {r}");
        }
        assert_eq!(r["verdict"], "Pass");
    }
}

#[test]
fn scan_records_exclusions_as_skips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ii.csv");
    let o = binform(&["scan", "conjecture", "--part", "ii", "--p-max", "60", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows = without_timing(&out);
    let p5 = rows.iter().find(|r| r[2] == "5").expect("p = 5 row");
    assert_eq!(p5[9], "Skip");
    assert!(rows.iter().filter(|r| r[2] != "5").all(|r| r[9] == "Pass"));
    let meta = std::fs::read_to_string(dir.path().join("ii.csv.meta.json")).unwrap();
    assert!(meta.contains("\"p_max\":60") || meta.contains("\"p_max\": 60"), "{meta}");
}
