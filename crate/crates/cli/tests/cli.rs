use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn satkg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satkg")).args(args).output().expect("spawn satkg")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Loads the ten-row fixture and returns the store path.
fn loaded(dir: &TempDir, mode: &str) -> PathBuf {
    let out = dir.path().join(format!("{mode}.ttl"));
    let o = satkg(&["load", "--mode", mode, "--in", path_str(&fixture("ucs_10.csv")), "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    out
}

#[test]
fn load_writes_store_and_report() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("s.ttl");
    let report = dir.path().join("r.jsonl");
    let o = satkg(&[
        "load",
        "--mode",
        "direct",
        "--in",
        path_str(&fixture("ucs_10.csv")),
        "--out",
        path_str(&out),
        "--report",
        path_str(&report),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("assertions 227"), "{}", stdout(&o));
    assert!(fs::read_to_string(&out).unwrap().contains("ind:AAUSat-4 a owl:NamedIndividual"));
    let lines: Vec<String> = fs::read_to_string(&report).unwrap().lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 1);
    assert!(lines[0].contains("\"kind\":\"summary\"") && lines[0].contains("\"rows_read\":10"), "{}", lines[0]);
}

#[test]
fn golden_reified_load() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("one.ttl");
    let o = satkg(&["load", "--in", path_str(&fixture("one_satellite.csv")), "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(fs::read(&out).unwrap(), fs::read(fixture("one_satellite.ttl")).unwrap());
}

#[test]
fn output_is_byte_identical_across_runs() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    for mode in ["direct", "reified"] {
        let first = loaded(&a, mode);
        let second = loaded(&b, mode);
        assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap(), "{mode}");
    }
}

#[test]
fn validate_classify_and_query() {
    let dir = TempDir::new().unwrap();
    let store = loaded(&dir, "reified");

    let o = satkg(&["validate", "--store", path_str(&store)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    assert!(text.contains("\"violations\":0"), "{text}");

    let classified = dir.path().join("c.ttl");
    let o = satkg(&["classify", "--store", path_str(&store), "--out", path_str(&classified)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let outcomes = stdout(&o);
    assert!(outcomes.contains("Molniya-3-50_Orbit\tElliptical_Orbit"), "{outcomes}");
    assert!(outcomes.contains("Skylab_Probe_Orbit\tNearly_Circular_Orbit"), "{outcomes}");
    assert!(outcomes.contains("Relay-HEO_Orbit\tElliptical_Orbit"), "{outcomes}");

    let o = satkg(&["query", "--store", path_str(&classified), "select ?o where { ?o instance_of Elliptical_Orbit }"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = stdout(&o);
    assert_eq!(csv.lines().next(), Some("o"));
    assert_eq!(csv.lines().count(), 1 + 3, "{csv}");
}

#[test]
fn negation_needs_closed_world() {
    let dir = TempDir::new().unwrap();
    let store = loaded(&dir, "direct");
    let q = "select ?s where { ?s instance_of Artificial_Satellite . not { ?s has_Contractor ?c } }";
    let o = satkg(&["query", "--store", path_str(&store), "--semantics", "open", q]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).to_lowercase().contains("negation"), "{}", stderr(&o));

    let o = satkg(&["query", "--store", path_str(&store), "--semantics", "closed", "--format", "json", q]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("AAUSat-4"), "{}", stdout(&o));
}

#[test]
fn malformed_csv_names_the_row() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("bad.csv");
    fs::write(&csv, "Name of Satellite,Comments\nA,fine\nB,\"never closed\n").unwrap();
    let o = satkg(&["load", "--in", path_str(&csv), "--out", path_str(&dir.path().join("o.ttl"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("row 3"), "{}", stderr(&o));
    assert!(!dir.path().join("o.ttl").exists());
}

#[test]
fn usage_and_help() {
    let o = satkg(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let o = satkg(&["load", "--mode", "sideways", "--in", "x", "--out", "y"]);
    assert_eq!(o.status.code(), Some(2));
    let o = satkg(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("load"));
}

#[test]
fn export_map_and_stats() {
    let dir = TempDir::new().unwrap();
    let store = loaded(&dir, "direct");

    let o = satkg(&["export", "--format", "dot", "--schema", "ssao"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("digraph"));

    let mapped = dir.path().join("m.ttl");
    let o = satkg(&["map", "--store", path_str(&store), "--out", path_str(&mapped)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("227 -> "), "{}", stdout(&o));

    let o = satkg(&["query", "--store", path_str(&mapped), "select ?s where { ?s instance_of Satellite }"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 10);

    let o = satkg(&["stats", "--store", path_str(&store)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("assertions 227"), "{}", stdout(&o));
}

fn run(args: &[String]) -> i32 {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["satkg".to_string()];
    argv.extend(args.iter().cloned());
    satkg_cli::run(argv, &mut out, &mut err)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unknown_flags_are_usage_errors(flag in "--zz[a-z]{1,8}", sub in prop::sample::select(&["load", "validate", "classify", "query", "export", "map", "stats"][..])) {
        prop_assert_eq!(run(&[sub.to_string(), flag]), 2);
    }

    #[test]
    fn missing_inputs_are_operational_errors(name in "[a-z]{1,10}", sub in prop::sample::select(&["validate", "classify", "stats"][..])) {
        let dir = TempDir::new().unwrap();
        let missing = dir.path().join(format!("{name}.ttl"));
        prop_assert_eq!(run(&[sub.to_string(), "--store".into(), missing.display().to_string()]), 1);
    }

    #[test]
    fn garbage_stores_are_operational_errors(body in "[a-z <>:;.\"]{0,40}") {
        let dir = TempDir::new().unwrap();
        let path = dir.path().join("g.ttl");
        fs::write(&path, format!("ind:x {body}")).unwrap();
        prop_assert_eq!(run(&["stats".into(), "--store".into(), path.display().to_string()]), 1);
    }
}
