use std::process::Command;

use clap::Parser;

use chevalley_cli::{run, Cli};

fn bin(args: &[&str]) -> (Option<i32>, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_chevalley")).args(args).output().unwrap();
    (out.status.code(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn report(args: &[&str]) -> serde_json::Value {
    let cli = Cli::try_parse_from(std::iter::once("chevalley").chain(args.iter().copied())).unwrap();
    serde_json::from_str(&run(&cli).unwrap().text).unwrap()
}

#[test]
fn roots_counts() {
    assert_eq!(report(&["roots", "--system", "A2", "--format", "json"])["roots"].as_array().unwrap().len(), 6);
    let g2 = report(&["roots", "--system", "G2", "--format", "json"]);
    let roots = g2["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 12);
    assert_eq!(roots.iter().filter(|r| r["long"] == true).count(), 6);
    assert_eq!(g2["cartan"], serde_json::json!([[2, -1], [-3, 2]]));
}

#[test]
fn unknown_system_exits_2() {
    let (code, out, err) = bin(&["roots", "--system", "Z9"]);
    assert_eq!(code, Some(2));
    assert!(out.is_empty());
    assert!(err.contains("Z9"));
}

#[test]
fn zero_trials_gives_empty_passing_report() {
    let r = report(&["verify", "--system", "A2", "--trials", "0"]);
    assert_eq!(r["commutator"]["checks"], 0);
    assert_eq!(r["torus"]["checks"], 0);
    assert_eq!(r["passed"], true);
}

#[test]
fn verify_header_records_seed() {
    let r = report(&["verify", "--system", "G2", "--mod", "7", "--trials", "2", "--seed", "99"]);
    assert_eq!(r["seed"], 99);
    assert_eq!(r["ring"], "Z/7");
    assert_eq!(r["constants_in_range"], true);
    assert_eq!(r["commutator"]["failures"], 0);
}

#[test]
fn case_mismatch_is_an_error() {
    let (code, _, err) = bin(&["witness", "--system", "A2", "--case", "g2-short"]);
    assert_eq!(code, Some(2));
    assert!(err.contains("G2-short"));
    let (code, _, _) = bin(&["witness", "--system", "B2", "--case", "long", "--root", "a2"]);
    assert_eq!(code, Some(2));
}

#[test]
fn witness_lengths_are_flat() {
    let r = report(&["witness", "--system", "B2", "--case", "b2-short", "--n", "0,7,5000", "--p", "3"]);
    let ws = r["witnesses"].as_array().unwrap();
    assert_eq!(ws.len(), 3);
    assert!(ws.iter().all(|w| w["verified"] == true));
    assert_eq!(r["constant_length"], true);
    assert_eq!(r["length_bound"], 9);
}

#[test]
fn rewrite_and_factor_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("w.txt");
    std::fs::write(&input, "x[a1](3) x[a2](5) x[a1](-3) x[a2](-2)\n").unwrap();
    let input = input.to_str().unwrap();

    let r = report(&["rewrite", "--system", "A2", "--level", "3", "--input", input]);
    assert_eq!(r["passed"], true);
    assert_eq!(r["tail"], "x[a2](2) x[a2](1)");

    let f = report(&["factor", "--system", "A2", "--mod", "12", "--input", input]);
    assert_eq!(f["verified"], true);

    let (code, _, _) = bin(&["factor", "--system", "B2", "--input", input]);
    assert_eq!(code, Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.csv");
    let (code, out, _) = bin(&["diameter", "--mod", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    assert!(out.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text, "m,group_order,generating_class,closure_size,diameter,seconds\n2,168,\"x[a1](1)\",21,3,\n");
}

#[test]
fn diameter_mem_cap_is_an_error() {
    let (code, _, err) = bin(&["diameter", "--mod", "3", "--mem-cap", "100"]);
    assert_eq!(code, Some(2));
    assert!(err.contains("100"));
}

#[test]
fn unsupported_format_rejected() {
    let cli = Cli::try_parse_from(["chevalley", "verify", "--system", "A2", "--format", "csv"]).unwrap();
    assert!(run(&cli).is_err());
    assert!(Cli::try_parse_from(["chevalley", "verify", "--system", "A2", "--mod", "5", "--ring", "r.json"]).is_err());
}
