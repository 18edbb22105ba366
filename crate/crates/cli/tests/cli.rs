use std::collections::BTreeSet;
use std::process::{Command, Output};

use z2z4::verify::{AnalysisReport, SearchRow, SuiteReport};
use z2z4::QuatPoly;

fn z2z4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_z2z4")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = z2z4(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const INEQUALITY: [&str; 14] =
    ["--alpha", "1", "--beta", "3", "--b", "x+1", "--ell", "1", "--f", "1", "--h", "x-1", "--g", "x^2+x+1"];

#[test]
fn factor_x7_over_z4() {
    let v = json(&["factor", "--n", "7", "--ring", "z4"]);
    let got: BTreeSet<String> = v["factors"].as_array().unwrap().iter().map(|f| f["poly"].to_string()).collect();
    assert_eq!(got.len(), 3);
    let cosets: BTreeSet<Vec<u64>> = v["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["coset"].as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).collect())
        .collect();
    assert_eq!(cosets, BTreeSet::from([vec![0], vec![1, 2, 4], vec![3, 5, 6]]));
}

#[test]
fn factor_small_and_composite_lengths() {
    let v = json(&["factor", "--n", "1", "--ring", "gf2"]);
    assert_eq!(v["factors"][0]["poly"], "1+x");
    let v = json(&["factor", "--n", "15"]);
    let factors: Vec<QuatPoly> =
        v["factors"].as_array().unwrap().iter().map(|f| f["poly"].as_str().unwrap().parse().unwrap()).collect();
    assert_eq!(factors.len(), 5);
    assert_eq!(QuatPoly::product(factors.iter()), QuatPoly::x_n_minus_one(15));
}

#[test]
fn factor_rejects_even_length() {
    assert_eq!(z2z4(&["factor", "--n", "6"]).status.code(), Some(2));
}

#[test]
fn analyze_inequality_code() {
    let mut args = vec!["analyze"];
    args.extend(INEQUALITY);
    args.push("--verify");
    let report: AnalysisReport = serde_json::from_value(json(&args)).unwrap();
    assert_eq!(report.kernel.dim, 3);
    assert_eq!(report.rank.rank, 6);
    assert!(report.passed());

    let text = z2z4(&args);
    assert!(text.status.success());
    assert!(stdout(&text).contains("(1,3;1,2;1)"));
}

#[test]
fn analyze_accepts_spec_json() {
    let spec = r#"{"alpha":1,"beta":3,"b":"1+x","ell":"1","f":"1","h":"3+x","g":"1+x+x^2"}"#;
    let v = json(&["analyze", "--spec", spec]);
    assert_eq!(v["kernel"]["dim"], 3);
}

#[test]
fn analyze_rejects_bad_specs() {
    let even = z2z4(&["analyze", "--alpha", "1", "--beta", "4", "--b", "1", "--f", "1", "--h", "1", "--g", "1"]);
    assert_eq!(even.status.code(), Some(2));
    let bad = z2z4(&["analyze", "--alpha", "1", "--beta", "3", "--b", "1", "--f", "1", "--h", "1", "--g", "1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn search_family_2_7() {
    let rows: Vec<SearchRow> =
        serde_json::from_value(json(&["search", "--alpha", "2", "--beta", "7", "--type", "2,7:2,3"])).unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.kernel_dim == 5 && r.rank == 11));
    let kappas: BTreeSet<usize> = rows.iter().map(|r| r.code_type.kappa).collect();
    assert_eq!(kappas, BTreeSet::from([1, 2]));
}

#[test]
fn search_csv_and_dedupe() {
    let out = z2z4(&["search", "--alpha", "1", "--beta", "3", "--format", "csv"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert!(csv.lines().count() > 1);
    assert!(csv.lines().any(|l| l.contains("3+x") && l.contains("1+x+x^2")));

    let all: Vec<SearchRow> = serde_json::from_value(json(&["search", "--alpha", "2", "--beta", "3"])).unwrap();
    let unique: Vec<SearchRow> =
        serde_json::from_value(json(&["search", "--alpha", "2", "--beta", "3", "--dedupe"])).unwrap();
    // Normalized specs are in bijection with codes.
    assert_eq!(unique, all);
    assert!(unique.iter().all(|r| r.multiplicity == 1));
}

#[test]
fn search_with_verification() {
    let out = z2z4(&["search", "--alpha", "2", "--beta", "9", "--verify", "--workers", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn reference_suite_command() {
    let suite: SuiteReport = serde_json::from_value(json(&["paper-suite"])).unwrap();
    assert!(suite.passed());
    assert_eq!(suite.failed_ids(), Vec::<&str>::new());
    assert_eq!(z2z4(&["paper-suite", "--strict-erratum"]).status.code(), Some(1));
}

#[test]
fn enumerate_small_code() {
    let v = json(&["enumerate", "--gen", "1|12"]);
    let words = v["codewords"].as_array().unwrap();
    assert_eq!(words.len(), 4);
    assert!(words.iter().any(|w| w["gray"] == "00000"));
}

#[test]
fn size_guard_exit_code() {
    let mut args = vec!["enumerate"];
    args.extend(INEQUALITY);
    args.extend(["--max-size", "3"]);
    assert_eq!(z2z4(&args).status.code(), Some(3));
}

#[test]
fn sweep_command() {
    let out = z2z4(&["sweep", "--alpha-max", "1", "--betas", "1,3", "--format", "csv"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().count() > 1);
    assert_eq!(z2z4(&["sweep", "--betas", "2"]).status.code(), Some(2));
}
