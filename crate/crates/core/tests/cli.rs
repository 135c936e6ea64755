use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use twosegal::cli::run;

fn corpus(rel: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel);
    p.to_str().unwrap().to_string()
}

fn twosegal(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("twosegal").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, out, err) = twosegal(&a);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn truncated_nerve_is_two_segal() {
    let (code, v) = json(&["two-segal", &corpus("sets/truncated3-nerve.json"), "--max-level", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], true);
    assert_eq!(v["checked_up_to"], 4);
}

#[test]
fn truncated_nerve_is_not_segal_at_two() {
    let (code, v) = json(&["segal", &corpus("sets/truncated3-nerve.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["segal"]["1"], true);
    assert_eq!(v["segal"]["2"], false);
    assert!(v["witnesses"]["2"].is_object());
}

#[test]
fn group_nerve_round_trips() {
    let (code, v) = json(&["roundtrip", &corpus("sets/zmod2-nerve.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], true);
    let (code, _) = json(&["roundtrip", "--category", &corpus("sets/zmod2-nerve.json")]);
    assert_eq!(code, 0);
}

#[test]
fn punctured_set_fails_two_segal_checks() {
    let set = corpus("sets/zmod2-punctured.json");
    assert_eq!(json(&["two-segal", &set]).0, 1);
    assert_eq!(json(&["hall", &set]).0, 1);
    assert_eq!(json(&["coherence", &set]).0, 1);
    assert_eq!(json(&["roundtrip", &set]).0, 1);
    assert_eq!(json(&["validate", &set]).0, 0);
}

#[test]
fn coherence_accepts_bundles_and_sets() {
    assert_eq!(json(&["coherence", &corpus("pseudomonoids/truncated3-nerve.json")]).0, 0);
    assert_eq!(json(&["coherence", &corpus("sets/chain3-nerve.json")]).0, 0);
}

#[test]
fn hall_text_matches_corpus_table() {
    let (code, out, _) = twosegal(&["hall", &corpus("sets/zmod2-nerve.json")]);
    assert_eq!(code, 0);
    let table = std::fs::read_to_string(corpus("tables/zmod2-nerve.hall.txt")).unwrap();
    assert!(out.starts_with(&table));
    assert!(out.contains("associativity"));
}

#[test]
fn nerve_extract_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("chain.json");
    let cat = dir.path().join("chain.cat.json");
    let set_s = set.to_str().unwrap();
    let cat_s = cat.to_str().unwrap();
    let (code, out, _) = twosegal(&["nerve", &corpus("categories/chain3.json"), "--max-level", "3", "-o", set_s]);
    assert_eq!((code, out.as_str()), (0, ""));
    assert_eq!(json(&["segal", set_s]).0, 0);
    assert_eq!(twosegal(&["extract", set_s, "-o", cat_s]).0, 0);
    let back: Value = serde_json::from_str(&std::fs::read_to_string(&cat).unwrap()).unwrap();
    let orig: Value = serde_json::from_str(&std::fs::read_to_string(corpus("categories/chain3.json")).unwrap()).unwrap();
    assert_eq!(back["objects"], orig["objects"]);
}

#[test]
fn convolution_of_constants_on_exponential_data() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.json");
    let basis: Vec<String> = {
        let s: Value = serde_json::from_str(&std::fs::read_to_string(corpus("sets/exponential3.json")).unwrap()).unwrap();
        s["levels"][1].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect()
    };
    let values: serde_json::Map<String, Value> = basis.iter().map(|b| (b.clone(), Value::from(1))).collect();
    std::fs::write(&one, serde_json::json!({ "values": values }).to_string()).unwrap();
    let one = one.to_str().unwrap();
    let (code, v) = json(&["convolve", &corpus("sets/exponential3.json"), one, one]);
    assert_eq!(code, 0);
    let got: Vec<String> = basis.iter().map(|b| v["values"][b].as_str().map_or_else(|| v["values"][b].to_string(), String::from)).collect();
    assert_eq!(got, ["1", "2", "4", "8"]);
}

#[test]
fn closed_form_comparisons() {
    for ex in ["group", "poset", "dirichlet", "truncated_poly", "exponential"] {
        let (code, v) = json(&["compare", ex]);
        assert_eq!(code, 0, "{ex}");
        assert_eq!(v["mismatches"], serde_json::json!([]), "{ex}");
    }
    let (code, _, err) = twosegal(&["compare", "nope"]);
    assert_eq!(code, 2);
    assert!(err.contains("nope"));
}

#[test]
fn parse_errors_name_file_line_and_key() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let text = std::fs::read_to_string(corpus("sets/point.json"))
        .unwrap()
        .replacen("\"2,1\": [0]", "\"2,1\": [7]", 1);
    let line = text.lines().position(|l| l.contains("\"2,1\": [7]")).unwrap() + 1;
    std::fs::write(&bad, text).unwrap();
    let (code, out, err) = twosegal(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("bad.json"), "{err}");
    assert!(err.contains(&format!("line {line}")), "{err}");
    assert!(err.contains("face.2,1"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(twosegal(&["bogus"]).0, 2);
    assert_eq!(twosegal(&["validate", "/no/such/file.json"]).0, 2);
    let (code, _, err) = twosegal(&["segal", &corpus("sets/point.json"), "--max-level", "9"]);
    assert_eq!(code, 2);
    assert!(err.contains("--max-level"));
    assert_eq!(twosegal(&["--help"]).0, 0);
}

#[test]
fn max_level_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_twosegal"))
        .args(["two-segal", &corpus("sets/point.json"), "--format", "json"])
        .env("TWO_SEGAL_MAX_LEVEL", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["checked_up_to"], 2);
}

#[test]
fn generate_writes_the_checked_in_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = twosegal(&["generate", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let mut n = 0;
    for line in out.lines() {
        let rel = PathBuf::from(line).strip_prefix(dir.path()).unwrap().to_path_buf();
        let fresh = std::fs::read_to_string(line).unwrap();
        let stored = std::fs::read_to_string(corpus(rel.to_str().unwrap())).unwrap();
        assert_eq!(fresh, stored, "{}", rel.display());
        n += 1;
    }
    assert_eq!(n, twosegal::corpus::files().len());
}
