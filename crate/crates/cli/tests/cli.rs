use std::process::{Command, Output};

use serde_json::{json, Value};

fn deephole(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deephole"))
        .arg("--deterministic")
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (Value, i32) {
    let out = deephole(args);
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}; stderr {}", String::from_utf8_lossy(&out.stderr)));
    (v, out.status.code().expect("exit code"))
}

fn csv_rows(args: &[&str]) -> usize {
    let mut full = vec!["--format", "csv"];
    full.extend_from_slice(args);
    let out = deephole(&full);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    reader.records().count()
}

#[test]
fn hd_matches_hand_expansion() {
    let (v, code) = run_json(&["hd", "--d", "3", "--p", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], json!({"(0,0,1)": 1, "(1,1,0)": 5, "(3,0,0)": 1}));
    let (explicit, _) = run_json(&["hd", "--d", "3", "--p", "7", "--method", "explicit"]);
    assert_eq!(explicit["result"], v["result"]);
}

#[test]
fn envelope_has_sorted_keys() {
    let out = deephole(&["field", "--q", "9"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let top: Vec<usize> = ["\"command\"", "\"params\"", "\"result\"", "\"timing_ms\"", "\"version\""]
        .iter()
        .map(|k| text.find(k).expect("envelope key present"))
        .collect();
    assert!(top.windows(2).all(|w| w[0] < w[1]));
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["timing_ms"], json!(0));
    assert_eq!(v["params"]["field"]["modulus"], json!([1, 0, 1]));
}

#[test]
fn thresholds_example_meets_conditions() {
    let (v, code) = run_json(&["thresholds", "--q", "401", "--k", "19", "--d", "3", "--epsilon", "1/2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], json!("conditions_met"));
    let (v, code) = run_json(&["thresholds", "--q", "400", "--k", "19", "--d", "3", "--epsilon", "1/2"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["verdict"], json!("conditions_not_met"));
}

#[test]
fn degree_k_word_is_deep_hole() {
    let (v, code) = run_json(&["deephole", "--q", "7", "--k", "2", "--f", "0,0,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], json!("deep_hole"));
    assert_eq!(v["result"]["distance"], json!(4));
    let (v, _) = run_json(&["deephole", "--q", "7", "--k", "2", "--f", "1,0,0"]);
    assert_eq!(v["result"]["verdict"], json!("codeword"));
}

#[test]
fn deephole_reports_witness_for_non_deep_hole() {
    let (v, code) = run_json(&["deephole", "--q", "7", "--k", "3", "--f", "0,0,0,1,0,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], json!("not_deep_hole"));
    assert!(v["result"]["witness"].is_object());
    assert_eq!(v["result"]["criterion_consistent"], json!(true));
}

#[test]
fn search_exit_codes() {
    let (v, code) = run_json(&["search", "--q", "13", "--k", "4", "--f", "3,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["outcome"], json!("found"));
    // T^5 over F_7 with k = 3 generates a deep hole.
    let (v, code) = run_json(&["search", "--q", "7", "--k", "3", "--f", "0,0"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["outcome"], json!("exhausted"));
    let (v, code) = run_json(&["search", "--q", "13", "--k", "4", "--f", "3,1", "--budget", "0"]);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["outcome"], json!("budget_exceeded"));
}

#[test]
fn invalid_parameters_and_guards() {
    assert_eq!(deephole(&["hd", "--d", "2", "--q", "6"]).status.code(), Some(2));
    assert_eq!(deephole(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(deephole(&["hf-eval", "--q", "7", "--k", "2", "--f", "9", "--x", "1,2,3"]).status.code(), Some(2));
    assert_eq!(deephole(&["artin-schreier", "--q", "25", "--k", "6", "--d", "3"]).status.code(), Some(2));
    let guard = deephole(&["deephole", "--q", "101", "--k", "5", "--f", "0,0,0,0,0,1"]);
    assert_eq!(guard.status.code(), Some(3));
    assert!(guard.stdout.is_empty());
}

#[test]
fn csv_rows_match_json_arrays() {
    let sweep = ["equivalence-sweep", "--q", "7", "--k", "3", "--d", "2"];
    let (v, code) = run_json(&sweep);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["equivalent"], json!(true));
    assert_eq!(csv_rows(&sweep), v["result"]["results"].as_array().unwrap().len());

    let scan = ["singular-scan", "--q", "7", "--k", "3", "--f", "0,0"];
    let (v, _) = run_json(&scan);
    let points = v["result"]["points"].as_array().unwrap().len();
    assert!(points > 0);
    assert_eq!(csv_rows(&scan), points);

    let hd = ["hd", "--d", "5", "--p", "5"];
    let (v, _) = run_json(&hd);
    assert_eq!(csv_rows(&hd), v["result"].as_object().unwrap().len());
}

#[test]
fn verify_identities_holds() {
    let (v, code) = run_json(&["verify-identities", "--q", "9", "--max-kplus1", "4", "--trials", "10"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["all_hold"], json!(true));
    assert_eq!(v["params"]["seed"], json!(0x5EED));
}

#[test]
fn seed_changes_randomized_configs() {
    let (a, _) = run_json(&["verify-identities", "--q", "7", "--trials", "5", "--seed", "1"]);
    let (b, _) = run_json(&["verify-identities", "--q", "7", "--trials", "5", "--seed", "0x2"]);
    assert_ne!(a["result"]["randomized"], b["result"]["randomized"]);
}

#[test]
fn artin_schreier_example() {
    let (v, code) = run_json(&["artin-schreier", "--q", "25", "--k", "7", "--d", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["root_count"], json!(10));
    assert_eq!(v["result"]["distance"], json!(14));
    assert_eq!(v["result"]["deg_h"], json!(6));
}
