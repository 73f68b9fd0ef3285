use std::path::Path;
use std::process::{Command, Output};

use clap::Parser;
use permrf_cli::{Command as Cmd, RunConfig};
use serde_json::Value;

fn permrf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permrf"))
        .args(args)
        .env_remove("PERMRF_BUDGET")
        .output()
        .expect("binary runs")
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

/// Runs the binary, checks the exit code and validates stdout against the schema.
fn json_of(args: &[&str], code: i32) -> Value {
    let out = permrf(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    let validator = schema();
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
    doc
}

#[test]
fn check_closed_form_over_f9() {
    let doc = json_of(&["check", "--field", "3^1:2", "--b", "3", "--c", "1", "--method", "pairwise"], 0);
    assert_eq!(doc["verdict"], true);
    assert_eq!(doc["matches_closed_form"], true);
    for method in ["direct", "reduced"] {
        let doc = json_of(&["check", "--field", "3^1:2", "--b", "3", "--c", "1", "--method", method], 0);
        assert_eq!(doc["verdict"], true);
    }
    let doc = json_of(&["check", "--field", "3^1:2", "--b", "3", "--c", "2", "--method", "direct"], 0);
    assert_eq!(doc["verdict"], false);
    assert_eq!(doc["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn check_with_general_l() {
    let doc = json_of(&["check", "--field", "2^2:2", "--b", "4", "--c", "1", "--L", "1,1", "--method", "pairwise"], 0);
    assert_eq!(doc["verdict"], false);
    assert_eq!(doc["L"], serde_json::json!([1, 1]));
}

#[test]
fn weil_boundary() {
    let doc = json_of(&["weil", "--degree", "4", "--q", "49"], 0);
    assert_eq!(doc["holds"], false);
    let doc = json_of(&["weil", "--degree", "6", "--q", "431"], 0);
    assert_eq!(doc["holds"], true);
    assert_eq!(json_of(&["weil", "--degree", "4"], 0)["min_prime_power"], 53);
}

#[test]
fn verify_theorem_n2_passes() {
    let doc = json_of(&["verify", "--suite", "theorem-n2", "--q", "2,3,4,5"], 0);
    assert_eq!(doc["passed"], true);
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 4);
    assert!(reports.iter().all(|r| r["verdict"] == "pass"));
}

#[test]
fn verify_report_only_suite_exits_zero() {
    let doc = json_of(&["verify", "--suite", "proposition", "--q", "3", "--n", "3"], 0);
    assert_eq!(doc["reports"][0]["verdict"], "report-only");
    assert!(!doc["reports"][0]["exceptions"].as_array().unwrap().is_empty());
}

#[test]
fn verify_is_byte_identical_and_seed_sensitive() {
    let args = ["verify", "--suite", "lemma-equiv", "--samples", "200", "--seed", "5"];
    let a = permrf(&args);
    let b = permrf(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = permrf(&["verify", "--suite", "theorem-n2", "--q", "3", "--seed", "1", "--workers", "1"]);
    let d = permrf(&["verify", "--suite", "theorem-n2", "--q", "3", "--seed", "1"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn verify_writes_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("out.json");
    let csv_path = dir.path().join("out.csv");
    let out = permrf(&[
        "verify",
        "--suite",
        "theorem-n3",
        "--mode",
        "full-classify",
        "--q",
        "2",
        "--json",
        json_path.to_str().unwrap(),
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let stdout: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(file, stdout);
    let observations = stdout["reports"][0]["observations"].as_array().unwrap().len();
    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[0], "suite");
    assert_eq!(&headers[10], "detail");
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), observations);
    assert!(rows.iter().all(|r| &r[1] == "observation"));
}

#[test]
fn csv_header_present_without_rows() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("empty.csv");
    let out = permrf(&["verify", "--suite", "remark3", "--q", "3", "--csv", csv_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(csv_path).unwrap();
    assert_eq!(text.lines().count(), 1);
}

#[test]
fn classify_factor_points_and_field_outputs_validate() {
    let doc = json_of(&["classify", "--field", "3^1:2", "--b", "3"], 0);
    assert_eq!(doc["permuting_c"], serde_json::json!([1]));
    assert_eq!(doc["matches_closed_form"], true);
    let doc = json_of(&["--pretty", "classify", "--field", "2^1:2", "--all-b"], 0);
    assert_eq!(doc["results"].as_array().unwrap().len(), 2);
    let doc = json_of(&["factor", "--field", "3^1:2", "--b", "3", "--c", "1"], 0);
    assert_eq!(doc["found"], true);
    let doc = json_of(&["factor", "--field", "3^1:2", "--b", "3", "--c", "2"], 0);
    assert_eq!(doc["factor"], Value::Null);
    for which in ["f3", "f3kernel"] {
        json_of(&["--pretty", "points", "--field", "3^1:3", "--b", "3", "--c", "5", "--which", which], 0);
    }
    let doc = json_of(&["points", "--field", "3^1:2", "--b", "3", "--c", "1", "--which", "f2"], 0);
    assert_eq!(doc["offdiag_points"], 0);
    let doc = json_of(&["--pretty", "field", "--field", "3^1:2"], 0);
    assert_eq!(doc["h"], serde_json::json!([1, 0, 1]));
}

#[test]
fn custom_moduli() {
    let doc = json_of(&["--modulus-h", "2,2,1", "field", "--field", "3^1:2"], 0);
    assert_eq!(doc["h"], serde_json::json!([2, 2, 1]));
    let out = permrf(&["--modulus-h", "1,0,1,0", "field", "--field", "3^1:2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = permrf(&["--modulus-h", "2,0,1", "field", "--field", "3^1:2"]);
    assert_eq!(out.status.code(), Some(2), "x^2 + 2 is reducible over F_3");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bogus"][..],
        &["check", "--field", "3^1:2", "--b", "3"],
        &["check", "--field", "3:2", "--b", "3", "--c", "1"],
        &["check", "--field", "4^1:2", "--b", "3", "--c", "1"],
        &["check", "--field", "3^1:2", "--b", "9", "--c", "1"],
        &["check", "--field", "3^1:2", "--b", "1", "--c", "1"],
        &["check", "--field", "3^1:2", "--b", "3", "--c", "0"],
        &["check", "--field", "3^1:2", "--b", "3", "--c", "1", "--method", "magic"],
        &["verify", "--suite", "nope"],
        &["verify", "--suite", "remark3", "--q", "2"],
        &["weil", "--degree", "1"],
    ] {
        let out = permrf(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    assert_eq!(permrf(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_flag_and_env() {
    let out = permrf(&["--budget", "5", "check", "--field", "3^1:2", "--b", "3", "--c", "1", "--method", "direct"]);
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_permrf"))
        .args(["verify", "--suite", "theorem-n2", "--q", "3"])
        .env("PERMRF_BUDGET", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let doc = json_of(&["verify", "--suite", "theorem-n2", "--q", "3", "--budget", "1000"], 0);
    assert_eq!(doc["budget"], 1000);
}

#[test]
fn timing_is_opt_in() {
    let doc = json_of(&["verify", "--suite", "lemma-basis", "--q", "2"], 0);
    assert!(doc["reports"][0].get("elapsed_ms").is_none());
    let doc = json_of(&["verify", "--suite", "lemma-basis", "--q", "2", "--timing"], 0);
    assert!(doc["reports"][0]["elapsed_ms"].is_u64());
}

#[test]
fn run_config_round_trips() {
    let argv = [
        "permrf", "--workers", "3", "--budget", "4096", "--pretty", "--modulus-h", "2,2,1",
        "verify", "--suite", "all", "--q", "2,3", "--seed", "9", "--json", "r.json",
    ];
    let cfg = RunConfig::try_parse_from(argv).unwrap();
    let text = serde_json::to_string(&cfg).unwrap();
    let back: RunConfig = serde_json::from_str(&text).unwrap();
    assert_eq!(back, cfg);
    assert_eq!(cfg.workers, Some(3));
    match &cfg.command {
        Cmd::Verify { seed, q, mode, .. } => {
            assert_eq!(*seed, 9);
            assert_eq!(q.as_deref(), Some("2,3"));
            assert_eq!(mode, "auto");
        }
        other => panic!("parsed {other:?}"),
    }
}

#[test]
fn run_config_defaults() {
    let cfg = RunConfig::try_parse_from(["permrf", "weil", "--degree", "3"]).unwrap();
    assert_eq!(cfg.workers, None);
    assert_eq!(cfg.budget, 1 << 24);
    assert!(!cfg.pretty);
    let cfg = RunConfig::try_parse_from(["permrf", "verify", "--suite", "remark3"]).unwrap();
    match cfg.command {
        Cmd::Verify { seed, samples, .. } => assert_eq!((seed, samples), (0, 1000)),
        _ => unreachable!(),
    }
}
