use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn mfcert(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_mfcert")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const KOSZUL: &str = r#"{
  "kind": "complex",
  "ring": {"field": "Q", "vars": ["x", "y"]},
  "d": {"parity": "odd", "source": {"even": 1, "odd": 1}, "from_even": [["x"]], "from_odd": [["-y"]]}
}"#;

const TWIST: &str = r#"{
  "kind": "twist-family",
  "ring": {"field": "Q", "vars": ["x", "y"]},
  "factors": ["x", "y"],
  "d": {"parity": "odd", "source": {"even": 1, "odd": 1}, "from_even": [["x"]], "from_odd": [["-y"]]}
}"#;

const RAMOND: &str = r#"{
  "kind": "ramond-data",
  "ring": {"field": "Q", "vars": ["x"]},
  "coords": ["x"],
  "r": 2,
  "d": [["1"]],
  "nu": [["3"]],
  "e1": ["1"],
  "e2": ["2"]
}"#;

#[test]
fn check_mf_reports_koszul_curvature() {
    let dir = TempDir::new().unwrap();
    let run = mfcert(&["check-mf", s(&write(&dir, "k.json", KOSZUL))]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    assert!(run.stdout.contains("curvature = -x*y"), "{}", run.stdout);
}

#[test]
fn check_mf_zero_map() {
    let dir = TempDir::new().unwrap();
    let zero = KOSZUL.replace(r#"[["x"]]"#, r#"[["0"]]"#).replace(r#"[["-y"]]"#, r#"[["0"]]"#);
    let run = mfcert(&["check-mf", s(&write(&dir, "z.json", &zero))]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("curvature = 0"), "{}", run.stdout);
}

#[test]
fn check_mf_non_scalar_square_fails() {
    let dir = TempDir::new().unwrap();
    let text = r#"{
  "kind": "complex",
  "ring": {"field": "Q", "vars": ["x", "y"]},
  "d": {"parity": "odd", "source": {"even": 2, "odd": 2},
        "from_even": [["x", "0"], ["0", "y"]], "from_odd": [["1", "0"], ["0", "1"]]}
}"#;
    let run = mfcert(&["check-mf", s(&write(&dir, "bad.json", text))]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("FAIL"), "{}", run.stdout);
}

#[test]
fn malformed_file_gives_line_number() {
    let dir = TempDir::new().unwrap();
    let bad = KOSZUL.replace(r#"[["-y"]]"#, r#"[["-y+"]]"#);
    let run = mfcert(&["check-mf", s(&write(&dir, "m.json", &bad))]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("line 4"), "{}", run.stderr);
}

#[test]
fn lemma2_writes_a_bundle_that_verifies() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "t.json", TWIST);
    let run = mfcert(&["lemma2", s(&input)]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let bundle = dir.path().join("t.cert.json");
    assert!(bundle.exists());
    let run = mfcert(&["verify", s(&bundle)]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    assert!(run.stdout.contains("result: PASS"));
}

#[test]
fn corrupted_bundle_fails_with_move_index() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "t.json", TWIST);
    let bundle = dir.path().join("b.json");
    assert_eq!(mfcert(&["lemma2", s(&input), "--out", s(&bundle)]).code, 0);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&bundle).unwrap()).unwrap();
    let moves = v["moves"].as_array_mut().unwrap();
    let (i, m) = moves.iter_mut().enumerate().find(|(_, m)| m["kind"] == "homotopy").unwrap();
    let cell = m["h"]["from_even"][0][0].as_str().unwrap().to_string();
    m["h"]["from_even"][0][0] = Value::String(format!("({cell}) + 1"));
    std::fs::write(&bundle, serde_json::to_string(&v).unwrap()).unwrap();
    let run = mfcert(&["verify", s(&bundle), "--json-report"]);
    assert_eq!(run.code, 1, "{}", run.stdout);
    let report: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(report["pass"], false);
    let first = report["sections"][0]["info"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["key"] == "first failing move")
        .unwrap();
    assert_eq!(first["value"], i.to_string());
}

#[test]
fn missing_file_is_an_io_error() {
    let run = mfcert(&["verify", "/nonexistent/bundle.json"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("reading /nonexistent/bundle.json"), "{}", run.stderr);
}

#[test]
fn sxi_on_the_worked_example() {
    let dir = TempDir::new().unwrap();
    let run = mfcert(&["sxi", s(&write(&dir, "r.json", RAMOND))]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    assert!(run.stdout.contains("f_(1) = -x"));
    assert!(run.stdout.contains("f_(-1) = 3*x"));
    assert!(run.stdout.contains("PASS  transported action matches d_2 at ξ = -1"));
}

#[test]
fn lemma1_rejects_a_wrong_square() {
    let dir = TempDir::new().unwrap();
    let text = r#"{
  "kind": "lambda-family",
  "ring": {"field": "Q", "vars": ["x", "lambda"]},
  "r": 3,
  "d": {"parity": "odd", "source": {"even": 1, "odd": 1}, "from_even": [["lambda"]], "from_odd": [["lambda"]]}
}"#;
    let run = mfcert(&["lemma1", s(&write(&dir, "l.json", text))]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("residual"), "{}", run.stderr);
}

#[test]
fn wrong_kind_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let run = mfcert(&["lemma1", s(&write(&dir, "t.json", TWIST))]);
    assert_eq!(run.code, 2);
}

#[test]
fn gen_lambda_family_is_the_documented_family() {
    let run = mfcert(&["gen", "lambda-family", "--r", "2", "--seed", "1"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["d"]["from_even"], serde_json::json!([["lambda", "x"], ["0", "lambda"]]));
    assert_eq!(v["d"]["from_odd"], serde_json::json!([["lambda", "-x"], ["0", "lambda"]]));
}

#[test]
fn gen_twist_family_passes_check_mf_and_lemma2() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("g.json");
    let run = mfcert(&["gen", "twist-family", "--r", "3", "--seed", "7", "--size", "3", "--out", s(&path)]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    assert_eq!(mfcert(&["check-mf", s(&path)]).code, 0);
    assert_eq!(mfcert(&["lemma2", s(&path)]).code, 0);
}

#[test]
fn gen_is_deterministic() {
    for kind in ["lambda-family", "twist-family", "tau-data", "ramond-data", "remark-family", "cone-lift"] {
        let a = mfcert(&["gen", kind, "--r", "3", "--size", "2", "--seed", "5"]);
        let b = mfcert(&["gen", kind, "--r", "3", "--size", "2", "--seed", "5"]);
        assert_eq!(a.code, 0, "{kind}: {}", a.stderr);
        assert_eq!(a.stdout, b.stdout, "{kind}");
        assert_eq!(a.stderr, b.stderr, "{kind}");
    }
}

#[test]
fn gen_size_zero_is_valid() {
    let dir = TempDir::new().unwrap();
    for (kind, cmd) in [("lambda-family", "lemma1"), ("twist-family", "lemma2"), ("ramond-data", "sxi")] {
        let path = dir.path().join(format!("{kind}.json"));
        assert_eq!(mfcert(&["gen", kind, "--size", "0", "--out", s(&path)]).code, 0);
        let run = mfcert(&[cmd, s(&path)]);
        assert_eq!(run.code, 0, "{kind}: {}", run.stdout);
    }
}

#[test]
fn gen_size_limit() {
    let run = mfcert(&["gen", "lambda-family", "--size", "100"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("exceeds"), "{}", run.stderr);
}

#[test]
fn generated_instances_run_through_their_commands() {
    let dir = TempDir::new().unwrap();
    for (kind, cmd) in [
        ("lambda-family", "lemma1"),
        ("remark-family", "remark"),
        ("tau-data", "slambda"),
        ("cone-lift", "conelift"),
    ] {
        let path = dir.path().join(format!("{kind}.json"));
        assert_eq!(mfcert(&["gen", kind, "--r", "3", "--seed", "3", "--out", s(&path)]).code, 0);
        let run = mfcert(&[cmd, s(&path)]);
        assert_eq!(run.code, 0, "{kind}: {}", run.stdout);
    }
}

#[test]
fn field_override() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "t.json", TWIST);
    let run = mfcert(&["lemma2", s(&path), "--field", "cyclotomic:3", "--json-report"]);
    assert_eq!(run.code, 0);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["seed"], 1);
    assert_eq!(mfcert(&["lemma2", s(&path), "--field", "nonsense"]).code, 2);
}

#[test]
fn json_report_to_file_mirrors_text() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "k.json", KOSZUL);
    let report = dir.path().join("rep.json");
    let run = mfcert(&["check-mf", s(&input), "--seed", "9", "--json-report", s(&report)]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.starts_with("mfcert check-mf (seed 9, trials 20)"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["command"], "check-mf");
    assert_eq!(v["seed"], 9);
    assert_eq!(v["sections"][0]["info"][1]["value"], "-x*y");
}

#[test]
fn seed_must_be_positive() {
    assert_eq!(mfcert(&["gen", "lambda-family", "--seed", "0"]).code, 2);
    assert_eq!(mfcert(&["bogus"]).code, 2);
}
