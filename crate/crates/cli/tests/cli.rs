use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_lca-entropy");

fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn instance(name: &str) -> PathBuf {
    crate_dir().join("instances").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn run_file(args: &[&str], file: &Path) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.push(file.to_str().unwrap());
    run(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_instance(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn schema(name: &str) -> jsonschema::Validator {
    let text = std::fs::read_to_string(crate_dir().join("schema").join(name)).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v
        .iter_errors(doc)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect();
    assert!(errors.is_empty(), "{errors:#?}\n{doc:#}");
}

fn good_instances() -> Vec<PathBuf> {
    let mut files: Vec<_> = std::fs::read_dir(crate_dir().join("instances"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| !p.ends_with("malformed.json"))
        .collect();
    files.sort();
    files
}

#[test]
fn full_shift_entropy_is_log_2() {
    let o = run_file(&["entropy"], &instance("full_shift_2.json"));
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("indices: 1, 2, 4, 8, 16, 32, 64, 128\n"),
        "{out}"
    );
    assert!(
        out.contains("entropy = log 2 (stabilized, window 3)\n"),
        "{out}"
    );
}

#[test]
fn full_shift_bridge_check_passes() {
    let o = run_file(&["bridge-check"], &instance("full_shift_3.json"));
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("verdict: equal-exact"), "{out}");
    assert!(out.ends_with("result: PASS\n"), "{out}");
}

#[test]
fn padic_entropy_from_newton_and_lattice() {
    let o = run_file(&["entropy"], &instance("padic_half.json"));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("entropy = log 2 (newton: log 2, lattice: stabilized log 2)\n"));
}

#[test]
fn identity_has_zero_entropy() {
    let o = run_file(&["entropy"], &instance("finite_identity.json"));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("entropy = 0 ("));
}

#[test]
fn real_entropy_is_log_golden_ratio() {
    let o = run_file(
        &["--format", "json", "entropy"],
        &instance("real_hyperbolic.json"),
    );
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let h = v["entropy"]["decimal"].as_f64().unwrap();
    let golden_sq = (3.0 + 5f64.sqrt()) / 2.0;
    assert!((h - golden_sq.ln()).abs() < 1e-12);
}

#[test]
fn selftest_passes_every_law() {
    let o = run(&[
        "duality-selftest",
        "--seed",
        "1",
        "--trials",
        "100",
        "--max-order",
        "512",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("pass (100/100 passed)").count(), 9, "{out}");
}

#[test]
fn malformed_input_exits_2() {
    let o = run_file(&["entropy"], &instance("malformed.json"));
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a rational number"));

    for text in [
        "{ not json",
        r#"{"group": {"finite": {"moduli": [4]}}, "endomorphism": [[1]], "colour": "red"}"#,
        r#"{"group": {"finite": {"moduli": [4]}}}"#,
        r#"{"group": {"padic": {"p": 6, "d": 1, "matrix": [["1"]]}}}"#,
        r#"{"group": {"real": {"n": 2, "matrix": [["1"]]}}}"#,
    ] {
        let f = temp_instance(text);
        let o = run_file(&["bridge-check"], f.path());
        assert_eq!(o.status.code(), Some(2), "{text}");
    }
    assert_eq!(
        run(&["entropy", "/nonexistent/instance.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn computation_errors_exit_3() {
    let short = temp_instance(
        r#"{"group": {"profinite_tower": {"family": "full_shift", "m": 2, "levels": 4}}, "depth": 8}"#,
    );
    let o = run_file(&["entropy"], short.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());

    let singular = temp_instance(
        r#"{"group": {"padic": {"p": 2, "d": 2, "matrix": [["1", "2"], ["2", "4"]]}}}"#,
    );
    assert_eq!(
        run_file(&["entropy"], singular.path()).status.code(),
        Some(3)
    );
}

#[test]
fn cli_flags_override_file_settings() {
    let o = run_file(
        &["--depth", "4", "--window", "2", "entropy"],
        &instance("padic_half.json"),
    );
    let out = stdout(&o);
    assert!(out.contains("indices: 1, 2, 4, 8\n"), "{out}");
    assert!(out.contains("stabilized log 2"), "{out}");
}

#[test]
fn json_reports_are_deterministic_and_match_the_schema() {
    let reports = schema("report.schema.json");
    let mut runs: Vec<Vec<String>> = good_instances()
        .iter()
        .flat_map(|f| {
            ["entropy", "bridge-check"].map(|cmd| {
                vec![
                    "--format".into(),
                    "json".into(),
                    cmd.into(),
                    f.display().to_string(),
                ]
            })
        })
        .collect();
    runs.push(
        ["--format", "json", "duality-selftest", "--trials", "20"]
            .map(String::from)
            .to_vec(),
    );
    for args in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run(&args);
        assert_eq!(first.status.code(), Some(0), "{args:?}");
        assert_eq!(first.stdout, run(&args).stdout, "{args:?}");
        assert_valid(&reports, &serde_json::from_str(&stdout(&first)).unwrap());
    }
}

#[test]
fn instance_files_match_the_schema() {
    let instances = schema("instance.schema.json");
    for f in good_instances() {
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
        assert_valid(&instances, &doc);
    }
    let bad: Value =
        serde_json::from_str(&std::fs::read_to_string(instance("malformed.json")).unwrap())
            .unwrap();
    assert!(!instances.is_valid(&bad));
    let extra: Value = serde_json::json!({"group": {"finite": {"moduli": [2]}}, "colour": 1});
    assert!(!instances.is_valid(&extra));
}
