use std::path::Path;
use std::process::{Command, Output};

use cluster_rsp::circuit::{build_cluster_circuit, parse_qasm};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cluster-rsp"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn validate(report: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/run_report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

fn report(args: &[&str]) -> Value {
    let v = serde_json::from_str(&stdout(&run(args))).unwrap();
    validate(&v);
    v
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn noiseless_run_is_perfect() {
    let r = report(&["run", "--alpha2", "0.4", "--gamma2", "0.3", "--noise", "ad", "--rate", "0"]);
    for o in r["outcomes"].as_array().unwrap() {
        assert!((f(&o["fidelity_paper"]) - 1.0).abs() < 1e-12);
        assert!((f(&o["fidelity_normalized"]) - 1.0).abs() < 1e-12);
    }
    assert!((f(&r["outcomes"][1]["fidelity_closed"]) - 1.0).abs() < 1e-12);
    assert!(r["generated_at_unix"].is_u64());
}

#[test]
fn bit_flip_run_matches_polynomial() {
    let r = report(&["run", "--alpha2", "0.3", "--gamma2", "0.3", "--noise", "bf", "--rate", "0.5"]);
    let (a2, g2, n) = (0.3, 0.3, 0.5);
    let expected = (1.0 - n) * (1.0 - n) * (1.0 - n)
        + 4.0 * n * n * (1.0 - n) * g2 * (1.0 - g2)
        + 4.0 * (1.0 - n) * (1.0 - n) * n * a2 * (1.0 - a2)
        + 16.0 * n * n * n * a2 * (1.0 - a2) * g2 * (1.0 - g2);
    let two = &r["outcomes"][1];
    assert_eq!(two["outcome"], 2);
    assert!((f(&two["fidelity_paper"]) - expected).abs() < 1e-10);
    assert!(f(&r["max_oracle_deviation"]) < 1e-10);
}

#[test]
fn run_output_is_reproducible_without_timestamp() {
    let args = ["run", "--alpha2", "0.2", "--gamma2", "0.9", "--noise", "pf", "--rate", "0.35", "--seed", "11", "--no-timestamp"];
    let first = stdout(&run(&args));
    assert_eq!(first, stdout(&run(&args)));
    let v: Value = serde_json::from_str(&first).unwrap();
    validate(&v);
    assert!(v.get("generated_at_unix").is_none());
    assert_eq!(v["inputs"]["seed"], 11);
    assert!((1..=4).contains(&v["sampled_outcome"].as_u64().unwrap()));
}

#[test]
fn invalid_run_arguments_exit_two() {
    for args in [
        &["run", "--alpha2", "1.5", "--gamma2", "0.3", "--noise", "ad", "--rate", "0"][..],
        &["run", "--alpha2", "0.5", "--gamma2", "0.3", "--noise", "ad", "--rate", "1.2"],
        &["run", "--alpha2", "0.5", "--gamma2", "0.3", "--noise", "depolarizing", "--rate", "0.1"],
        &["run", "--alpha2", "0.5", "--noise", "ad", "--rate", "0.1"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
    let out = run(&["run", "--alpha2", "1.5", "--gamma2", "0.3", "--noise", "ad", "--rate", "0"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha2"));
}

#[test]
fn one_dimensional_phase_flip_sweep() {
    let text = stdout(&run(&["sweep", "--noise", "pf", "--axis", "rate:0:1:2", "--alpha2", "0.5", "--gamma2", "0.5"]));
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data, ["axis1,F_closed,F_numeric_paper,F_numeric_normalized", "0,1,1,1", "1,0,0,0"]);
}

#[test]
fn preset_writes_file_with_caption_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig3a.csv");
    let out = run(&["sweep", "--preset", "fig3a", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("# preset: fig3a\n"));
    assert!(text.contains("# fixed: alpha2=0.3\n"));
    assert!(text.contains("sqrt(0.3)|0> + sqrt(0.7)|1>"));
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 51 * 51);
    for r in &rows {
        assert!((r[2] - r[3]).abs() < 1e-10, "{r:?}");
    }
    assert_eq!(&rows[1][..2], &[0.0, 0.02]);
    assert_eq!(&rows[51][..2], &[0.02, 0.0]);
}

#[test]
fn sweeps_are_byte_identical_across_runs() {
    let args = ["sweep", "--preset", "fig4c"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn list_names_all_presets() {
    assert_eq!(stdout(&run(&["sweep", "--list"])).lines().count(), 12);
}

#[test]
fn bad_sweeps() {
    let cases: [&[&str]; 5] = [
        &["sweep", "--preset", "fig9z"],
        &["sweep", "--noise", "ad", "--axis", "rate:0:1:3", "--alpha2", "0.3"],
        &["sweep", "--noise", "ad", "--axis", "rate:0:1:1", "--alpha2", "0.3", "--gamma2", "0.3"],
        &["sweep", "--noise", "ad", "--axis", "rate:0:1:3", "--alpha2", "0.3", "--gamma2", "0.3", "--rate", "0.1"],
        &["sweep", "--noise", "ad", "--axis", "rate:0:1:3", "--alpha2", "0.3", "--gamma2", "0.3", "--outcome", "5"],
    ];
    for args in cases {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    let out = run(&["sweep", "--preset", "fig3d", "--output", "/nonexistent/dir/out.csv"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn qasm_default_file_and_stdout_agree() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().arg("qasm").current_dir(dir.path()).output().unwrap();
    assert!(out.status.success());
    let file = std::fs::read_to_string(dir.path().join("cluster.qasm")).unwrap();
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/cluster.qasm");
    assert_eq!(file, std::fs::read_to_string(golden).unwrap());
    assert_eq!(stdout(&run(&["qasm", "--stdout"])), file);
    assert_eq!(parse_qasm(&file).unwrap(), build_cluster_circuit());
}

#[test]
fn qasm_unwritable_path_exits_three() {
    let out = run(&["qasm", "--output", "/nonexistent/dir/c.qasm"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/dir/c.qasm"));
}
