use std::fs;
use std::process::Command;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_laplace-spectra");

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn code(args: &[&str]) -> i32 {
    run(args).0
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&["frobnicate"]), 64);
    assert_eq!(code(&["spectrum", "--system", "A2", "--cutoff", "10", "--bogus"]), 64);
    assert_eq!(code(&["spectrum", "--system", "A2"]), 64);
    assert_eq!(code(&["spectrum", "--system", "E9", "--cutoff", "10"]), 64);
    assert_eq!(code(&["spectrum", "--system", "A2", "--cutoff", "ten"]), 64);
    assert_eq!(code(&["roots"]), 64);
    assert_eq!(code(&["sphere-sym", "--system", "A1", "--a2", "-1"]), 64);
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["certify", "--help"]), 0);
}

#[test]
fn invariant_and_capacity_codes() {
    assert_eq!(code(&["assemble", "--type", "quaternionic", "--m", "3"]), 2);
    // delta is not in the root lattice of A1
    assert_eq!(code(&["sphere-sym", "--system", "A1", "--lattice", "root", "--a2", "2"]), 2);
    assert_eq!(code(&["certify", "--mmax", "13"]), 3);
}

#[test]
fn report_envelope_carries_config_and_conventions() {
    let (c, out, _) = run(&["spectrum", "--system", "B2", "--cutoff", "20", "--delta-mode", "unweighted"]);
    assert_eq!(c, 0);
    assert!(out.ends_with("}\n"));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["tool"], "laplace-spectra");
    assert_eq!(v["subcommand"], "spectrum");
    assert_eq!(v["config"]["system"], "B2");
    assert_eq!(v["config"]["delta-mode"], "unweighted");
    for key in ["root_normalization", "delta_mode", "resultant", "rational_format"] {
        assert!(v["conventions"][key].is_string(), "{key}");
    }
    assert!(v["version"].is_string());
}

#[test]
fn config_file_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.json");
    let args = ["collisions", "--system", "G2", "--cutoff", "50", "--out", first.to_str().unwrap()];
    assert_eq!(code(&args), 0);
    let report: Value = serde_json::from_str(&fs::read_to_string(&first).unwrap()).unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, serde_json::to_string(&report["config"]).unwrap()).unwrap();

    let second = dir.path().join("b.json");
    assert_eq!(code(&["--config", cfg.to_str().unwrap(), "--out", second.to_str().unwrap()]), 0);
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());

    // a flag on the command line overrides the file
    let (c, out, _) = run(&["--config", cfg.to_str().unwrap(), "--cutoff", "20"]);
    assert_eq!(c, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["config"]["cutoff"], "20");
}

#[test]
fn bad_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"system": "A2"}"#).unwrap();
    assert_eq!(code(&["--config", cfg.to_str().unwrap()]), 64);
    assert_eq!(code(&["--config", dir.path().join("missing.json").to_str().unwrap()]), 64);
}

#[test]
fn csv_view_matches_the_records() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let (c, out, _) = run(&["spectrum", "--system", "A2", "--cutoff", "20", "--csv", csv.to_str().unwrap()]);
    assert_eq!(c, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("dynkin,a_squared,lambda,dim,type,self_dual,dual,multiplicity"));
    assert_eq!(lines.count(), v["result"]["records"].as_array().unwrap().len());
    assert!(text.contains("\"1,0\",14/3,8/3,3,complex,false,\"0,1\",1"));
}

#[test]
fn vk_multiplicities_flow_into_assembly() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("s.json");
    let args = ["spectrum", "--system", "A1", "--cutoff", "2", "--vk-mult", "1=2", "--out", spec.to_str().unwrap()];
    assert_eq!(code(&args), 0);
    let (c, out, _) = run(&["assemble", "--input", spec.to_str().unwrap()]);
    assert_eq!(c, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let quaternionic: Vec<&Value> = v["result"]["assemblies"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|a| a["assembly"]["rep_type"] == "quaternionic")
        .collect();
    assert_eq!(quaternionic.len(), 1);
    assert_eq!(quaternionic[0]["assembly"]["complex_structure"], "(ℍ⊗V)^{⊕1}");
}

#[test]
fn verdict_accepts_a_spectra_list() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("spectra.json");
    // two complex duals sharing an eigenvalue, plus a real rep with a simple spectrum
    fs::write(
        &input,
        r#"{"spectra": [
            {"label": "V", "type": "complex", "dual": "W", "eigenvalues": [{"factor": ["-3/1", "1/1"], "multiplicity": 1}]},
            {"label": "W", "type": "complex", "dual": "V", "eigenvalues": [{"factor": ["-3/1", "1/1"], "multiplicity": 1}]},
            {"label": "U", "type": "real", "eigenvalues": [{"factor": ["-5/1", "1/1"], "multiplicity": 1}]}
        ]}"#,
    )
    .unwrap();
    let (c, out, err) = run(&["verdict", "--input", input.to_str().unwrap()]);
    assert_eq!(c, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["real_G_simple"], v["result"]["complex_Q8xG_simple"]);
}

#[test]
fn selfcheck_passes_and_reports_observations() {
    let (c, out, _) = run(&["selfcheck"]);
    assert_eq!(c, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["passed"], true);
    assert!(v["result"]["observations"].as_array().is_some_and(|o| !o.is_empty()));
}
