use std::process::{Command, Output};

use serde_json::Value;
use smithalg_cli::catalog::default_catalog;
use smithalg_cli::json::PolyJson;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smithalg")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write_catalog(name: &str, records: &[smithalg_cli::catalog::ScenarioRecord]) -> String {
    let path = std::env::temp_dir().join(format!("smithalg-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string_pretty(records).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn casimir_keys() {
    let v = json(&["casimir", "--f", "2*H", "--eta", "1"]);
    assert_eq!(v["u"]["coeffs"], serde_json::json!(["0", "-2", "2"]));
    assert_eq!(v["is_central"], Value::Bool(true));
    assert_eq!(v["omega"]["text"], "2*F*E + 2*H^2 + 2*H");
    assert_eq!(v["omega_eta"]["text"], "2*F + 2*H^2 + 2*H");
}

#[test]
fn normal_form_and_project() {
    let v = json(&["normal-form", "--f", "2*H", "--expr", "E*F - F*E"]);
    assert_eq!(v["normal_form"]["terms"], serde_json::json!([{"F": 0, "H": 1, "E": 0, "coeff": "2"}]));
    let v = json(&["project", "--f", "2*H", "--eta", "3", "--expr", "F*E^2"]);
    assert_eq!(v["projection"]["text"], "9*F");
}

#[test]
fn freeness_keys() {
    let v = json(&["freeness", "--f", "H^2", "--eta", "-3/2", "--k", "7"]);
    assert_eq!(v["rank"], v["dim"]);
    assert_eq!(v["full_rank"], Value::Bool(true));
}

#[test]
fn module_commands() {
    let base = ["--f", "2*H", "--eta", "1", "--g", "Omega"];
    let mut act = vec!["module", "act", "--gen", "F", "--vec", r#"{"terms":[{"F":0,"H":0,"coeff":"1"}]}"#];
    act.extend(base);
    let v = json(&act);
    assert_eq!(v["result"]["text"], "-H^2*w - H*w");
    let mut wv = vec!["module", "whittaker-vectors", "--J", "6"];
    wv.extend(base);
    assert_eq!(json(&wv)["dimension"], 1);
    let v = json(&["module", "annihilator", "--f", "1", "--eta", "2", "--g", "(Omega-1)*(Omega+1)"]);
    assert_eq!(v["annihilator"]["coeffs"], serde_json::json!(["-1", "0", "1"]));
}

#[test]
fn truncation_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_smithalg"))
        .args(["module", "whittaker-vectors", "--f", "1", "--eta", "1", "--g", "Omega", "--format", "json"])
        .env("SMITHALG_TRUNCATION", "3")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["J"], 3);
}

#[test]
fn structure_commands() {
    let g = ["--f", "2*H", "--eta", "1", "--g", "(Omega-1)^2*(Omega-2)"];
    let with = |sub: &'static str| {
        let mut a = vec!["structure", sub];
        a.extend(g);
        a
    };
    assert_eq!(json(&with("lattice"))["divisors"].as_array().unwrap().len(), 6);
    assert_eq!(json(&with("series"))["series"].as_array().unwrap().len(), 3);
    assert_eq!(json(&with("decompose"))["idempotents"].as_array().unwrap().len(), 2);
    assert_eq!(json(&with("certify"))["verdict"], "reducible");
    assert_eq!(run(&with("maximal")).status.code(), Some(1));
    let v = json(&["structure", "certify", "--f", "0", "--eta", "1", "--g", "Omega-5/2"]);
    assert_eq!(v["verdict"], "irreducible");
    assert_eq!(v["evidence"]["whittaker_dimension"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["casimir"]).status.code(), Some(1));
    assert_eq!(run(&["casimir", "--f", "2H"]).status.code(), Some(1));
    assert_eq!(run(&["casimir", "--f", "H", "--unknown", "1"]).status.code(), Some(1));
    assert_eq!(run(&["module", "build", "--f", "H", "--eta", "0", "--g", "Omega"]).status.code(), Some(1));
    assert_eq!(run(&["module", "build", "--f", "H", "--eta", "1", "--g", "2*Omega"]).status.code(), Some(1));
}

#[test]
fn singular_catalog_rejected() {
    let mut records = default_catalog();
    records.truncate(3);
    records[1].eta_e = "0".into();
    let path = write_catalog("singular", &records);
    let out = run(&["verify", "--catalog", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("etaE"));
}

#[test]
fn corrupted_antiderivative_fails_centrality() {
    let mut records = default_catalog();
    records.truncate(9);
    // f = 1 scenarios start at index 3; u = 2H is right, u = H^2 is not
    records[3].u = Some(PolyJson { coeffs: vec!["0".into(), "0".into(), "1".into()] });
    let path = write_catalog("mutant", &records);
    let out = run(&["verify", "--catalog", &path, "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let central = v["tags"].as_array().unwrap().iter().find(|t| t["tag"] == "casimir-central").unwrap();
    assert_eq!(central["passed"], Value::Bool(false));
    assert!(central["counterexample"].as_str().unwrap().contains("[Omega, "));
}
