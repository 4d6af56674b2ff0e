use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_catext")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("bad JSON ({e}): {out}\nstderr: {err}"));
    (code, v)
}

fn failed_checks(v: &Value) -> Vec<&Value> {
    v["findings"].as_array().unwrap().iter().filter(|f| f["outcome"] == "fail").collect()
}

#[test]
fn valid_crossed_module_passes() {
    let (code, v) = run_json(&["check-2group", "--input", &fixture("crossed_z2.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
}

#[test]
fn peiffer_failure_names_pairs() {
    let (code, v) = run_json(&["check-2group", "--input", &fixture("crossed_peiffer_fails.json")]);
    assert_eq!(code, 1);
    let fails = failed_checks(&v);
    assert!(!fails.is_empty());
    assert!(fails.iter().all(|f| f["value"] == "crossed_module" && f["witness"].as_array().unwrap().len() == 2));
}

#[test]
fn non_cocycle_theta_is_refused_with_quadruple() {
    let (code, v) = run_json(&["build-extension", "--cocycle", &fixture("bad_theta_z3.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "refused");
    let w = &failed_checks(&v)[0]["witness"];
    assert_eq!(w.as_array().unwrap().len(), 4);
}

#[test]
fn emitted_extension_verifies_and_mutation_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("total.json");
    let p = path.to_string_lossy();
    let (code, v) = run_json(&["build-extension", "--cocycle", &fixture("cocycle_z2_z4.json"), "--emit", &p]);
    assert_eq!((code, v["status"].as_str()), (0, Some("pass")));
    let (code, _) = run_json(&["check-2group", "--input", &p]);
    assert_eq!(code, 0);

    let mut tables: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let entry = &mut tables["tensor_objects"][5];
    *entry = Value::from((entry.as_u64().unwrap() + 1) % 8);
    std::fs::write(&path, tables.to_string()).unwrap();
    let (code, v) = run_json(&["check-2group", "--input", &p]);
    assert_eq!(code, 1);
    assert!(!failed_checks(&v).is_empty());
}

#[test]
fn band_matches_twisted_product() {
    let (code, v) = run_json(&["band", "--extension", &fixture("band_f2.json")]);
    assert_eq!(code, 0);
    let band_order = v["findings"].as_array().unwrap().iter().find(|f| f["check"] == "band_order").unwrap();
    assert_eq!(band_order["value"], 4);
}

#[test]
fn heisenberg_pipeline_report() {
    let (code, v) = run_json(&["pipeline", "heisenberg", "--fd-step", "1e-3"]);
    assert_eq!(code, 0);
    assert!(v["value"].as_f64().unwrap() <= 1e-4);
}

#[test]
fn numeric_reports_carry_parameters() {
    let (r2, su2) = (fixture("omega_r2.json"), fixture("omega_su2.json"));
    let commands: Vec<Vec<&str>> = vec![
        vec!["integrate", "--group", "r2", "--omega", &r2, "--pair", "{\"g\":[1,0],\"h\":[0,1]}"],
        vec!["defect", "--group", "su2", "--omega", &su2, "--triple", "{\"g\":[0.1,0,0],\"h\":[0,0.2,0],\"k\":[0,0,0.3]}"],
        vec!["derive-lf", "--group", "r2", "--omega", &r2, "--pair", "{\"x\":[1,0],\"y\":[0,1]}"],
        vec!["derive-bracket", "--group", "heisenberg"],
        vec!["covering", "--samples", "20", "--grid", "6"],
        vec!["pipeline", "heisenberg"],
        vec!["exp-check", "--hom", "su2-into-u2", "--samples", "10"],
    ];
    for args in commands {
        let (code, v) = run_json(&args);
        assert_eq!(code, 0, "{args:?}: {v}");
        for key in ["quad_order", "fd_step", "tolerance_estimate", "value"] {
            assert!(!v[key].is_null(), "{args:?} lacks {key}");
        }
    }
}

#[test]
fn integrate_half_omega() {
    let (_, v) = run_json(&["integrate", "--group", "r2", "--omega", &fixture("omega_r2.json"), "--pair", &fixture("pair_r2.json"), "--quad-order", "2"]);
    assert!((v["value"][0].as_f64().unwrap() - 0.5).abs() < 1e-10);
    assert_eq!(v["quad_order"], 2);
}

#[test]
fn malformed_json_reports_location() {
    let (code, v) = run_json(&["integrate", "--group", "r2", "--omega", &fixture("omega_r2.json"), "--pair", &fixture("malformed.json")]);
    assert_eq!(code, 2);
    assert!(v["reason"].as_str().unwrap().contains("line 2 column"), "{v}");
}

#[test]
fn invalid_omega_is_refused() {
    // Every skew form on a 3-dimensional algebra is a cocycle, so break skewness instead.
    let bad = "[[[0,1,0],[0,0,0],[0,0,0]]]";
    let (code, v) = run_json(&["integrate", "--group", "su2", "--omega", bad, "--pair", "{\"g\":[0.1,0,0],\"h\":[0,0.1,0]}"]);
    assert_eq!(code, 2, "{v}");
    let (code, _) = run_json(&["integrate", "--group", "so3", "--omega", bad, "--pair", "{}"]);
    assert_eq!(code, 2);
}

#[test]
fn unknown_verbs_and_flags_are_rejected() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["covering", "--bogus", "1"]).0, 2);
    assert_eq!(run(&["pipeline", "heisenberg", "--format", "xml"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["covering", "--samples", "50", "--grid", "8", "--seed", "3"];
    assert_eq!(run(&args).1, run(&args).1);
    let args = ["cone-h2", "--group", "{\"type\":\"cyclic\",\"n\":2}", "--tau", "{\"source\":{\"rank\":0,\"torsion\":[2]},\"target\":{\"rank\":0,\"torsion\":[2]},\"matrix\":[[1]]}"];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(first, run(&args).1);
}

#[test]
fn text_format_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    let (code, out, _) = run(&["verify-cocycle", "--input", &fixture("cocycle_z2_z4.json"), "--format", "text", "--output", &path.to_string_lossy()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("status: pass"));
}

#[test]
fn cohomology_of_cyclic_group() {
    let (code, v) = run_json(&["cohomology", "--group", "{\"type\":\"cyclic\",\"n\":3}", "--coeff", "{\"rank\":1,\"torsion\":[]}", "--degree", "2"]);
    assert_eq!(code, 0);
    let iso = v["findings"].as_array().unwrap().iter().find(|f| f["check"] == "cohomology_group").unwrap();
    assert_eq!(iso["value"], serde_json::json!({"rank": 0, "torsion": [3]}));
}
