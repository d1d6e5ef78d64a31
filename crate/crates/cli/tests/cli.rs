use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use superopt_cli::ProblemSpec;
use superopt_core::{linalg, MatFun};

fn fixture(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "fixtures", &format!("{name}.json")].iter().collect()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superopt")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("superopt-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn max_coeff(v: &Value) -> f64 {
    v.as_array()
        .unwrap()
        .iter()
        .flat_map(|c| ["re", "im"].map(|p| c[p].clone()))
        .flat_map(|m| m.as_array().unwrap().clone())
        .flat_map(|r| r.as_array().unwrap().clone())
        .map(|x| x.as_f64().unwrap().abs())
        .fold(0.0, f64::max)
}

#[test]
fn superopt_diagonal() {
    let out = run(&["superopt", fixture("diag").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    let t: Vec<f64> = r["superoptimal_values"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert!((t[0] - 1.0).abs() < 1e-10 && (t[1] - 0.5).abs() < 1e-10, "{t:?}");
    assert!(max_coeff(&r["F_coeffs"]) < 1e-9);
    assert_eq!(r["blocks"].as_array().unwrap().len(), 2);
    assert_eq!(r["multiplicities"], serde_json::json!([1, 2]));
    assert!(r["timings_ms"].as_object().unwrap().is_empty());
}

#[test]
fn wh_indices_mixed() {
    let out = run(&["wh-indices", fixture("diag_mixed").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["indices"], serde_json::json!([-1, 2]));
}

#[test]
fn corrupted_fixture_fails_verification() {
    let out = run(&["verify", fixture("corrupted").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("balanced supplied V0"));
    let r = report(&out);
    let failing: Vec<_> = r["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert!(!failing.is_empty());
}

#[test]
fn balanced_fixture_verifies() {
    let out = run(&["verify", fixture("balanced").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn invalid_input_exit_code() {
    let d = scratch("invalid");
    let p = d.join("bad.json");
    std::fs::write(&p, "{\"m\": 2, \"n\": 2, \"coeffs\": [{\"k\": -1, \"re\": [[1.0]]}]}").unwrap();
    let out = run(&["superopt", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::write(&p, "{\"m\": 1,\n \"n\": 1,\n \"coeffs\": [").unwrap();
    let out = run(&["superopt", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = run(&["superopt", d.join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    // Not unitary-valued.
    let out = run(&["wh-indices", fixture("aak").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn numerical_exit_code() {
    // Poles close to the circle: the factors do not settle within the band cap.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let phi = MatFun::from_coeffs(
        3,
        3,
        vec![(-1, linalg::random_gaussian(3, 3, &mut rng)), (-2, linalg::random_gaussian(3, 3, &mut rng))],
    )
    .unwrap();
    let d = scratch("numerical");
    let p = d.join("hard.json");
    std::fs::write(&p, ProblemSpec::from_matfun(&phi).to_json()).unwrap();
    let out = run(&["superopt", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn reports_are_deterministic() {
    let f = fixture("golden");
    let a = run(&["factorize", f.to_str().unwrap(), "--seed", "5"]);
    let b = run(&["factorize", f.to_str().unwrap(), "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_file_and_timings() {
    let d = scratch("report");
    let out_path = d.join("out.json");
    let out = run(&["nehari", fixture("aak").to_str().unwrap(), "--report", out_path.to_str().unwrap(), "--timings"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let s0 = r["superoptimal_values"][0].as_f64().unwrap();
    assert!((s0 - (1.0 + 2f64.sqrt()) / 2.0).abs() < 1e-12);
    assert!(r["timings_ms"]["total"].as_f64().is_some());
    assert!(r["error_coeffs"].is_array());
}

fn copy_fixtures(dir: &Path, names: &[&str]) {
    for n in names {
        std::fs::copy(fixture(n), dir.join(format!("{n}.json"))).unwrap();
    }
}

#[test]
fn batch_mode() {
    let d = scratch("batch");
    copy_fixtures(&d, &["zbar", "diag", "golden", "corrupted"]);
    let out_dir = d.join("reports");
    let out = run(&["verify", "--batch", d.to_str().unwrap(), "--report", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    for n in ["zbar", "diag", "golden", "corrupted"] {
        let r: Value = serde_json::from_str(&std::fs::read_to_string(out_dir.join(format!("{n}.report.json"))).unwrap()).unwrap();
        assert_eq!(r["command"], "verify");
    }
    std::fs::remove_file(d.join("corrupted.json")).unwrap();
    let out = run(&["superopt", "--batch", d.to_str().unwrap(), "--report", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn classify_reports_criteria() {
    let out = run(&["classify", fixture("zbar_i2").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["classification"]["very_badly_approximable"], true);
    assert_eq!(r["classification"]["dense_range"], true);
    let out = run(&["classify", fixture("diag_mixed").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["classification"]["very_badly_approximable"], false);
    assert_eq!(r["classification"]["indices_negative"], false);
}
