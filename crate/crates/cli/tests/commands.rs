use std::process::{Command, Output};

use serde_json::Value;

fn chtube(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chtube")).args(args).env_remove("CHTUBE_SEED").output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = chtube(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), v)
}

fn config(name: &str) -> String {
    format!("{}/configs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn close(v: &Value, want: f64, tol: f64) {
    let got = v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"));
    assert!((got - want).abs() <= tol * want.abs().max(1.0), "{got} vs {want}");
}

#[test]
fn tube_width_chi_and_area() {
    let (code, r) = json(&["tube-width", "--chi", "-2"]);
    assert_eq!(code, 0);
    close(&r["outputs"]["collar_width"], 0.25 * (1.0 / (2.0 * std::f64::consts::PI)).ln_1p(), 1e-15);
    close(&r["outputs"]["collar_width"], 0.0369228, 1e-6);
    assert_eq!(r["units"]["collar_width"], "hyperbolic length (curvature -1 normalization)");
    let (code, r) = json(&["tube-width", "--area", "2"]);
    assert_eq!(code, 0);
    close(&r["outputs"]["collar_width"], 0.25 * 2f64.ln(), 1e-15);
    assert!(r["outputs"]["two_surface_width"].is_number());
}

#[test]
fn tube_width_usage_errors() {
    assert_eq!(chtube(&["tube-width", "--chi", "1"]).status.code(), Some(2));
    assert_eq!(chtube(&["tube-width", "--chi", "-2", "--area", "3"]).status.code(), Some(2));
    assert_eq!(chtube(&["tube-width"]).status.code(), Some(2));
    assert_eq!(chtube(&["tube-width", "--area", "-1"]).status.code(), Some(2));
}

#[test]
fn wrapped_calculators() {
    let (_, r) = json(&["volume-bound", "--n", "1", "--chi", "-2"]);
    close(&r["outputs"]["volume_lower_bound"], 1.3456127297721707e-2, 1e-12);
    let (_, r) = json(&["eigenvalue-bound", "--vol", "100", "--chi", "-2"]);
    assert!(r["outputs"]["eigenvalue_lower_bound"].as_f64().unwrap() > 0.0);
    let (_, r) = json(&["tube-bounds", "--chi", "-2"]);
    close(&r["outputs"]["upper"], 2.0180906353346066, 1e-12);
    assert_eq!(chtube(&["volume-bound", "--n", "0", "--chi", "-2"]).status.code(), Some(2));
    assert_eq!(chtube(&["eigenvalue-bound", "--vol", "0.001", "--chi", "-2"]).status.code(), Some(2));
    assert_eq!(chtube(&["tube-bounds", "--chi", "-3"]).status.code(), Some(2));
}

#[test]
fn wedge_volume_with_monte_carlo() {
    let (code, r) = json(&[
        "wedge-volume",
        "--s",
        "1",
        "--eps",
        "1",
        "--psi",
        "3.141592653589793",
        "--mc",
        "200000",
        "--seed",
        "5",
    ]);
    assert_eq!(code, 0);
    let o = &r["outputs"];
    let exact = o["wedge_volume"].as_f64().unwrap();
    let (est, se) = (o["mc_estimate"].as_f64().unwrap(), o["mc_std_error"].as_f64().unwrap());
    assert!((est - exact).abs() < 4.0 * se, "{est} {se} {exact}");
    assert_eq!(r["seed"], 5);
    assert_eq!(chtube(&["wedge-volume", "--s", "1", "--eps", "1", "--psi", "7"]).status.code(), Some(2));
}

#[test]
fn seed_comes_from_environment_unless_flagged() {
    let out = Command::new(env!("CARGO_BIN_EXE_chtube"))
        .args(["tube-bounds", "--chi", "-2"])
        .env("CHTUBE_SEED", "17")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["seed"], 17);
    let out = Command::new(env!("CARGO_BIN_EXE_chtube"))
        .args(["tube-bounds", "--chi", "-2", "--seed", "3"])
        .env("CHTUBE_SEED", "17")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["seed"], 3);
}

#[test]
fn combine_optimal_pair_certifies() {
    let (code, r) = json(&["combine", &config("genus2_pair.toml"), "--samples", "2000"]);
    assert_eq!(code, 0, "{r}");
    let o = &r["outputs"];
    assert_eq!(o["all_passed"], true);
    close(&o["margin"], 0.1, 1e-8);
    assert_eq!(o["pingpong_samples_passed"], o["pingpong_samples_total"]);
    assert_eq!(o["pingpong_samples_total"], 2000 * 16);
    close(&o["min_distance_over_words"], o["line_distance"].as_f64().unwrap(), 1e-9);
}

#[test]
fn combine_below_threshold_reports_failures() {
    let (code, r) = json(&["combine", &config("below_threshold.toml"), "--samples", "4000", "--depth", "3"]);
    assert_eq!(code, 3);
    assert_eq!(r["status"], "failed");
    let o = &r["outputs"];
    assert_eq!(o["precondition_satisfied"], false);
    assert!(o["margin"].as_f64().unwrap() < 0.0);
    assert!(o["pingpong_samples_passed"].as_u64() < o["pingpong_samples_total"].as_u64());
    assert!(!o["pingpong_failures"].as_array().unwrap().is_empty());
    assert!(o["error"].as_str().unwrap().contains("margin"));
}

#[test]
fn combine_other_constructions() {
    for c in ["schottky_pair.toml", "explicit_pair.toml"] {
        let (code, r) = json(&["combine", &config(c), "--samples", "1000", "--depth", "3"]);
        assert_eq!(code, 0, "{c}: {r}");
    }
}

#[test]
fn combine_malformed_config_names_key() {
    let out = chtube(&["combine", &config("malformed.toml")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("group1.gneus"), "{err}");
    let out = chtube(&["combine", &config("does_not_exist.toml")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites_and_unknown_suite() {
    for suite in ["metric", "projection", "tubes"] {
        let (code, r) = json(&["verify", "--suite", suite, "--seed", "42"]);
        assert_eq!(code, 0, "{suite}: {}", r["outputs"]["failed_checks"]);
        assert!(!r["provenance"].as_array().unwrap().is_empty());
    }
    let out = chtube(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

/// Disjointness of `L2` and `g L2` for every non-trivial holonomy fails on
/// the sampled range; nothing else in the suite does.
#[test]
fn verify_holonomy_fails_only_on_disjointness() {
    let (code, r) = json(&["verify", "--suite", "holonomy", "--seed", "42"]);
    assert_eq!(code, 3);
    let failed: Vec<&str> =
        r["outputs"]["failed_checks"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(failed, ["holonomy.displacement.nontrivial_disjoint"]);
    let provenance = r["provenance"].as_array().unwrap();
    assert!(provenance.iter().any(|p| p.as_str().unwrap().starts_with("N(L2, g L2) = ")));
}

#[test]
fn text_and_csv_formats() {
    let out = chtube(&["tube-width", "--chi", "-2", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("tube-width (Ok)") && text.contains("collar_width"));
    let out = chtube(&["tube-width", "--chi", "-2", "--format", "csv"]);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert!(rows.iter().any(|r| &r[0] == "outputs.collar_width"));
    assert!(rows.iter().any(|r| &r[0] == "seed" && &r[1] == "0"));
}

#[test]
fn verify_is_identical_across_runs_and_threads() {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_chtube"))
            .args(["verify", "--suite", "groups", "--seed", "42"])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap();
        let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("wall_clock_seconds");
        serde_json::to_string(&v).unwrap()
    };
    let first = run("1");
    assert_eq!(first, run("1"));
    assert_eq!(first, run("4"));
}
