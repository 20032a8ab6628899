use std::f64::consts::TAU;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn slicereg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slicereg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is a JSON report")
}

fn write_config(dir: &Path, cfg: &Value) -> String {
    let path = dir.join("job.json");
    std::fs::write(&path, serde_json::to_vec_pretty(cfg).unwrap()).unwrap();
    path.to_str().unwrap().to_owned()
}

fn quat(v: &Value) -> [f64; 4] {
    let a = v.as_array().unwrap();
    [0, 1, 2, 3].map(|k| a[k].as_f64().unwrap())
}

#[test]
fn intertwine_sweep_passes_and_is_deterministic() {
    let args = [
        "verify-intertwine",
        "--n-max",
        "4",
        "--samples",
        "25",
        "--seed",
        "9",
        "--format",
        "csv",
    ];
    let a = slicereg(&args);
    let b = slicereg(&args);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("N,sample,residual\n"));
    assert_eq!(text.lines().count(), 1 + 4 * 25);
    let other = slicereg(&[
        "verify-intertwine",
        "--n-max",
        "4",
        "--samples",
        "25",
        "--seed",
        "10",
        "--format",
        "csv",
    ]);
    assert_ne!(other.stdout, text.as_bytes());
}

#[test]
fn broken_unit_purity_is_an_invariant_violation() {
    let o = slicereg(&[
        "verify-intertwine",
        "--n-max",
        "2",
        "--samples",
        "3",
        "--perturb",
        "1e-3",
    ]);
    assert_eq!(code(&o), 2);
    assert!(
        stderr(&o).contains("imaginary unit purity"),
        "{}",
        stderr(&o)
    );
    let o = slicereg(&[
        "verify-conjugation",
        "--n-max",
        "2",
        "--samples",
        "3",
        "--perturb",
        "1e-3",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn tolerance_failure_is_an_invariant_violation_with_report() {
    let o = slicereg(&[
        "verify-conjugation",
        "--n-max",
        "3",
        "--samples",
        "5",
        "--tol",
        "0",
    ]);
    assert_eq!(code(&o), 2);
    let r = report(&o);
    assert_eq!(r["passed"], json!(false));
    assert!(r["max_residual"].as_f64().unwrap() > 0.0);
}

#[test]
fn configuration_errors_exit_3() {
    for args in [
        vec!["verify-intertwine", "--n-max", "13"],
        vec!["verify-intertwine", "--n-min", "3", "--n-max", "2"],
        vec!["repr-eval", "--tol", "-1"],
        vec!["counterexample", "--probe-center", "3"],
        vec!["no-such-command"],
        vec!["topology", "--example", "custom"],
    ] {
        let o = slicereg(&args);
        assert_eq!(code(&o), 3, "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty(), "{args:?} computed before failing");
    }
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &json!({"command": "extend"}));
    assert_eq!(code(&slicereg(&["repr-eval", "--config", &cfg])), 3);
    let cfg = write_config(dir.path(), &json!({"sede": 1}));
    assert_eq!(code(&slicereg(&["repr-eval", "--config", &cfg])), 3);
}

#[test]
fn config_file_is_echoed_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        &json!({"command": "repr-eval", "seed": 5, "n": 1, "k_samples": 7, "degree": 3}),
    );
    let o = slicereg(&["repr-eval", "--config", &cfg, "--seed", "6"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(&o);
    assert_eq!(r["config"]["seed"], json!(6));
    assert_eq!(r["config"]["k_samples"], json!(7));
    assert_eq!(r["rows"].as_array().unwrap().len(), 7 + 2);
    // the echoed config reproduces the run
    let again = write_config(dir.path(), &r["config"]);
    let o2 = slicereg(&["repr-eval", "--config", &again]);
    assert_eq!(o.stdout, o2.stdout);
}

#[test]
fn repr_eval_matches_the_oracle() {
    let o = slicereg(&["repr-eval", "--n", "2", "--k-samples", "100", "--seed", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(&o);
    assert!(r["max_error"].as_f64().unwrap() <= 1e-9);
    for row in r["rows"].as_array().unwrap() {
        if row["kind"] == "row" {
            assert!(row["error"].as_f64().unwrap() <= 1e-10);
        }
    }
    let o = slicereg(&["repr-eval", "--n", "1", "--seed", "4"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(report(&o)["max_classical_difference"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn repr_eval_reports_the_failing_rank_level() {
    let dir = tempfile::tempdir().unwrap();
    let i = [1.0, 0.0, 0.0];
    let cfg = write_config(dir.path(), &json!({"j": {"N": 1, "rows": [[i], [i]]}}));
    let o = slicereg(&["repr-eval", "--config", &cfg]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("level 1"), "{}", stderr(&o));
}

#[test]
fn extend_on_the_first_slice_returns_its_value() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        &json!({
            "i1": [0.0, 0.6, 0.8], "i2": [1.0, 0.0, 0.0], "target": [0.0, 0.6, 0.8],
            "values": [[1.5, -2.0, 0.25, 3.0], [0.0, 1.0, 1.0, 1.0]],
        }),
    );
    let o = slicereg(&["extend", "--config", &cfg]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(quat(&report(&o)["value"]), [1.5, -2.0, 0.25, 3.0]);

    let o = slicereg(&["extend", "--seed", "2", "--point", "-0.4,0.9"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(&o);
    assert!(r["error"].as_f64().unwrap() <= 1e-10);
    let ratio = r["cr_residual"]["ratio"].as_f64().unwrap();
    assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn continue_path_log_half_turn() {
    let o = slicereg(&["continue-path"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(&o);
    let v = quat(&r["value"]);
    assert!(v[0].abs() < 1e-12 && (v[1] - std::f64::consts::PI).abs() < 1e-10);
}

#[test]
fn continue_path_polynomial_across_slices() {
    let dir = tempfile::tempdir().unwrap();
    // p(w) = w² + (1 + k), continued through ℂ_i and into ℂ_j
    let cfg = write_config(
        dir.path(),
        &json!({
            "germ": {"kind": "polynomial", "coeffs": [[1.0, 0.0, 0.0, 1.0], [0.0, 0.0, 0.0, 0.0], [1.0, 0.0, 0.0, 0.0]]},
            "path": [
                {"kind": "arc", "center": [0.5, 0.0], "radius": 0.5, "start": std::f64::consts::PI, "sweep": -std::f64::consts::PI},
                {"kind": "segment", "from": [1.0, 0.0], "to": [0.5, 0.5]},
            ],
            "units": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
        }),
    );
    let o = slicereg(&["continue-path", "--config", &cfg]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(&o);
    assert_eq!(quat(&r["endpoint"]), [0.5, 0.0, 0.5, 0.0]);
    // (0.5 + 0.5j)² = 0.5j
    let want = [1.0, 0.0, 0.5, 1.0];
    let got = quat(&r["value"]);
    for k in 0..4 {
        assert!((got[k] - want[k]).abs() < 1e-12, "{got:?}");
    }
}

#[test]
fn counterexample_default_grid_certifies_the_obstruction() {
    let dir = tempfile::tempdir().unwrap();
    let sweep = dir.path().join("sweep.csv");
    let o = slicereg(&["counterexample", "--sweep-csv", sweep.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(&o);
    assert!((r["monodromy_magnitude"].as_f64().unwrap() - TAU).abs() < 1e-4);
    assert_eq!(r["probe_circle"].as_array().unwrap().len(), 256);
    assert!(r["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .all(|w| !w.is_null()));
    let csv = std::fs::read_to_string(&sweep).unwrap();
    assert!(csv.starts_with("unit_x,unit_y,unit_z,t,covered_points\n"));
    assert_eq!(csv.lines().count(), 1 + 512);
}

#[test]
fn counterexample_without_enclosed_branch_point_flags_no_obstruction() {
    let o = slicereg(&[
        "counterexample",
        "--probe-center",
        "3,2",
        "--probe-points",
        "32",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("no obstruction"), "{}", stderr(&o));
    assert!(report(&o)["monodromy_magnitude"].as_f64().unwrap() < 1e-10);
}

#[test]
fn counterexample_coarse_grid_reports_gaps() {
    let o = slicereg(&["counterexample", "--witness-units", "8", "--scheme", "grid"]);
    let r = report(&o);
    let gaps = r["uncovered"].as_array().unwrap().len();
    if gaps > 0 {
        assert_eq!(code(&o), 2);
        assert!(stderr(&o).contains("coverage gap"));
    } else {
        assert_eq!(code(&o), 0);
    }
    let nulls = r["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|w| w.is_null())
        .count();
    assert_eq!(nulls, gaps);
}

#[test]
fn topology_examples() {
    let o = slicereg(&["topology", "--samples", "40", "--grid", "100"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(&o);
    assert_eq!(r["slice_open"], json!(true));
    assert!(r["ball_escapes"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| !e["unit"].is_null()));

    let o = slicereg(&["topology", "--example", "ball", "--samples", "32"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(report(&o)["partition"], json!(true));

    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        &json!({"custom": [
            {"unit": [1.0, 0.0, 0.0], "center": [0.0, 1.0], "radius": 0.8},
            {"unit": [0.0, 0.0, 1.0], "center": [1.5, -0.5], "radius": 0.6},
        ], "samples": 64}),
    );
    let o = slicereg(&["topology", "--example", "custom", "--config", &cfg]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(&o);
    assert_eq!(r["idempotent"], json!(true));
    assert_eq!(r["axially_symmetric"], json!(true));
}

#[test]
fn out_flag_writes_the_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = slicereg(&[
        "topology",
        "--example",
        "ball",
        "--samples",
        "8",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.starts_with("unit_x,unit_y,unit_z,dist_to_slice,components,touches_real\n"));
    assert_eq!(text.lines().count(), 1 + 9);
}
