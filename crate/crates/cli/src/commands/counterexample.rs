//! `counterexample`: probe-circle coverage, log monodromy and sampled openness.

use std::f64::consts::PI;

use serde_json::json;
use slicereg::continuation::{counterexample_report, CounterexampleConfig};
use slicereg::quaternion::embed;
use slicereg::{ContinuationOptions, ImaginaryUnit};

use crate::codec::{complex, quat_json, unit_json};
use crate::config::JobConfig;
use crate::error::{CliError, CliResult};
use crate::report::{cell, write_csv_file, Report};

pub fn run(cfg: &JobConfig) -> CliResult<Report> {
    let base = ImaginaryUnit::I;
    let lib_cfg = CounterexampleConfig {
        unit: base,
        probe_center: complex(cfg.probe_center),
        probe_radius: cfg.probe_radius,
        probe_points: cfg.probe_points,
        witness_units: cfg.witness_units,
        scheme: cfg.scheme.resolve(cfg.seed),
        openness_units: cfg.openness_units,
        openness_grid: cfg.openness_grid,
        sweep: cfg.sweep_csv.is_some(),
        continuation: ContinuationOptions::default(),
    };
    let rep = counterexample_report(&lib_cfg)?;

    if let Some(path) = &cfg.sweep_csv {
        let rows: Vec<Vec<String>> = rep
            .sweep
            .iter()
            .map(|r| {
                let u = unit_json(r.unit);
                vec![
                    cell(u[0]),
                    cell(u[1]),
                    cell(u[2]),
                    cell(r.t),
                    r.covered_points.to_string(),
                ]
            })
            .collect();
        write_csv_file(
            path,
            &["unit_x", "unit_y", "unit_z", "t", "covered_points"],
            &rows,
        )?;
    }

    let tol = cfg.tol();
    let magnitude = rep.monodromy.norm();
    let uncovered = rep.uncovered();
    let obstruction = (magnitude - 2.0 * PI).abs() <= tol;
    let failure = if !uncovered.is_empty() {
        Some(CliError::Invariant(format!(
            "{} of {} probe points have no witness unit (first at {}{:+}i); coverage gap",
            uncovered.len(),
            rep.witnesses.len(),
            uncovered[0].re,
            uncovered[0].im
        )))
    } else if !obstruction {
        Some(CliError::Invariant(format!(
            "no obstruction: |monodromy| = {magnitude} is not within {tol:e} of 2π"
        )))
    } else {
        None
    };

    let json = json!({
        "command": "counterexample",
        "config": cfg,
        "probe_circle": rep.probe_circle.iter().map(|p| quat_json(embed(*p, base))).collect::<Vec<_>>(),
        "witnesses": rep.witnesses.iter().map(|w| w.unit.map(unit_json)).collect::<Vec<_>>(),
        "uncovered": uncovered.iter().map(|p| quat_json(embed(*p, base))).collect::<Vec<_>>(),
        "monodromy": quat_json(rep.monodromy),
        "monodromy_magnitude": magnitude,
        "openness": rep.openness,
        "openness_ok": rep.openness_ok(),
        "obstruction": obstruction,
        "tol": tol,
        "passed": failure.is_none(),
    });
    let rows = rep
        .witnesses
        .iter()
        .enumerate()
        .map(|(k, w)| {
            let u = w.unit.map(unit_json);
            let opt = |i: usize| u.map(|u| cell(u[i])).unwrap_or_default();
            vec![
                k.to_string(),
                cell(w.point.re),
                cell(w.point.im),
                opt(0),
                opt(1),
                opt(2),
                cell(w.t),
                cell(w.clearance),
            ]
        })
        .collect();
    Ok(Report {
        json,
        header: vec![
            "index",
            "x",
            "y",
            "unit_x",
            "unit_y",
            "unit_z",
            "t",
            "clearance",
        ],
        rows,
        failure,
    })
}
