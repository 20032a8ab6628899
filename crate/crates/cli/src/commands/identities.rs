//! `verify-intertwine` and `verify-conjugation`.

use serde_json::json;
use slicereg::slice_calculus::{full_slice_rank, verify_conjugation, verify_intertwine};
use slicereg::{Error, ImaginaryUnit, Quaternion, UnitTuple};

use crate::config::JobConfig;
use crate::error::{CliError, CliResult};
use crate::report::{cell, verdict, Report};
use crate::sampling::Sampler;

/// Revalidates a sampled unit after adding `shift` to its real part.
fn perturbed(u: ImaginaryUnit, shift: f64) -> CliResult<ImaginaryUnit> {
    ImaginaryUnit::try_from_quaternion(u.as_quaternion() + Quaternion::real(shift)).map_err(|e| {
        match e {
            Error::NotUnit { .. } => CliError::Invariant(format!("imaginary unit purity: {e}")),
            other => other.into(),
        }
    })
}

struct Row {
    n: usize,
    sample: usize,
    residual: f64,
}

fn finish(cfg: &JobConfig, name: &str, rows: Vec<Row>, extra: serde_json::Value) -> Report {
    let tol = cfg.tol();
    let worst = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    let failing: Vec<_> = rows.iter().filter(|r| !(r.residual <= tol)).collect();
    let failure = verdict(failing.is_empty(), || {
        let r = failing[0];
        format!(
            "{name}: {} of {} residuals exceed {tol:e} (first at N={}, sample {}: {:e})",
            failing.len(),
            rows.len(),
            r.n,
            r.sample,
            r.residual
        )
    });
    let json = json!({
        "command": name,
        "config": cfg,
        "tol": tol,
        "max_residual": worst,
        "passed": failure.is_none(),
        "extra": extra,
        "rows": rows.iter().map(|r| json!({"N": r.n, "sample": r.sample, "residual": r.residual})).collect::<Vec<_>>(),
    });
    Report {
        json,
        header: vec!["N", "sample", "residual"],
        rows: rows
            .iter()
            .map(|r| vec![r.n.to_string(), r.sample.to_string(), cell(r.residual)])
            .collect(),
        failure,
    }
}

pub fn intertwine(cfg: &JobConfig) -> CliResult<Report> {
    let mut s = Sampler::new(cfg.seed);
    let mut rows = Vec::new();
    for n in cfg.n_min..=cfg.n_max {
        for sample in 0..cfg.samples {
            let mut units = s.units(n);
            if rows.is_empty() {
                units[0] = perturbed(units[0], cfg.perturb)?;
            }
            let residual = verify_intertwine(&UnitTuple::new(units)?)?;
            rows.push(Row {
                n,
                sample,
                residual,
            });
        }
    }
    Ok(finish(cfg, "verify-intertwine", rows, json!(null)))
}

pub fn conjugation(cfg: &JobConfig) -> CliResult<Report> {
    let mut s = Sampler::new(cfg.seed);
    let mut rows = Vec::new();
    let mut rejected = 0usize;
    for n in cfg.n_min..=cfg.n_max {
        for sample in 0..cfg.samples {
            let j = loop {
                let j = s.unit_matrix(n)?;
                if full_slice_rank(&j)?.full() {
                    break j;
                }
                rejected += 1;
            };
            let j = if rows.is_empty() && cfg.perturb != 0.0 {
                let mut units: Vec<Vec<ImaginaryUnit>> =
                    j.rows().iter().map(|r| r.units().to_vec()).collect();
                units[0][0] = perturbed(units[0][0], cfg.perturb)?;
                slicereg::UnitMatrix::from_units(n, units)?
            } else {
                j
            };
            let residual = verify_conjugation(&j)?;
            rows.push(Row {
                n,
                sample,
                residual,
            });
        }
    }
    Ok(finish(
        cfg,
        "verify-conjugation",
        rows,
        json!({ "rejected_rank_deficient": rejected }),
    ))
}
