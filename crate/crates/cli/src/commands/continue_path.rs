//! `continue-path`: germ continuation along an N-part path, with subdivision
//! and (for one part) reversal checks.

use serde_json::json;
use slicereg::continuation::{continue_along, continue_npart};
use slicereg::{
    ContinuationOptions, HolomorphicGerm, ImaginaryUnit, NPartPath, Quaternion, UnitTuple,
};

use crate::codec::{npart, quat_json, unit, GermJson, PathJson};
use crate::config::JobConfig;
use crate::error::{CliError, CliResult};
use crate::report::{cell, verdict, Report};

fn default_germ() -> GermJson {
    GermJson::Log {
        center: [1.0, 0.0],
        branch: [0.0, 0.0],
    }
}

fn default_path() -> Vec<PathJson> {
    vec![PathJson::Arc {
        center: [0.0, 0.0],
        radius: 1.0,
        start: 0.0,
        sweep: std::f64::consts::PI,
    }]
}

fn value_along(
    germ: &HolomorphicGerm,
    path: &NPartPath,
    units: &UnitTuple,
    opts: &ContinuationOptions,
) -> slicereg::Result<Quaternion> {
    if path.n() == 1 {
        Ok(continue_along(germ, &path.parts()[0], units.last(), opts)?.value())
    } else {
        continue_npart(germ, path, units, opts)
    }
}

pub fn run(cfg: &JobConfig) -> CliResult<Report> {
    let legs = cfg.path.clone().unwrap_or_else(default_path);
    let path = npart(&legs)?;
    let units: Vec<ImaginaryUnit> = match &cfg.units {
        Some(u) => u.iter().map(|u| unit(*u)).collect::<CliResult<_>>()?,
        None => vec![ImaginaryUnit::I; path.n()],
    };
    if units.len() != path.n() {
        return Err(CliError::Config(format!(
            "{} units given for a {}-part path",
            units.len(),
            path.n()
        )));
    }
    let units = UnitTuple::new(units)?;
    let opts = ContinuationOptions::default();
    let germ = cfg
        .germ
        .clone()
        .unwrap_or_else(default_germ)
        .build(units.units()[0], &opts)?;

    let value = value_along(&germ, &path, &units, &opts)?;
    let half = ContinuationOptions {
        step_fraction: 0.5 * opts.step_fraction,
        ..opts.clone()
    };
    let subdivision = value.dist(value_along(&germ, &path, &units, &half)?);
    let reversal = if path.n() == 1 {
        let leg = &path.parts()[0];
        let out = continue_along(&germ, leg, units.last(), &opts)?;
        let back = continue_along(&out, &leg.reversed(), units.last(), &opts)?;
        Some(back.value().dist(germ.eval(leg.start(), units.last())?))
    } else {
        None
    };

    let tol = cfg.tol();
    let failure = verdict(subdivision <= tol, || {
        format!("halving the step moved the value by {subdivision:e} > {tol:e}")
    })
    .or_else(|| {
        verdict(reversal.is_none_or(|r| r <= tol), || {
            format!(
                "continuing back changed the value by {:e} > {tol:e}",
                reversal.unwrap_or(0.0)
            )
        })
    });
    let end = path.lift(&units)?.end();
    let json = json!({
        "command": "continue-path",
        "config": cfg,
        "endpoint": quat_json(end),
        "value": quat_json(value),
        "subdivision_gap": subdivision,
        "reversal_gap": reversal,
        "tol": tol,
        "passed": failure.is_none(),
    });
    let mut line = vec![path.n().to_string()];
    line.extend(quat_json(end).iter().map(|x| cell(*x)));
    line.extend(quat_json(value).iter().map(|x| cell(*x)));
    line.push(cell(subdivision));
    line.push(reversal.map(cell).unwrap_or_default());
    Ok(Report {
        json,
        header: vec![
            "parts",
            "end_w",
            "end_x",
            "end_y",
            "end_z",
            "value_w",
            "value_x",
            "value_y",
            "value_z",
            "subdivision_gap",
            "reversal_gap",
        ],
        rows: vec![line],
        failure,
    })
}
