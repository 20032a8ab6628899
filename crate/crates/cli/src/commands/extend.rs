//! `extend`: the two-slice extension formula at one point, with a regularity probe.

use serde_json::json;
use slicereg::formulas::{cr_residual, extend_two_slices};
use slicereg::quaternion::embed;
use slicereg::{Complex, ImaginaryUnit, Quaternion, SlicePolynomial};

use crate::codec::{complex, quat, quat_json, unit, unit_json};
use crate::config::JobConfig;
use crate::error::{CliError, CliResult};
use crate::report::{cell, verdict, Report};
use crate::sampling::Sampler;

pub fn run(cfg: &JobConfig) -> CliResult<Report> {
    let mut s = Sampler::new(cfg.seed);
    let mut pick = |u: Option<[f64; 3]>| match u {
        Some(u) => unit(u),
        None => Ok(s.unit()),
    };
    let (i1, i2, j) = (pick(cfg.i1)?, pick(cfg.i2)?, pick(cfg.target)?);
    let z = complex(cfg.point);
    if z.im < 0.0 {
        return Err(CliError::Config(format!(
            "point must lie in the closed upper half-plane, got {}{:+}i",
            z.re, z.im
        )));
    }

    // either explicit slice values, or a polynomial oracle sampled on both slices
    let poly = match (&cfg.values, &cfg.polynomial) {
        (Some(_), _) => None,
        (None, Some(c)) => Some(SlicePolynomial::new(c.iter().map(|q| quat(*q)).collect())),
        (None, None) => Some(SlicePolynomial::new(s.quaternions(cfg.degree + 1))),
    };
    let values_at = |w: Complex| -> [Quaternion; 2] {
        match (&cfg.values, &poly) {
            (Some(v), _) => [quat(v[0]), quat(v[1])],
            (None, Some(p)) => [p.eval_slice(w, i1), p.eval_slice(w, i2)],
            (None, None) => unreachable!("one source of values is always set"),
        }
    };
    let [v1, v2] = values_at(z);
    let value = extend_two_slices(v1, v2, i1, i2, j)?;
    let oracle = poly.as_ref().map(|p| p.eval_slice(z, j));
    let error = oracle.map(|o| o.dist(value));

    // ∂̄ residual at h and h/2; only meaningful for holomorphic slice data
    let residuals = if poly.is_some() {
        let ext = |q: Quaternion| -> slicereg::Result<Quaternion> {
            let w = Complex::new(q.w, q.dot(j.as_quaternion()));
            let [a, b] = values_at(w);
            extend_two_slices(a, b, i1, i2, j)
        };
        let r1 = cr_residual(ext, j, z, cfg.h)?;
        let r2 = cr_residual(ext, j, z, 0.5 * cfg.h)?;
        Some((r1, r2))
    } else {
        None
    };

    let tol = cfg.tol();
    let failure = verdict(error.is_none_or(|e| e <= tol), || {
        format!(
            "extension differs from the oracle by {:e} > {tol:e}",
            error.unwrap_or(0.0)
        )
    });
    let units = |u: ImaginaryUnit| unit_json(u);
    let json = json!({
        "command": "extend",
        "config": cfg,
        "I1": units(i1),
        "I2": units(i2),
        "J": units(j),
        "point": quat_json(embed(z, j)),
        "v1": quat_json(v1),
        "v2": quat_json(v2),
        "value": quat_json(value),
        "oracle": oracle.map(quat_json),
        "error": error,
        "cr_residual": residuals.map(|(a, b)| json!({"h": cfg.h, "at_h": a, "at_half_h": b, "ratio": a / b})),
        "tol": tol,
        "passed": failure.is_none(),
    });
    let mut line: Vec<String> = [z.re, z.im].iter().map(|x| cell(*x)).collect();
    line.extend(quat_json(value).iter().map(|x| cell(*x)));
    line.push(error.map(cell).unwrap_or_default());
    line.push(residuals.map(|r| cell(r.0)).unwrap_or_default());
    line.push(residuals.map(|r| cell(r.1)).unwrap_or_default());
    Ok(Report {
        json,
        header: vec![
            "x",
            "y",
            "value_w",
            "value_x",
            "value_y",
            "value_z",
            "error",
            "cr_residual_h",
            "cr_residual_half_h",
        ],
        rows: vec![line],
        failure,
    })
}
