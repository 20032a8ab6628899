//! `repr-eval`: the 2^N-point representation formula against a polynomial oracle.

use serde_json::json;
use slicereg::continuation::continue_npart;
use slicereg::formulas::{classical_repr, RepresentationSweep};
use slicereg::quaternion::embed;
use slicereg::slice_calculus::full_slice_rank;
use slicereg::{
    Complex, ContinuationOptions, HolomorphicGerm, NPartPath, PlanarPath, SlicePolynomial,
    SliceValueVector, UnitTuple,
};

use crate::codec::{npart, quat, quat_json, unit_json, UnitMatrixJson};
use crate::config::JobConfig;
use crate::error::{CliError, CliResult};
use crate::report::{cell, verdict, Report};
use crate::sampling::Sampler;

/// Upper half-circles between consecutive reals, then a segment into the upper half-plane.
fn default_path(n: usize) -> CliResult<NPartPath> {
    let mut legs = Vec::with_capacity(n);
    for k in 0..n - 1 {
        let a = 0.5 * k as f64;
        legs.push(PlanarPath::arc(
            Complex::new(a + 0.25, 0.0),
            0.25,
            std::f64::consts::PI,
            -std::f64::consts::PI,
        ));
    }
    let a = 0.5 * (n - 1) as f64;
    legs.push(PlanarPath::segment(
        Complex::new(a, 0.0),
        Complex::new(a - 0.1, 0.7),
    ));
    Ok(NPartPath::compose(legs)?)
}

pub fn run(cfg: &JobConfig) -> CliResult<Report> {
    let mut s = Sampler::new(cfg.seed);
    let j = match &cfg.j {
        Some(j) => j.to_matrix()?,
        None => s.unit_matrix(cfg.n)?,
    };
    let n = j.n();
    if let Some(level) = full_slice_rank(&j)?.failing_level() {
        return Err(CliError::Config(format!(
            "unit matrix lacks full slice-rank at level {level}"
        )));
    }
    let poly = SlicePolynomial::new(match &cfg.polynomial {
        Some(c) => c.iter().map(|q| quat(*q)).collect(),
        None => s.quaternions(cfg.degree + 1),
    });
    let path = match &cfg.path {
        Some(legs) => npart(legs)?,
        None => default_path(n)?,
    };
    if path.n() != n {
        return Err(CliError::Config(format!(
            "path has {} parts but the unit matrix has N = {n}",
            path.n()
        )));
    }

    // values at the J-lifted endpoints, by continuation from the germ at 0
    let opts = ContinuationOptions::default();
    let germ = HolomorphicGerm::polynomial(poly.coeffs().to_vec())?;
    // a path starting away from 0 is reached along the real axis first
    let origin = Complex::new(0.0, 0.0);
    let prefixed = path.start() != origin;
    let full = if prefixed {
        let mut legs = vec![PlanarPath::segment(origin, path.start())];
        legs.extend(path.parts().iter().cloned());
        NPartPath::compose(legs)?
    } else {
        path.clone()
    };
    let values = j
        .rows()
        .iter()
        .map(|row| {
            let units = if prefixed {
                let mut u = vec![row.units()[0]];
                u.extend_from_slice(row.units());
                UnitTuple::new(u)?
            } else {
                row.clone()
            };
            continue_npart(&germ, &full, &units, &opts)
        })
        .collect::<slicereg::Result<Vec<_>>>()?;
    let f = SliceValueVector::new(n, values.clone())?;
    let sweep = RepresentationSweep::new(j.clone())?;
    let coeffs = sweep.coefficients(&f)?;

    let end = path.end();
    let mut ks: Vec<(&str, UnitTuple)> = (0..cfg.k_samples)
        .map(|_| Ok(("random", UnitTuple::new(s.units(n))?)))
        .collect::<CliResult<_>>()?;
    ks.extend(j.rows().iter().map(|r| ("row", r.clone())));

    let tol = cfg.tol();
    let mut rows = Vec::new();
    let mut table = Vec::new();
    let (mut worst, mut worst_classical) = (0.0f64, 0.0f64);
    for (idx, (kind, k)) in ks.iter().enumerate() {
        let formula = sweep.eval_with(k, &coeffs)?;
        let oracle = poly.eval(embed(end, k.last()));
        let error = formula.dist(oracle);
        worst = worst.max(error);
        let classical = if n == 1 {
            let (j1, j2) = (j.row(0).last(), j.row(1).last());
            let c = classical_repr(k.last(), j1, j2, values[0], values[1])?;
            let d = c.dist(formula);
            worst_classical = worst_classical.max(d);
            Some(d)
        } else {
            None
        };
        rows.push(json!({
            "index": idx,
            "kind": kind,
            "K": k.units().iter().map(|u| unit_json(*u)).collect::<Vec<_>>(),
            "formula": quat_json(formula),
            "oracle": quat_json(oracle),
            "error": error,
            "classical_difference": classical,
        }));
        let mut line = vec![idx.to_string(), kind.to_string()];
        line.extend(quat_json(formula).iter().map(|x| cell(*x)));
        line.extend(quat_json(oracle).iter().map(|x| cell(*x)));
        line.push(cell(error));
        line.push(classical.map(cell).unwrap_or_default());
        table.push(line);
    }

    let failure = verdict(worst <= tol, || {
        format!("representation formula error {worst:e} exceeds {tol:e}")
    })
    .or_else(|| {
        verdict(worst_classical <= cfg.classical_tol, || {
            format!(
                "N=1 formula differs from the two-term formula by {worst_classical:e} > {:e}",
                cfg.classical_tol
            )
        })
    });
    let json = json!({
        "command": "repr-eval",
        "config": cfg,
        "J": UnitMatrixJson::from_matrix(&j),
        "polynomial": poly.coeffs().iter().map(|q| quat_json(*q)).collect::<Vec<_>>(),
        "values": crate::codec::SliceValueVectorJson::from_vector(&f),
        "inverse": crate::codec::QMatrixJson::from_matrix(sweep.inverse()),
        "tol": tol,
        "max_error": worst,
        "max_classical_difference": (n == 1).then_some(worst_classical),
        "passed": failure.is_none(),
        "rows": rows,
    });
    Ok(Report {
        json,
        header: vec![
            "index",
            "kind",
            "formula_w",
            "formula_x",
            "formula_y",
            "formula_z",
            "oracle_w",
            "oracle_x",
            "oracle_y",
            "oracle_z",
            "error",
            "classical_difference",
        ],
        rows: table,
        failure,
    })
}
