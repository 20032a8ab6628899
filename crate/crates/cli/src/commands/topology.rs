//! `topology`: slice-openness of the ellipse union, the per-slice partition of
//! `B(I, 1/2)`, and completion checks for a user-given disk family.

use serde_json::json;
use slicereg::quaternion::{approach_units, decompose, embed, sample_sphere};
use slicereg::slice_topology::{
    axially_symmetric_completion, ellipse_union, euclidean_ball_escape, is_real_connected,
    is_slice_open_sampled, slice_components,
};
use slicereg::{ImaginaryUnit, PlanarRegion, Quaternion, SliceSet};

use crate::codec::{complex, quat_json, unit, unit_json};
use crate::config::{JobConfig, TopologyExample};
use crate::error::{CliError, CliResult};
use crate::report::{cell, verdict, Report};
use crate::sampling::Sampler;

/// Pixel edge for per-slice component labelling.
const COMPONENT_GRID: usize = 128;

pub fn run(cfg: &JobConfig) -> CliResult<Report> {
    match cfg.example {
        TopologyExample::Ellipse => ellipse(cfg),
        TopologyExample::Ball => ball(cfg),
        TopologyExample::Custom => custom(cfg),
    }
}

fn ellipse(cfg: &JobConfig) -> CliResult<Report> {
    let i = ImaginaryUnit::I;
    let u = ellipse_union(i);
    let mut units = sample_sphere(cfg.samples, cfg.scheme.resolve(cfg.seed));
    units.extend(approach_units(i, 20));
    units.extend([i, -i]);
    let open = is_slice_open_sampled(&u, &units, cfg.grid);

    let near = approach_units(i, 60);
    let escapes: Vec<_> = (1..=20)
        .map(|k| {
            let r = 0.5f64.powi(k);
            (r, euclidean_ball_escape(&u, Quaternion::ZERO, r, &near))
        })
        .collect();
    let all_escape = escapes.iter().all(|(_, e)| e.is_some());
    let failure = verdict(open.passed, || {
        "ellipse union failed the slice-openness sampling".into()
    })
    .or_else(|| {
        verdict(all_escape, || {
            "some Euclidean ball about 0 stayed inside the ellipse union".into()
        })
    });

    let json = json!({
        "command": "topology",
        "config": cfg,
        "example": "ellipse",
        "slice_open": open.passed,
        "slices": open.slices.iter().map(|s| json!({
            "unit": unit_json(s.unit),
            "dist_to_base_slice": s.unit.dist_to_slice(i),
            "members": s.members,
            "min_clearance": s.min_clearance,
            "witness": s.witness.map(|z| quat_json(embed(z, s.unit))),
        })).collect::<Vec<_>>(),
        "ball_escapes": escapes.iter().map(|(r, e)| json!({
            "radius": r,
            "unit": e.map(|(j, _)| unit_json(j)),
            "point": e.map(|(_, p)| quat_json(p)),
        })).collect::<Vec<_>>(),
        "passed": failure.is_none(),
    });
    let rows = open
        .slices
        .iter()
        .map(|s| {
            let v = unit_json(s.unit);
            vec![
                cell(v[0]),
                cell(v[1]),
                cell(v[2]),
                cell(s.unit.dist_to_slice(i)),
                s.members.to_string(),
                s.min_clearance.map(cell).unwrap_or_default(),
            ]
        })
        .collect();
    Ok(Report {
        json,
        header: vec![
            "unit_x",
            "unit_y",
            "unit_z",
            "dist_to_slice",
            "members",
            "min_clearance",
        ],
        rows,
        failure,
    })
}

fn ball(cfg: &JobConfig) -> CliResult<Report> {
    let i = ImaginaryUnit::I;
    let b = SliceSet::ball(Quaternion::I * 1.0, 0.5);
    let mut probe = vec![i];
    probe.extend(sample_sphere(cfg.samples, cfg.scheme.resolve(cfg.seed)));
    let comps = slice_components(&b, &probe, COMPONENT_GRID);
    let trace = is_real_connected(&b, 2000);

    // near ℂ_I one component avoiding ℝ, far from it nothing: no real point links the slices
    let mut partition = trace.runs.is_empty() && comps[0].count == 1;
    for s in &comps {
        let d = s.unit.dist_to_slice(i);
        let touches = s.touches_real.iter().any(|t| *t);
        if d < 0.45 {
            partition &= s.count == 1 && !touches;
        } else if d > 0.55 {
            partition &= s.count == 0;
        }
    }
    let failure = verdict(partition, || {
        "B(I, 1/2) did not show the expected per-slice partition".into()
    });
    let json = json!({
        "command": "topology",
        "config": cfg,
        "example": "ball",
        "real_trace_runs": trace.runs,
        "slices": comps.iter().map(|s| json!({
            "unit": unit_json(s.unit),
            "dist_to_base_slice": s.unit.dist_to_slice(i),
            "components": s.count,
            "touches_real": s.touches_real,
            "sizes": s.sizes,
        })).collect::<Vec<_>>(),
        "partition": partition,
        "passed": failure.is_none(),
    });
    let rows = comps
        .iter()
        .map(|s| {
            let v = unit_json(s.unit);
            vec![
                cell(v[0]),
                cell(v[1]),
                cell(v[2]),
                cell(s.unit.dist_to_slice(i)),
                s.count.to_string(),
                s.touches_real.iter().any(|t| *t).to_string(),
            ]
        })
        .collect();
    Ok(Report {
        json,
        header: vec![
            "unit_x",
            "unit_y",
            "unit_z",
            "dist_to_slice",
            "components",
            "touches_real",
        ],
        rows,
        failure,
    })
}

fn custom(cfg: &JobConfig) -> CliResult<Report> {
    let disks = cfg
        .custom
        .as_ref()
        .filter(|d| !d.is_empty())
        .ok_or_else(|| {
            CliError::Config("topology custom needs a non-empty `custom` disk list".into())
        })?;
    let members = disks
        .iter()
        .map(|d| {
            if !(d.radius > 0.0) {
                return Err(CliError::Config(format!(
                    "disk radius must be positive, got {}",
                    d.radius
                )));
            }
            Ok(SliceSet::SingleSlice {
                unit: unit(d.unit)?,
                region: PlanarRegion::disk(complex(d.center), d.radius),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let set = SliceSet::Union(members);
    let witnesses = sample_sphere(cfg.samples, cfg.scheme.resolve(cfg.seed));
    let once = axially_symmetric_completion(&set, &witnesses);
    let twice = axially_symmetric_completion(&once, &witnesses);

    let mut s = Sampler::new(cfg.seed);
    let probes = s.quaternions(cfg.samples);
    let mut rows = Vec::with_capacity(probes.len());
    let (mut idempotent, mut symmetric) = (true, true);
    for p in probes.iter().map(|q| q.scale(2.0)) {
        let (a, b) = (once.contains(p), twice.contains(p));
        idempotent &= a == b;
        // the same (x, y) on another slice
        let sp = decompose(p);
        let moved = embed(sp.coordinate(), s.unit());
        symmetric &= a == once.contains(moved);
        let mut line: Vec<String> = quat_json(p).iter().map(|x| cell(*x)).collect();
        line.push(a.to_string());
        line.push(b.to_string());
        rows.push(line);
    }
    let failure = verdict(idempotent, || {
        "completion is not idempotent on the probes".into()
    })
    .or_else(|| {
        verdict(symmetric, || {
            "completion is not axially symmetric on the probes".into()
        })
    });
    let json = json!({
        "command": "topology",
        "config": cfg,
        "example": "custom",
        "probes": probes.len(),
        "idempotent": idempotent,
        "axially_symmetric": symmetric,
        "passed": failure.is_none(),
    });
    Ok(Report {
        json,
        header: vec!["w", "x", "y", "z", "in_completion", "in_completion_twice"],
        rows,
        failure,
    })
}
