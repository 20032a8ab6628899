//! A slice-domain `Ω` carrying a slice regular `G` that admits no slice
//! regular extension to its axially symmetric completion.
//!
//! All planar data live in `ℂ_I` coordinates for a fixed base unit `I`.
//! `f_t` is the branch of `log(z − 2i)` on `ℂ ∖ γ_t` normalized by
//! `f_t(1 + 2i) = 0`, realized by continuing a germ along a cut-avoiding route.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use super::cut::{route, Cut, CUT_CLEARANCE};
use super::{continue_along, ContinuationOptions, HolomorphicGerm, LinearOde};
use crate::paths::PlanarPath;
use crate::quaternion::{
    decompose, embed, sample_sphere, ImaginaryUnit, Quaternion, SamplingScheme,
};
use crate::{Complex, Error, Result};

/// Largest admissible path parameter for [`gamma_s`].
pub const T_MAX: f64 = 0.999;

/// Normalization point `1 + 2i` where every `f_t` vanishes.
pub const CUT_ANCHOR: Complex = Complex::new(1.0, 2.0);

const BRANCH_POINT: Complex = Complex::new(0.0, 2.0);

/// `γ_s(t)` in `ℂ_I` coordinates.
pub fn gamma_coordinate(s: f64, t: f64) -> Result<Complex> {
    if t > T_MAX {
        return Err(Error::HorizonExceeded { t, t_max: T_MAX });
    }
    if t < 0.0 || t.is_nan() {
        return Err(Error::ParameterOutOfRange { t });
    }
    Ok(Cut::new(s)?.point(t))
}

/// `γ_s(t)` embedded in `ℂ_I`.
pub fn gamma_s(s: f64, t: f64, unit: ImaginaryUnit) -> Result<Quaternion> {
    Ok(embed(gamma_coordinate(s, t)?, unit))
}

/// `T(J) = min(|J − I|, 1)`.
pub fn t_of(j: ImaginaryUnit, i: ImaginaryUnit) -> f64 {
    (j.as_quaternion() - i.as_quaternion()).norm().min(1.0)
}

/// The germ of `log(w − 2i)` at the anchor, real coefficients `(−1)^{k+1}/k`.
pub fn log_germ_at_anchor(unit: ImaginaryUnit, opts: &ContinuationOptions) -> HolomorphicGerm {
    HolomorphicGerm::from_ode(
        CUT_ANCHOR,
        Quaternion::ZERO,
        LinearOde::log(BRANCH_POINT),
        unit,
        opts,
    )
    .expect("the anchor is not the branch point")
}

/// `f_t(z)` with default continuation options.
pub fn f_cut(tcut: f64, z: Complex, unit: ImaginaryUnit) -> Result<Quaternion> {
    CutFamily::new(unit).f_with(tcut, z, &ContinuationOptions::default())
}

/// `F_J⁺(x + yJ)` for `y ≥ 0`.
pub fn f_plus(j: ImaginaryUnit, x: f64, y: f64, unit: ImaginaryUnit) -> Result<Quaternion> {
    CutFamily::new(unit).f_plus(j, x, y)
}

/// The cut family based at a unit `I`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutFamily {
    unit: ImaginaryUnit,
}

impl CutFamily {
    pub fn new(unit: ImaginaryUnit) -> Self {
        Self { unit }
    }

    pub fn unit(&self) -> ImaginaryUnit {
        self.unit
    }

    pub fn gamma(&self, s: f64, t: f64) -> Result<Quaternion> {
        gamma_s(s, t, self.unit)
    }

    pub fn t_of(&self, j: ImaginaryUnit) -> f64 {
        t_of(j, self.unit)
    }

    pub fn cut(&self, s: f64) -> Result<Cut> {
        Cut::new(s)
    }

    /// `f_t(z)` for `z` in `ℂ_I` coordinates.
    pub fn f_with(&self, tcut: f64, z: Complex, opts: &ContinuationOptions) -> Result<Quaternion> {
        let cut = Cut::new(tcut)?;
        let points = route(&cut, CUT_ANCHOR, z)?;
        let legs: Vec<PlanarPath> = points
            .windows(2)
            .map(|w| PlanarPath::segment(w[0], w[1]))
            .collect();
        let mut germ = log_germ_at_anchor(self.unit, opts);
        for leg in &legs {
            germ = continue_along(&germ, leg, self.unit, opts)?;
        }
        Ok(germ.value())
    }

    pub fn f(&self, tcut: f64, z: Complex) -> Result<Quaternion> {
        self.f_with(tcut, z, &ContinuationOptions::default())
    }

    /// `F_J⁺(x + yJ) = (1 − JI)/2·f_{T(J)}(x + yI) + (1 + JI)/2·f_{T(J)}(x − yI)`.
    pub fn f_plus(&self, j: ImaginaryUnit, x: f64, y: f64) -> Result<Quaternion> {
        if y < 0.0 {
            return Err(Error::ParameterOutOfRange { t: y });
        }
        let t = self.t_of(j);
        let ji = j.as_quaternion() * self.unit.as_quaternion();
        let upper = self.f(t, Complex::new(x, y))?;
        let lower = self.f(t, Complex::new(x, -y))?;
        Ok((Quaternion::ONE - ji) * 0.5 * upper + (Quaternion::ONE + ji) * 0.5 * lower)
    }

    /// Distance, in `ℂ_J` coordinates, from `x + yJ` to the removed set of `Ω ∩ ℂ_J`.
    ///
    /// For `y ≥ 0` the removed set is `γ_{T(J)}`, for `y < 0` the mirror of `γ_{T(−J)}`.
    pub fn clearance(&self, j: ImaginaryUnit, x: f64, y: f64) -> f64 {
        let (unit, y) = if y >= 0.0 { (j, y) } else { (-j, -y) };
        let cut = Cut::new(self.t_of(unit)).expect("T(J) lies in [0, 1]");
        cut.distance(Complex::new(x, y))
    }

    /// Membership of `q` in `Ω = ⋃_J U_J⁺`.
    pub fn contains(&self, q: Quaternion) -> bool {
        let p = decompose(q);
        match p.unit {
            None => true,
            Some(j) => self.clearance(j, p.x, p.y) > 0.0,
        }
    }
}

/// `n` points on the circle of radius 1 about `2i`, starting at the anchor.
pub fn probe_circle(n: usize) -> Vec<Complex> {
    probe_circle_at(BRANCH_POINT, 1.0, n)
}

/// `n` points on the circle of `radius` about `center`, starting at angle 0.
pub fn probe_circle_at(center: Complex, radius: f64, n: usize) -> Vec<Complex> {
    (0..n)
        .map(|k| {
            let (s, c) = (2.0 * PI * k as f64 / n as f64).sin_cos();
            center + Complex::new(radius * c, radius * s)
        })
        .collect()
}

/// Sampling controls for [`counterexample_report`].
#[derive(Clone, Debug, PartialEq)]
pub struct CounterexampleConfig {
    pub unit: ImaginaryUnit,
    /// Probe circle; the default `(2i, 1)` passes through the anchor.
    pub probe_center: Complex,
    pub probe_radius: f64,
    pub probe_points: usize,
    pub witness_units: usize,
    pub scheme: SamplingScheme,
    /// Slices sampled for the openness check.
    pub openness_units: usize,
    /// Grid points per axis on `[−4, 2] × [−4, 4]` in each sampled slice.
    pub openness_grid: usize,
    pub sweep: bool,
    pub continuation: ContinuationOptions,
}

impl Default for CounterexampleConfig {
    fn default() -> Self {
        Self {
            unit: ImaginaryUnit::I,
            probe_center: BRANCH_POINT,
            probe_radius: 1.0,
            probe_points: 256,
            witness_units: 512,
            scheme: SamplingScheme::Fibonacci,
            openness_units: 16,
            openness_grid: 25,
            sweep: false,
            continuation: ContinuationOptions::default(),
        }
    }
}

/// A unit `J` with `x + yJ ∈ U_J⁺` for a probe point `x + yI`, if one was found.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness {
    pub point: Complex,
    pub unit: Option<ImaginaryUnit>,
    pub t: f64,
    pub clearance: f64,
}

/// One row of the J-sweep: how many probe points a unit covers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub unit: ImaginaryUnit,
    pub t: f64,
    pub covered_points: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CounterexampleReport {
    pub probe_circle: Vec<Complex>,
    pub witnesses: Vec<Witness>,
    pub monodromy: Quaternion,
    /// Clearance of each sampled member point of `Ω` from the removed set.
    pub openness: Vec<f64>,
    pub sweep: Vec<SweepRow>,
}

impl CounterexampleReport {
    pub fn all_covered(&self) -> bool {
        self.witnesses.iter().all(|w| w.unit.is_some())
    }

    pub fn uncovered(&self) -> Vec<Complex> {
        self.witnesses
            .iter()
            .filter(|w| w.unit.is_none())
            .map(|w| w.point)
            .collect()
    }

    /// `| |gap| − 2π |`.
    pub fn monodromy_error(&self) -> f64 {
        (self.monodromy.norm() - 2.0 * PI).abs()
    }

    pub fn openness_ok(&self) -> bool {
        !self.openness.is_empty() && self.openness.iter().all(|c| *c > 0.0)
    }
}

/// Coverage of the probe circle by witnesses, log monodromy around it, and sampled openness.
pub fn counterexample_report(cfg: &CounterexampleConfig) -> Result<CounterexampleReport> {
    let family = CutFamily::new(cfg.unit);
    if !(cfg.probe_radius > 0.0 && cfg.probe_radius.is_finite()) {
        return Err(Error::ParameterOutOfRange {
            t: cfg.probe_radius,
        });
    }
    let probe = probe_circle_at(cfg.probe_center, cfg.probe_radius, cfg.probe_points);
    let units = sample_sphere(cfg.witness_units, cfg.scheme);
    let cuts: Vec<(ImaginaryUnit, f64, Cut)> = units
        .iter()
        .map(|&j| {
            let t = family.t_of(j);
            (j, t, Cut::new(t).expect("T(J) lies in [0, 1]"))
        })
        .collect();

    let witnesses = probe
        .iter()
        .map(|&p| {
            let mut best = Witness {
                point: p,
                unit: None,
                t: f64::NAN,
                clearance: 0.0,
            };
            for (j, t, cut) in &cuts {
                let clearance = cut.distance(p);
                if clearance > CUT_CLEARANCE {
                    best = Witness {
                        point: p,
                        unit: Some(*j),
                        t: *t,
                        clearance,
                    };
                    break;
                }
                if clearance > best.clearance {
                    best.clearance = clearance;
                    best.t = *t;
                }
            }
            best
        })
        .collect();

    let sweep = if cfg.sweep {
        cuts.iter()
            .map(|(j, t, cut)| SweepRow {
                unit: *j,
                t: *t,
                covered_points: probe
                    .iter()
                    .filter(|&&p| cut.distance(p) > CUT_CLEARANCE)
                    .count(),
            })
            .collect()
    } else {
        Vec::new()
    };

    // principal log at the circle's start; the gap does not depend on the branch
    let start = cfg.probe_center + Complex::new(cfg.probe_radius, 0.0);
    let germ = HolomorphicGerm::from_ode(
        start,
        embed((start - BRANCH_POINT).ln(), cfg.unit),
        LinearOde::log(BRANCH_POINT),
        cfg.unit,
        &cfg.continuation,
    )?;
    let circle = PlanarPath::circle(cfg.probe_center, cfg.probe_radius);
    let after = continue_along(&germ, &circle, cfg.unit, &cfg.continuation)?;
    let monodromy = after.value() - germ.value();

    let mut openness = Vec::new();
    let slices = sample_sphere(cfg.openness_units, SamplingScheme::Grid);
    let n = cfg.openness_grid.max(2);
    for j in slices {
        for a in 0..n {
            for b in 0..n {
                let x = -4.0 + 6.0 * a as f64 / (n - 1) as f64;
                let y = -4.0 + 8.0 * b as f64 / (n - 1) as f64;
                let c = family.clearance(j, x, y);
                if family.contains(embed(Complex::new(x, y), j)) {
                    openness.push(c);
                }
            }
        }
    }

    Ok(CounterexampleReport {
        probe_circle: probe,
        witnesses,
        monodromy,
        openness,
        sweep,
    })
}
