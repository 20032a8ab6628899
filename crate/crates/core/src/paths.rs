//! Planar paths, N-part paths with real junctions, and their liftings to ℍ.
//!
//! An N-part path `γ = (γ_1, …, γ_N)` is evaluated on the concatenated
//! parameter: `γ(t) = γ_{⌊tN⌋+1}({tN})` for `t < 1` and `γ(1) = γ_N(1)`.
//! Lifting by a unit tuple `I` places leg `ı` in the slice `ℂ_{I_ı}`.

use alloc::boxed::Box;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::quaternion::{embed, ImaginaryUnit, Quaternion};
use crate::slice_calculus::UnitTuple;
use crate::{Complex, Error, Result};

/// Junctions must be real, and consecutive legs must meet, within this distance.
pub const EPS_JUNCTION: f64 = 1e-9;

/// Parameters closer than this to a part boundary `m/N` count as on it.
const EPS_BOUNDARY: f64 = 1e-12;

/// A continuous map `[0, 1] → ℂ` with an analytic generator where possible.
#[derive(Clone, Debug, PartialEq)]
pub enum PlanarPath {
    Segment {
        from: Complex,
        to: Complex,
    },
    /// `center + radius·e^{i(start + sweep·t)}`; angles in radians.
    Arc {
        center: Complex,
        radius: f64,
        start: f64,
        sweep: f64,
    },
    /// `center + semi_x·cos θ + i·semi_y·sin θ` with `θ = start + sweep·t`.
    EllipticArc {
        center: Complex,
        semi_x: f64,
        semi_y: f64,
        start: f64,
        sweep: f64,
    },
    /// Piecewise linear through `points` on a uniform parameter grid.
    Polyline {
        points: Vec<Complex>,
    },
    /// `inner` reparametrized from `[t0, t1]` onto `[0, 1]`.
    Restricted {
        inner: Box<PlanarPath>,
        t0: f64,
        t1: f64,
    },
    /// Legs traversed one after another, each on an equal share of `[0, 1]`.
    Chain {
        legs: Vec<PlanarPath>,
    },
}

impl PlanarPath {
    pub fn segment(from: Complex, to: Complex) -> Self {
        Self::Segment { from, to }
    }

    pub fn constant(at: Complex) -> Self {
        Self::Segment { from: at, to: at }
    }

    pub fn arc(center: Complex, radius: f64, start: f64, sweep: f64) -> Self {
        Self::Arc {
            center,
            radius,
            start,
            sweep,
        }
    }

    /// Full counter-clockwise circle starting at `center + radius`.
    pub fn circle(center: Complex, radius: f64) -> Self {
        Self::arc(center, radius, 0.0, 2.0 * core::f64::consts::PI)
    }

    pub fn polyline(points: Vec<Complex>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::LengthMismatch {
                expected: 1,
                got: 0,
            });
        }
        Ok(Self::Polyline { points })
    }

    /// Value at `t`; `t` is clamped to `[0, 1]`.
    pub fn eval(&self, t: f64) -> Complex {
        let t = t.clamp(0.0, 1.0);
        match self {
            Self::Segment { from, to } => from + (to - from) * t,
            Self::Arc {
                center,
                radius,
                start,
                sweep,
            } => {
                let (s, c) = (start + sweep * t).sin_cos();
                center + Complex::new(radius * c, radius * s)
            }
            Self::EllipticArc {
                center,
                semi_x,
                semi_y,
                start,
                sweep,
            } => {
                let (s, c) = (start + sweep * t).sin_cos();
                center + Complex::new(semi_x * c, semi_y * s)
            }
            Self::Polyline { points } => {
                if points.len() == 1 {
                    return points[0];
                }
                let pos = t * (points.len() - 1) as f64;
                let k = (pos.floor() as usize).min(points.len() - 2);
                let frac = pos - k as f64;
                points[k] + (points[k + 1] - points[k]) * frac
            }
            Self::Restricted { inner, t0, t1 } => inner.eval(t0 + (t1 - t0) * t),
            Self::Chain { legs } => {
                let n = legs.len();
                if t == 1.0 {
                    return legs[n - 1].eval(1.0);
                }
                let pos = t * n as f64;
                let k = (pos.floor() as usize).min(n - 1);
                legs[k].eval(pos - k as f64)
            }
        }
    }

    /// Concatenation of `legs`; consecutive endpoints should agree.
    pub fn chain(legs: Vec<PlanarPath>) -> Result<Self> {
        if legs.is_empty() {
            return Err(Error::LengthMismatch {
                expected: 1,
                got: 0,
            });
        }
        Ok(Self::Chain { legs })
    }

    #[inline]
    pub fn start(&self) -> Complex {
        self.eval(0.0)
    }

    #[inline]
    pub fn end(&self) -> Complex {
        self.eval(1.0)
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        match self {
            Self::Segment { from, to } => Self::Segment {
                from: *to,
                to: *from,
            },
            Self::Arc {
                center,
                radius,
                start,
                sweep,
            } => Self::Arc {
                center: *center,
                radius: *radius,
                start: start + sweep,
                sweep: -sweep,
            },
            Self::EllipticArc {
                center,
                semi_x,
                semi_y,
                start,
                sweep,
            } => Self::EllipticArc {
                center: *center,
                semi_x: *semi_x,
                semi_y: *semi_y,
                start: start + sweep,
                sweep: -sweep,
            },
            Self::Polyline { points } => Self::Polyline {
                points: points.iter().rev().copied().collect(),
            },
            Self::Restricted { inner, t0, t1 } => Self::Restricted {
                inner: inner.clone(),
                t0: *t1,
                t1: *t0,
            },
            Self::Chain { legs } => Self::Chain {
                legs: legs.iter().rev().map(Self::reversed).collect(),
            },
        }
    }

    /// The piece over `[t0, t1]` reparametrized to `[0, 1]`, exact for analytic legs.
    pub fn restrict(&self, t0: f64, t1: f64) -> Self {
        match self {
            Self::Segment { .. } => Self::segment(self.eval(t0), self.eval(t1)),
            Self::Arc {
                center,
                radius,
                start,
                sweep,
            } => Self::Arc {
                center: *center,
                radius: *radius,
                start: start + sweep * t0,
                sweep: sweep * (t1 - t0),
            },
            Self::EllipticArc {
                center,
                semi_x,
                semi_y,
                start,
                sweep,
            } => Self::EllipticArc {
                center: *center,
                semi_x: *semi_x,
                semi_y: *semi_y,
                start: start + sweep * t0,
                sweep: sweep * (t1 - t0),
            },
            Self::Restricted {
                inner,
                t0: a,
                t1: b,
            } => Self::Restricted {
                inner: inner.clone(),
                t0: a + (b - a) * t0,
                t1: a + (b - a) * t1,
            },
            Self::Polyline { .. } | Self::Chain { .. } => Self::Restricted {
                inner: Box::new(self.clone()),
                t0,
                t1,
            },
        }
    }

    /// Upper bound on `|d/dt path(t)|`, so that `|path(t+h) − path(t)| ≤ h·speed_bound()`.
    pub fn speed_bound(&self) -> f64 {
        match self {
            Self::Segment { from, to } => (to - from).norm(),
            Self::Arc { radius, sweep, .. } => radius.abs() * sweep.abs(),
            Self::EllipticArc {
                semi_x,
                semi_y,
                sweep,
                ..
            } => semi_x.abs().max(semi_y.abs()) * sweep.abs(),
            Self::Polyline { points } => {
                let longest = points
                    .windows(2)
                    .map(|w| (w[1] - w[0]).norm())
                    .fold(0.0, f64::max);
                longest * (points.len().max(2) - 1) as f64
            }
            Self::Restricted { inner, t0, t1 } => (t1 - t0).abs() * inner.speed_bound(),
            Self::Chain { legs } => {
                legs.iter().map(Self::speed_bound).fold(0.0, f64::max) * legs.len() as f64
            }
        }
    }
}

/// Which variant of the truncation `γ[t]` to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TruncateSide {
    /// `γ[t]`: keeps a (possibly degenerate) partial last leg.
    Closed,
    /// `γ[t⁻]`: at `t = m/N` drops the degenerate last leg.
    Left,
}

/// A finite-part path in ℂ whose interior junctions are real.
#[derive(Clone, Debug, PartialEq)]
pub struct NPartPath {
    parts: Vec<PlanarPath>,
}

impl NPartPath {
    /// Concatenates legs, checking that each junction is real and continuous.
    pub fn compose(parts: Vec<PlanarPath>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::LengthMismatch {
                expected: 1,
                got: 0,
            });
        }
        for (index, w) in parts.windows(2).enumerate() {
            let (end, next) = (w[0].end(), w[1].start());
            let gap = (end - next).norm();
            let imag = end.im.abs();
            if gap > EPS_JUNCTION || imag > EPS_JUNCTION {
                return Err(Error::BrokenJunction { index, gap, imag });
            }
        }
        Ok(Self { parts })
    }

    pub fn single(leg: PlanarPath) -> Self {
        Self {
            parts: alloc::vec![leg],
        }
    }

    pub fn parts(&self) -> &[PlanarPath] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn start(&self) -> Complex {
        self.parts[0].start()
    }

    pub fn end(&self) -> Complex {
        self.parts[self.parts.len() - 1].end()
    }

    /// The real points where consecutive legs meet.
    pub fn junctions(&self) -> Vec<Complex> {
        self.parts[..self.parts.len() - 1]
            .iter()
            .map(PlanarPath::end)
            .collect()
    }

    /// Leg index and local parameter for a global `t`.
    fn locate(&self, t: f64) -> Result<(usize, f64)> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::ParameterOutOfRange { t });
        }
        let n = self.parts.len();
        if t == 1.0 {
            return Ok((n - 1, 1.0));
        }
        let nt = t * n as f64;
        let idx = (nt.floor() as usize).min(n - 1);
        Ok((idx, nt - idx as f64))
    }

    pub fn eval(&self, t: f64) -> Result<Complex> {
        let (idx, s) = self.locate(t)?;
        Ok(self.parts[idx].eval(s))
    }

    /// `γ[t]` or `γ[t⁻]` for `t ∈ (0, 1]`.
    pub fn truncate(&self, t: f64, side: TruncateSide) -> Result<Self> {
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::ParameterOutOfRange { t });
        }
        if t == 1.0 {
            return Ok(self.clone());
        }
        let n = self.parts.len() as f64;
        let nt = n * t;
        let m = nt.round();
        let mut parts: Vec<PlanarPath>;
        if (nt - m).abs() <= EPS_BOUNDARY * n {
            let m = m as usize;
            parts = self.parts[..m].to_vec();
            if side == TruncateSide::Closed {
                parts.push(PlanarPath::constant(self.parts[m - 1].end()));
            }
        } else {
            let m = nt.floor() as usize;
            let frac = nt - m as f64;
            parts = self.parts[..m].to_vec();
            parts.push(self.parts[m].restrict(0.0, frac));
        }
        Ok(Self { parts })
    }

    /// Lifts leg `ı` into `ℂ_{I_ı}`.
    pub fn lift(&self, units: &UnitTuple) -> Result<QPath> {
        lift(self, units)
    }
}

/// A finite-part path in ℍ: leg `ı` runs in the slice of its unit.
#[derive(Clone, Debug, PartialEq)]
pub struct QPath {
    legs: Vec<(PlanarPath, ImaginaryUnit)>,
}

impl QPath {
    pub fn legs(&self) -> &[(PlanarPath, ImaginaryUnit)] {
        &self.legs
    }

    pub fn n(&self) -> usize {
        self.legs.len()
    }

    pub fn eval(&self, t: f64) -> Result<Quaternion> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::ParameterOutOfRange { t });
        }
        let n = self.legs.len();
        let (idx, s) = if t == 1.0 {
            (n - 1, 1.0)
        } else {
            let nt = t * n as f64;
            let idx = (nt.floor() as usize).min(n - 1);
            (idx, nt - idx as f64)
        };
        let (leg, unit) = &self.legs[idx];
        Ok(embed(leg.eval(s), *unit))
    }

    pub fn end(&self) -> Quaternion {
        let (leg, unit) = &self.legs[self.legs.len() - 1];
        embed(leg.end(), *unit)
    }

    /// Junction points in ℍ.
    pub fn junctions(&self) -> Vec<Quaternion> {
        self.legs[..self.legs.len() - 1]
            .iter()
            .map(|(leg, unit)| embed(leg.end(), *unit))
            .collect()
    }
}

/// The `I`-lifting `(P_{I_1}∘γ_1, …, P_{I_N}∘γ_N)`.
pub fn lift(g: &NPartPath, units: &UnitTuple) -> Result<QPath> {
    if units.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: units.len(),
        });
    }
    // re-check junctions; the legs may have been built from untrusted input
    NPartPath::compose(g.parts.clone())?;
    Ok(QPath {
        legs: g
            .parts
            .iter()
            .cloned()
            .zip(units.units().iter().copied())
            .collect(),
    })
}
