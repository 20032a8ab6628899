//! Sampled predicates for the slice topology.
//!
//! A [`SliceSet`] describes, for every unit `J`, the planar region of
//! `S ∩ ℂ_J` in the coordinates `x + yJ`, `y ∈ ℝ`. Predicates sample those
//! regions and return the witnesses they relied on.

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::continuation::cut::Cut;
use crate::continuation::t_of;
use crate::quaternion::{decompose, embed, ImaginaryUnit, Quaternion};
use crate::Complex;

/// Window used when a region has no bounding box.
pub const DEFAULT_HALF_WIDTH: f64 = 4.0;

/// Default per-slice pixel grid edge.
pub const DEFAULT_GRID: usize = 512;

/// A region of the plane, in the coordinates of one slice.
#[derive(Clone, Debug, PartialEq)]
pub enum PlanarRegion {
    Everything,
    Empty,
    Disk {
        center: Complex,
        radius: f64,
        closed: bool,
    },
    /// `((x − cx)/a)² + ((y − cy)/b)² < 1`.
    Ellipse {
        center: Complex,
        semi_x: f64,
        semi_y: f64,
        closed: bool,
    },
    /// `⟨z, normal⟩ < offset` with `|normal| = 1`.
    HalfPlane {
        normal: Complex,
        offset: f64,
        closed: bool,
    },
    /// Points farther than `clearance` from a polyline.
    PathComplement {
        points: Vec<Complex>,
        clearance: f64,
    },
    /// `ℂ ∖ (γ_upper ∪ conj γ_lower)` for the cut family.
    CutComplement {
        upper: f64,
        lower: f64,
    },
    /// `B_ℍ(center, radius) ∩ ℂ_unit`, evaluated in ℍ so the real trace is exact.
    BallSlice {
        center: Quaternion,
        radius: f64,
        unit: ImaginaryUnit,
        closed: bool,
    },
    /// Only the real points of the inner region.
    RealTrace(Box<PlanarRegion>),
    /// Points whose sphere `x + |y|·𝕊` meets `inner` at one of `units`.
    Orbit {
        inner: Box<SliceSet>,
        units: Vec<ImaginaryUnit>,
    },
    Complement(Box<PlanarRegion>),
    Union(Vec<PlanarRegion>),
    Intersection(Vec<PlanarRegion>),
}

/// Axis-aligned box `(min, max)`.
pub type Window = (Complex, Complex);

fn polyline_distance(points: &[Complex], z: Complex) -> f64 {
    if points.len() == 1 {
        return (z - points[0]).norm();
    }
    points
        .windows(2)
        .map(|w| {
            let d = w[1] - w[0];
            let len2 = d.norm_sqr();
            let u = if len2 == 0.0 {
                0.0
            } else {
                (((z - w[0]) * d.conj()).re / len2).clamp(0.0, 1.0)
            };
            (z - (w[0] + d * u)).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

fn merge(a: Option<Window>, b: Option<Window>) -> Option<Window> {
    match (a, b) {
        (Some((a0, a1)), Some((b0, b1))) => Some((
            Complex::new(a0.re.min(b0.re), a0.im.min(b0.im)),
            Complex::new(a1.re.max(b1.re), a1.im.max(b1.im)),
        )),
        _ => None,
    }
}

fn circle_points(center: Complex, a: f64, b: f64, n: usize) -> Vec<Complex> {
    // the four axis points are exact; the rest are rounded
    let mut out = vec![
        center + Complex::new(a, 0.0),
        center - Complex::new(a, 0.0),
        center + Complex::new(0.0, b),
        center - Complex::new(0.0, b),
    ];
    for k in 0..n {
        let (s, c) = (2.0 * PI * (k as f64 + 0.5) / n as f64).sin_cos();
        out.push(center + Complex::new(a * c, b * s));
    }
    out
}

impl PlanarRegion {
    pub fn disk(center: Complex, radius: f64) -> Self {
        Self::Disk {
            center,
            radius,
            closed: false,
        }
    }

    pub fn closed_disk(center: Complex, radius: f64) -> Self {
        Self::Disk {
            center,
            radius,
            closed: true,
        }
    }

    /// Open annulus `r0 < |z − center| < r1`.
    pub fn annulus(center: Complex, r0: f64, r1: f64) -> Self {
        Self::Intersection(vec![
            Self::disk(center, r1),
            Self::Complement(Box::new(Self::closed_disk(center, r0))),
        ])
    }

    /// The planar disk of `B_ℍ(center, radius) ∩ ℂ_unit`, if nonempty.
    fn ball_disk(center: Quaternion, radius: f64, unit: ImaginaryUnit) -> Option<(Complex, f64)> {
        let v = center.imag();
        let along = v.dot(unit.as_quaternion());
        let perp2 = (v.norm_sqr() - along * along).max(0.0);
        let r2 = radius * radius - perp2;
        if r2 < 0.0 {
            None
        } else {
            Some((Complex::new(center.w, along), r2.sqrt()))
        }
    }

    pub fn contains(&self, z: Complex) -> bool {
        match self {
            Self::Everything => true,
            Self::Empty => false,
            Self::Disk {
                center,
                radius,
                closed,
            } => {
                let d2 = (z - center).norm_sqr();
                if *closed {
                    d2 <= radius * radius
                } else {
                    d2 < radius * radius
                }
            }
            Self::Ellipse {
                center,
                semi_x,
                semi_y,
                closed,
            } => {
                let (x, y) = ((z.re - center.re) / semi_x, (z.im - center.im) / semi_y);
                let rho2 = x * x + y * y;
                if *closed {
                    rho2 <= 1.0
                } else {
                    rho2 < 1.0
                }
            }
            Self::HalfPlane {
                normal,
                offset,
                closed,
            } => {
                let p = z.re * normal.re + z.im * normal.im;
                if *closed {
                    p <= *offset
                } else {
                    p < *offset
                }
            }
            Self::BallSlice {
                center,
                radius,
                unit,
                closed,
            } => {
                let d2 = (embed(z, *unit) - *center).norm_sqr();
                if *closed {
                    d2 <= radius * radius
                } else {
                    d2 < radius * radius
                }
            }
            Self::PathComplement { .. } | Self::CutComplement { .. } => self.margin(z) > 0.0,
            Self::RealTrace(inner) => z.im == 0.0 && inner.contains(z),
            Self::Orbit { inner, units } => {
                let y = z.im.abs();
                units
                    .iter()
                    .any(|u| inner.contains(embed(Complex::new(z.re, y), *u)))
            }
            Self::Complement(inner) => !inner.contains(z),
            Self::Union(parts) => parts.iter().any(|p| p.contains(z)),
            Self::Intersection(parts) => parts.iter().all(|p| p.contains(z)),
        }
    }

    /// Signed clearance: for members, a lower bound on the distance to the
    /// complement; for non-members, a non-positive number.
    pub fn margin(&self, z: Complex) -> f64 {
        match self {
            Self::Everything => f64::INFINITY,
            Self::Empty => f64::NEG_INFINITY,
            Self::Disk { center, radius, .. } => ball_margin(*radius, (z - center).norm_sqr()),
            Self::Ellipse {
                center,
                semi_x,
                semi_y,
                ..
            } => {
                let (x, y) = ((z.re - center.re) / semi_x, (z.im - center.im) / semi_y);
                semi_x.min(*semi_y) * ball_margin(1.0, x * x + y * y)
            }
            Self::HalfPlane { normal, offset, .. } => {
                offset - (z.re * normal.re + z.im * normal.im)
            }
            Self::PathComplement { points, clearance } => polyline_distance(points, z) - clearance,
            Self::CutComplement { upper, lower } => {
                let up = Cut::new(*upper).expect("cut parameter in [0, 1]");
                let lo = Cut::new(*lower).expect("cut parameter in [0, 1]");
                up.distance(z).min(lo.distance(z.conj()))
            }
            Self::BallSlice {
                center,
                radius,
                unit,
                ..
            } => ball_margin(*radius, (embed(z, *unit) - *center).norm_sqr()),
            Self::RealTrace(inner) => {
                if z.im == 0.0 {
                    inner.margin(z).min(0.0)
                } else {
                    -z.im.abs()
                }
            }
            Self::Orbit { inner, units } => {
                let y = z.im.abs();
                units
                    .iter()
                    .map(|u| inner.margin(embed(Complex::new(z.re, y), *u)))
                    .fold(f64::NEG_INFINITY, f64::max)
            }
            Self::Complement(inner) => -inner.margin(z),
            Self::Union(parts) => parts
                .iter()
                .map(|p| p.margin(z))
                .fold(f64::NEG_INFINITY, f64::max),
            Self::Intersection(parts) => parts
                .iter()
                .map(|p| p.margin(z))
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Bounding box, or `None` when unbounded or unknown.
    pub fn bbox(&self) -> Option<Window> {
        let boxed =
            |c: Complex, a: f64, b: f64| Some((c - Complex::new(a, b), c + Complex::new(a, b)));
        match self {
            Self::Disk { center, radius, .. } => boxed(*center, *radius, *radius),
            Self::Ellipse {
                center,
                semi_x,
                semi_y,
                ..
            } => boxed(*center, *semi_x, *semi_y),
            Self::BallSlice {
                center,
                radius,
                unit,
                ..
            } => match Self::ball_disk(*center, *radius, *unit) {
                Some((c, r)) => boxed(c, r, r),
                None => Some((Complex::new(0.0, 0.0), Complex::new(0.0, 0.0))),
            },
            Self::Empty => Some((Complex::new(0.0, 0.0), Complex::new(0.0, 0.0))),
            Self::RealTrace(inner) => inner
                .bbox()
                .map(|(lo, hi)| (Complex::new(lo.re, 0.0), Complex::new(hi.re, 0.0))),
            Self::Union(parts) => parts
                .iter()
                .map(Self::bbox)
                .reduce(merge)
                .unwrap_or(Some((Complex::new(0.0, 0.0), Complex::new(0.0, 0.0)))),
            Self::Intersection(parts) => {
                let boxes: Vec<Window> = parts.iter().filter_map(Self::bbox).collect();
                if boxes.is_empty() {
                    return None;
                }
                let mut lo = boxes[0].0;
                let mut hi = boxes[0].1;
                for (a, b) in &boxes[1..] {
                    lo = Complex::new(lo.re.max(a.re), lo.im.max(a.im));
                    hi = Complex::new(hi.re.min(b.re), hi.im.min(b.im));
                }
                Some((lo, hi))
            }
            Self::Orbit { inner, .. } => inner
                .radial_bound()
                .map(|(x0, x1, r)| (Complex::new(x0, -r), Complex::new(x1, r))),
            _ => None,
        }
    }

    /// Points on the boundary, including exact axis points of disks and ellipses.
    pub fn boundary_samples(&self, n: usize) -> Vec<Complex> {
        match self {
            Self::Disk { center, radius, .. } => circle_points(*center, *radius, *radius, n),
            Self::Ellipse {
                center,
                semi_x,
                semi_y,
                ..
            } => circle_points(*center, *semi_x, *semi_y, n),
            Self::BallSlice {
                center,
                radius,
                unit,
                ..
            } => match Self::ball_disk(*center, *radius, *unit) {
                Some((c, r)) => circle_points(c, r, r, n),
                None => Vec::new(),
            },
            Self::CutComplement { upper, lower } => {
                let up = Cut::new(*upper).expect("cut parameter in [0, 1]");
                let lo = Cut::new(*lower).expect("cut parameter in [0, 1]");
                (0..n)
                    .flat_map(|k| {
                        let t = 0.9 * k as f64 / n as f64;
                        [up.point(t), lo.point(t).conj()]
                    })
                    .collect()
            }
            Self::Complement(inner) => inner.boundary_samples(n),
            Self::Union(parts) | Self::Intersection(parts) => {
                parts.iter().flat_map(|p| p.boundary_samples(n)).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Mirror image under `y ↦ −y`.
    pub fn reflect(&self) -> Self {
        match self {
            Self::Disk {
                center,
                radius,
                closed,
            } => Self::Disk {
                center: center.conj(),
                radius: *radius,
                closed: *closed,
            },
            Self::Ellipse {
                center,
                semi_x,
                semi_y,
                closed,
            } => Self::Ellipse {
                center: center.conj(),
                semi_x: *semi_x,
                semi_y: *semi_y,
                closed: *closed,
            },
            Self::HalfPlane {
                normal,
                offset,
                closed,
            } => Self::HalfPlane {
                normal: normal.conj(),
                offset: *offset,
                closed: *closed,
            },
            Self::PathComplement { points, clearance } => Self::PathComplement {
                points: points.iter().map(|p| p.conj()).collect(),
                clearance: *clearance,
            },
            Self::CutComplement { upper, lower } => Self::CutComplement {
                upper: *lower,
                lower: *upper,
            },
            Self::BallSlice {
                center,
                radius,
                unit,
                closed,
            } => Self::BallSlice {
                center: *center,
                radius: *radius,
                unit: -*unit,
                closed: *closed,
            },
            Self::RealTrace(inner) => Self::RealTrace(Box::new(inner.reflect())),
            Self::Complement(inner) => Self::Complement(Box::new(inner.reflect())),
            Self::Union(parts) => Self::Union(parts.iter().map(Self::reflect).collect()),
            Self::Intersection(parts) => {
                Self::Intersection(parts.iter().map(Self::reflect).collect())
            }
            Self::Everything | Self::Empty | Self::Orbit { .. } => self.clone(),
        }
    }
}

/// A subset of ℍ described slice by slice.
#[derive(Clone, Debug, PartialEq)]
pub enum SliceSet {
    Whole,
    /// Euclidean ball `B_ℍ(center, radius)`.
    Ball {
        center: Quaternion,
        radius: f64,
        closed: bool,
    },
    /// `⋃_J U_J` with `U_J` the ellipse `x² + y²/dist(J, ℂ_I) < 1`, the unit disk at `J = ±I`.
    EllipseUnion {
        base: ImaginaryUnit,
    },
    /// `Ω = ⋃_J U_J⁺` of the cut family based at `base`.
    OmegaCut {
        base: ImaginaryUnit,
    },
    /// `{x + yJ : (x, y) ∈ D or (x, −y) ∈ D}` for every `J`.
    Axial(PlanarRegion),
    /// A region inside `ℂ_unit` only; other slices see its real trace.
    SingleSlice {
        unit: ImaginaryUnit,
        region: PlanarRegion,
    },
    Union(Vec<SliceSet>),
    Intersection(Vec<SliceSet>),
    /// Sampled axially symmetric completion.
    Completion {
        inner: Box<SliceSet>,
        units: Vec<ImaginaryUnit>,
    },
}

impl SliceSet {
    pub fn ball(center: Quaternion, radius: f64) -> Self {
        Self::Ball {
            center,
            radius,
            closed: false,
        }
    }

    pub fn closed_ball(center: Quaternion, radius: f64) -> Self {
        Self::Ball {
            center,
            radius,
            closed: true,
        }
    }

    /// `S ∩ ℂ_J` in the coordinates `x + yJ`.
    pub fn region(&self, j: ImaginaryUnit) -> PlanarRegion {
        match self {
            Self::Whole => PlanarRegion::Everything,
            Self::Ball {
                center,
                radius,
                closed,
            } => PlanarRegion::BallSlice {
                center: *center,
                radius: *radius,
                unit: j,
                closed: *closed,
            },
            Self::EllipseUnion { base } => {
                let d = j.dist_to_slice(*base);
                // exact test: the ellipses degenerate continuously as d → 0
                if d == 0.0 {
                    PlanarRegion::disk(Complex::new(0.0, 0.0), 1.0)
                } else {
                    PlanarRegion::Ellipse {
                        center: Complex::new(0.0, 0.0),
                        semi_x: 1.0,
                        semi_y: d.sqrt(),
                        closed: false,
                    }
                }
            }
            Self::OmegaCut { base } => PlanarRegion::CutComplement {
                upper: t_of(j, *base),
                lower: t_of(-j, *base),
            },
            Self::Axial(d) => PlanarRegion::Union(vec![d.clone(), d.reflect()]),
            Self::SingleSlice { unit, region } => {
                if j.dist_to_slice(*unit) == 0.0 {
                    if j.dot(*unit) > 0.0 {
                        region.clone()
                    } else {
                        region.reflect()
                    }
                } else {
                    PlanarRegion::RealTrace(Box::new(region.clone()))
                }
            }
            Self::Union(parts) => PlanarRegion::Union(parts.iter().map(|p| p.region(j)).collect()),
            Self::Intersection(parts) => {
                PlanarRegion::Intersection(parts.iter().map(|p| p.region(j)).collect())
            }
            Self::Completion { inner, units } => {
                let mut cand: Vec<ImaginaryUnit> = Vec::new();
                for u in units
                    .iter()
                    .copied()
                    .chain(inner.distinguished_units())
                    .chain([j])
                {
                    cand.push(u);
                    cand.push(-u);
                }
                PlanarRegion::Orbit {
                    inner: inner.clone(),
                    units: cand,
                }
            }
        }
    }

    /// Units at which the description changes form.
    pub fn distinguished_units(&self) -> Vec<ImaginaryUnit> {
        match self {
            Self::EllipseUnion { base } | Self::OmegaCut { base } => vec![*base],
            Self::SingleSlice { unit, .. } => vec![*unit],
            Self::Ball { center, .. } => ImaginaryUnit::try_from_quaternion(
                center.imag() / center.imag().norm().max(f64::MIN_POSITIVE),
            )
            .map(|u| vec![u])
            .unwrap_or_default(),
            Self::Union(parts) | Self::Intersection(parts) => {
                parts.iter().flat_map(Self::distinguished_units).collect()
            }
            Self::Completion { inner, .. } => inner.distinguished_units(),
            Self::Whole | Self::Axial(_) => Vec::new(),
        }
    }

    fn split(q: Quaternion) -> (ImaginaryUnit, Complex) {
        let p = decompose(q);
        (p.unit.unwrap_or(ImaginaryUnit::I), Complex::new(p.x, p.y))
    }

    pub fn contains(&self, q: Quaternion) -> bool {
        let (j, z) = Self::split(q);
        self.region(j).contains(z)
    }

    pub fn margin(&self, q: Quaternion) -> f64 {
        let (j, z) = Self::split(q);
        self.region(j).margin(z)
    }

    /// `(x_min, x_max, |y|_max)` over all slices, when known.
    fn radial_bound(&self) -> Option<(f64, f64, f64)> {
        match self {
            Self::Ball { center, radius, .. } => {
                let v = center.imag().norm();
                Some((center.w - radius, center.w + radius, v + radius))
            }
            Self::EllipseUnion { .. } => Some((-1.0, 1.0, 1.0)),
            Self::Axial(d) | Self::SingleSlice { region: d, .. } => d
                .bbox()
                .map(|(lo, hi)| (lo.re, hi.re, lo.im.abs().max(hi.im.abs()))),
            Self::Union(parts) => parts
                .iter()
                .map(Self::radial_bound)
                .try_fold((f64::INFINITY, f64::NEG_INFINITY, 0.0f64), |acc, b| {
                    b.map(|(x0, x1, r)| (acc.0.min(x0), acc.1.max(x1), acc.2.max(r)))
                }),
            Self::Intersection(parts) => parts
                .iter()
                .filter_map(Self::radial_bound)
                .reduce(|a, b| (a.0.max(b.0), a.1.min(b.1), a.2.min(b.2))),
            Self::Completion { inner, .. } => inner.radial_bound(),
            Self::Whole | Self::OmegaCut { .. } => None,
        }
    }
}

/// `r − √d2` written so its sign agrees with the `d2 < r²` membership test.
fn ball_margin(r: f64, d2: f64) -> f64 {
    (r * r - d2) / (r + d2.sqrt())
}

fn window_for(region: &PlanarRegion) -> Window {
    match region.bbox() {
        Some((lo, hi)) => {
            let pad = 0.01 * ((hi.re - lo.re).max(hi.im - lo.im)).max(1e-300);
            (lo - Complex::new(pad, pad), hi + Complex::new(pad, pad))
        }
        None => (
            Complex::new(-DEFAULT_HALF_WIDTH, -DEFAULT_HALF_WIDTH),
            Complex::new(DEFAULT_HALF_WIDTH, DEFAULT_HALF_WIDTH),
        ),
    }
}

fn grid_point(w: &Window, n: usize, a: usize, b: usize) -> Complex {
    let fx = if n > 1 {
        a as f64 / (n - 1) as f64
    } else {
        0.5
    };
    let fy = if n > 1 {
        b as f64 / (n - 1) as f64
    } else {
        0.5
    };
    Complex::new(
        w.0.re + (w.1.re - w.0.re) * fx,
        w.0.im + (w.1.im - w.0.im) * fy,
    )
}

/// Per-slice result of [`is_slice_open_sampled`].
#[derive(Clone, Debug, PartialEq)]
pub struct SliceOpenness {
    pub unit: ImaginaryUnit,
    pub members: usize,
    /// Smallest certified disk radius over member samples.
    pub min_clearance: Option<f64>,
    /// The member sample attaining `min_clearance`.
    pub witness: Option<Complex>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SliceOpenReport {
    pub slices: Vec<SliceOpenness>,
    pub passed: bool,
}

/// Checks that every sampled member point of `S ∩ ℂ_J` has a positive clearance disk.
pub fn is_slice_open_sampled(
    s: &SliceSet,
    units: &[ImaginaryUnit],
    points_per_slice: usize,
) -> SliceOpenReport {
    let side = ((points_per_slice as f64).sqrt().ceil() as usize).max(2);
    let slices: Vec<SliceOpenness> = units
        .iter()
        .map(|&j| {
            let region = s.region(j);
            let w = window_for(&region);
            let mut out = SliceOpenness {
                unit: j,
                members: 0,
                min_clearance: None,
                witness: None,
            };
            let mut visit = |z: Complex| {
                if region.contains(z) {
                    out.members += 1;
                    let m = region.margin(z);
                    if out.min_clearance.is_none_or(|c| m < c) {
                        out.min_clearance = Some(m);
                        out.witness = Some(z);
                    }
                }
            };
            for a in 0..side {
                for b in 0..side {
                    visit(grid_point(&w, side, a, b));
                }
            }
            for z in region.boundary_samples(side) {
                visit(z);
            }
            out
        })
        .collect();
    let passed = slices
        .iter()
        .all(|sl| sl.min_clearance.is_none_or(|c| c > 0.0));
    SliceOpenReport { slices, passed }
}

/// The union of ellipses `U = ⋃_J U_J` based at `i`.
pub fn ellipse_union(i: ImaginaryUnit) -> SliceSet {
    SliceSet::EllipseUnion { base: i }
}

/// A point `center + (r/2)·J` outside `S` for some sampled `J`, if any.
pub fn euclidean_ball_escape(
    s: &SliceSet,
    center: Quaternion,
    r: f64,
    units: &[ImaginaryUnit],
) -> Option<(ImaginaryUnit, Quaternion)> {
    units.iter().find_map(|&j| {
        let p = center + j.as_quaternion() * (0.5 * r);
        (!s.contains(p)).then_some((j, p))
    })
}

/// `⋃ x + y𝕊` over members `x + yI`, with witnesses searched over `units`.
pub fn axially_symmetric_completion(s: &SliceSet, units: &[ImaginaryUnit]) -> SliceSet {
    SliceSet::Completion {
        inner: Box::new(s.clone()),
        units: units.to_vec(),
    }
}

/// The sampled real trace of a set.
#[derive(Clone, Debug, PartialEq)]
pub struct RealTraceReport {
    /// Maximal runs of member samples, as `(first, last)` sample abscissae.
    pub runs: Vec<(f64, f64)>,
    pub connected: bool,
}

/// Samples `S ∩ ℝ` at `resolution` points; connected iff at most one run.
pub fn is_real_connected(s: &SliceSet, resolution: usize) -> RealTraceReport {
    let region = s.region(ImaginaryUnit::I);
    let (lo, hi) = match region.bbox() {
        Some((a, b)) => {
            let pad = 0.01 * (b.re - a.re).max(1e-300);
            (a.re - pad, b.re + pad)
        }
        None => (-2.0 * DEFAULT_HALF_WIDTH, 2.0 * DEFAULT_HALF_WIDTH),
    };
    let n = resolution.max(2);
    let mut runs: Vec<(f64, f64)> = Vec::new();
    let mut open = false;
    for k in 0..n {
        let x = lo + (hi - lo) * k as f64 / (n - 1) as f64;
        if s.contains(Quaternion::real(x)) {
            if open {
                runs.last_mut().expect("open run").1 = x;
            } else {
                runs.push((x, x));
                open = true;
            }
        } else {
            open = false;
        }
    }
    let connected = runs.len() <= 1;
    RealTraceReport { runs, connected }
}

/// Connected components of one slice on a pixel grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceComponents {
    pub unit: ImaginaryUnit,
    pub count: usize,
    /// Whether each component contains a sampled real point.
    pub touches_real: Vec<bool>,
    pub sizes: Vec<usize>,
}

/// Component counts of `S ∩ ℂ_J` on a `grid × grid` pixel grid per unit.
pub fn slice_components(
    s: &SliceSet,
    units: &[ImaginaryUnit],
    grid: usize,
) -> Vec<SliceComponents> {
    units
        .iter()
        .map(|&j| {
            let region = s.region(j);
            let w = window_for(&region);
            let n = grid.max(2);
            let member: Vec<bool> = (0..n * n)
                .map(|idx| region.contains(grid_point(&w, n, idx % n, idx / n)))
                .collect();
            // rows straddling ℝ sit exactly half a pixel away; allow for rounding
            let half_pixel = 0.5 * (w.1.im - w.0.im) / (n - 1) as f64 * (1.0 + 1e-9);
            let mut label = vec![usize::MAX; n * n];
            let mut touches_real = Vec::new();
            let mut sizes = Vec::new();
            let mut queue = VecDeque::new();
            for start in 0..n * n {
                if !member[start] || label[start] != usize::MAX {
                    continue;
                }
                let id = sizes.len();
                let (mut size, mut touches) = (0, false);
                label[start] = id;
                queue.push_back(start);
                while let Some(idx) = queue.pop_front() {
                    size += 1;
                    let (a, b) = (idx % n, idx / n);
                    let z = grid_point(&w, n, a, b);
                    if !touches
                        && z.im.abs() <= half_pixel
                        && region.contains(Complex::new(z.re, 0.0))
                    {
                        touches = true;
                    }
                    let mut push = |a2: usize, b2: usize| {
                        let k = b2 * n + a2;
                        if member[k] && label[k] == usize::MAX {
                            label[k] = id;
                            queue.push_back(k);
                        }
                    };
                    if a > 0 {
                        push(a - 1, b);
                    }
                    if a + 1 < n {
                        push(a + 1, b);
                    }
                    if b > 0 {
                        push(a, b - 1);
                    }
                    if b + 1 < n {
                        push(a, b + 1);
                    }
                }
                sizes.push(size);
                touches_real.push(touches);
            }
            SliceComponents {
                unit: j,
                count: sizes.len(),
                touches_real,
                sizes,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::{approach_units, sample_sphere, SamplingScheme};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn units() -> Vec<ImaginaryUnit> {
        sample_sphere(24, SamplingScheme::Fibonacci)
    }

    #[test]
    fn unit_ball_is_slice_open() {
        let b = SliceSet::ball(Quaternion::ZERO, 1.0);
        assert!(is_slice_open_sampled(&b, &units(), 400).passed);
        let closed = SliceSet::Axial(PlanarRegion::closed_disk(c(0.0, 0.0), 1.0));
        let report = is_slice_open_sampled(&closed, &units(), 400);
        assert!(!report.passed);
        assert_eq!(report.slices[0].min_clearance, Some(0.0));
    }

    #[test]
    fn ellipse_union_membership() {
        let u = ellipse_union(ImaginaryUnit::I);
        assert!(u.contains(Quaternion::ZERO));
        let j = ImaginaryUnit::normalized(0.6, 0.8, 0.0).unwrap();
        let d = j.dist_to_slice(ImaginaryUnit::I);
        assert!((d - 0.8).abs() < 1e-15);
        assert!(u.contains(j.as_quaternion() * (0.99 * d.sqrt())));
        assert!(!u.contains(j.as_quaternion() * d.sqrt()));
        assert!(!u.contains(j.as_quaternion() * (1.01 * d.sqrt())));
    }

    #[test]
    fn completion_of_single_slice_disk() {
        let s = SliceSet::SingleSlice {
            unit: ImaginaryUnit::I,
            region: PlanarRegion::disk(c(0.0, 2.0), 0.1),
        };
        let done = axially_symmetric_completion(&s, &sample_sphere(32, SamplingScheme::Fibonacci));
        for j in sample_sphere(50, SamplingScheme::Random { seed: 3 }) {
            assert!(done.contains(j.as_quaternion() * 2.0));
            assert!(
                !s.contains(j.as_quaternion() * 2.0) || j.dist_to_slice(ImaginaryUnit::I) == 0.0
            );
        }
    }

    #[test]
    fn real_connectivity() {
        assert!(is_real_connected(&SliceSet::ball(Quaternion::ZERO, 1.0), 1000).connected);
        let two = SliceSet::Union(vec![
            SliceSet::ball(Quaternion::real(-2.0), 1.0),
            SliceSet::ball(Quaternion::real(2.0), 1.0),
        ]);
        let r = is_real_connected(&two, 1000);
        assert!(!r.connected);
        assert_eq!(r.runs.len(), 2);
        let off = SliceSet::ball(Quaternion::new(0.0, 0.0, 5.0, 0.0), 1.0);
        let r = is_real_connected(&off, 1000);
        assert!(r.runs.is_empty() && r.connected);
    }

    #[test]
    fn components() {
        let whole = slice_components(&SliceSet::Whole, &units()[..3], 64);
        assert!(whole.iter().all(|s| s.count == 1));
        let ann = SliceSet::Axial(PlanarRegion::annulus(c(0.0, 0.0), 1.0, 2.0));
        assert!(slice_components(&ann, &units()[..3], 128)
            .iter()
            .all(|s| s.count == 1));
        let two = SliceSet::Union(vec![
            SliceSet::ball(Quaternion::real(-2.0), 1.0),
            SliceSet::ball(Quaternion::real(2.0), 1.0),
        ]);
        let r = slice_components(&two, &units()[..3], 128);
        assert!(r
            .iter()
            .all(|s| s.count == 2 && s.touches_real.iter().all(|t| *t)));
    }

    #[test]
    fn reflection_and_real_consistency() {
        let sets = [
            SliceSet::ball(Quaternion::new(0.3, 0.2, -0.4, 0.1), 0.9),
            ellipse_union(ImaginaryUnit::K),
            SliceSet::OmegaCut {
                base: ImaginaryUnit::I,
            },
        ];
        let us = sample_sphere(12, SamplingScheme::Random { seed: 1 });
        for s in &sets {
            for &j in &us {
                let (a, b) = (s.region(j), s.region(-j));
                for k in 0..40 {
                    let x = -3.0 + 0.15 * k as f64;
                    let z = c(x, 0.37 * (k % 7) as f64 - 1.0);
                    assert_eq!(a.contains(z), b.contains(z.conj()));
                    assert_eq!(a.contains(c(x, 0.0)), s.region(us[0]).contains(c(x, 0.0)));
                }
            }
        }
    }

    #[test]
    fn ellipse_union_escapes_every_ball() {
        let u = ellipse_union(ImaginaryUnit::I);
        let approach = approach_units(ImaginaryUnit::I, 60);
        for k in 1..=20 {
            let r = 0.5f64.powi(k);
            assert!(euclidean_ball_escape(&u, Quaternion::ZERO, r, &approach).is_some());
        }
    }
}
