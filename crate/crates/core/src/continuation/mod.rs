//! Disk-chain analytic continuation of truncated power series with
//! quaternion coefficients.
//!
//! A germ `Σ (w − c)ᵏ a_k` is read inside one slice `ℂ_I`: the complex
//! increment acts on the left as `P_I(w − c)`, coefficients stay on the right.
//! Germs with a real center are valid on every slice, which is how
//! [`continue_npart`] crosses between slices at real junctions.

mod counterexample;
pub mod cut;

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

pub use counterexample::{
    counterexample_report, f_cut, f_plus, gamma_coordinate, gamma_s, log_germ_at_anchor,
    probe_circle, probe_circle_at, t_of, CounterexampleConfig, CounterexampleReport, CutFamily,
    SweepRow, Witness, CUT_ANCHOR, T_MAX,
};

use crate::paths::{lift, NPartPath, PlanarPath, EPS_JUNCTION};
use crate::quaternion::{embed, slice_scale, ImaginaryUnit, Quaternion};
use crate::slice_calculus::UnitTuple;
use crate::{Complex, Error, Result};

/// Step policy and truncation controls for [`continue_along`].
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuationOptions {
    /// Truncation order `M`; germs carry `a_0..=a_M`.
    pub order: usize,
    /// Number of trailing coefficients used by the root test.
    pub tail: usize,
    /// Multiplies the root-test estimate to give the working radius.
    pub safety: f64,
    /// Each recentring moves at most this fraction of the working radius.
    pub step_fraction: f64,
    /// Radius below which continuation reports a singularity.
    pub r_min: f64,
    /// Radius used when the tail vanishes (polynomial germs).
    pub r_max: f64,
    /// Relative agreement required between the order `M` and `M/2` partial sums.
    pub tol: f64,
    pub max_steps: usize,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        Self {
            order: 64,
            tail: 16,
            safety: 0.5,
            step_fraction: 0.4,
            r_min: 1e-8,
            r_max: 1e4,
            tol: 1e-12,
            max_steps: 100_000,
        }
    }
}

/// A first-order linear ODE `P(w)·f'(w) = Q(w)·f(w) + S(w)`.
///
/// `P` and `Q` have complex coefficients that act on the left through the slice
/// embedding; `S(w) = Σ wᵏ s_k` has quaternion coefficients. A germ carrying its
/// ODE regenerates every coefficient past `a_0` after each recentring, so its
/// accuracy does not decay along a chain of disks.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearOde {
    p: Vec<Complex>,
    q: Vec<Complex>,
    s: Vec<Quaternion>,
}

impl LinearOde {
    /// Coefficient lists in increasing powers of `w`; `p` must not vanish identically.
    pub fn new(p: Vec<Complex>, q: Vec<Complex>, s: Vec<Quaternion>) -> Result<Self> {
        if p.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::LengthMismatch {
                expected: 1,
                got: 0,
            });
        }
        Ok(Self { p, q, s })
    }

    /// `(w − b)·f' = 1`, solved by `log(w − b)`.
    pub fn log(branch: Complex) -> Self {
        Self {
            p: vec![-branch, Complex::new(1.0, 0.0)],
            q: Vec::new(),
            s: vec![Quaternion::ONE],
        }
    }

    /// `(w − p)·f' = −f`, solved by `1/(w − p)`.
    pub fn reciprocal(pole: Complex) -> Self {
        Self {
            p: vec![-pole, Complex::new(1.0, 0.0)],
            q: vec![Complex::new(-1.0, 0.0)],
            s: Vec::new(),
        }
    }

    /// `f' = λ·f`, solved by `exp(λw)·a`.
    pub fn exponential(lambda: Complex) -> Self {
        Self {
            p: vec![Complex::new(1.0, 0.0)],
            q: vec![lambda],
            s: Vec::new(),
        }
    }

    /// Taylor coefficients `a_0..=a_m` at `center` of the solution with `f(center) = a0`.
    pub fn coefficients(
        &self,
        center: Complex,
        a0: Quaternion,
        m: usize,
        unit: ImaginaryUnit,
    ) -> Result<Vec<Quaternion>> {
        let p = shift_complex(&self.p, center);
        let q = shift_complex(&self.q, center);
        let s = shift_quaternion(&self.s, center, unit);
        let p0 = p[0];
        if p0.norm() == 0.0 {
            return Err(Error::SingularityHit {
                x: center.re,
                y: center.im,
                radius: 0.0,
            });
        }
        let lead = embed(p0.inv(), unit);
        let mut a = Vec::with_capacity(m + 1);
        a.push(a0);
        for n in 0..m {
            let mut rhs = s.get(n).copied().unwrap_or(Quaternion::ZERO);
            for (i, qi) in q.iter().enumerate().take(n + 1) {
                rhs += slice_scale(*qi, unit, a[n - i]);
            }
            for (i, pi) in p.iter().enumerate().take(n + 1).skip(1) {
                rhs -= slice_scale(*pi * (n + 1 - i) as f64, unit, a[n + 1 - i]);
            }
            a.push(lead * rhs / (n + 1) as f64);
        }
        Ok(a)
    }
}

/// Coefficients of `c ↦ Σ (center + u)ᵏ c_k` in powers of `u`.
fn shift_complex(c: &[Complex], center: Complex) -> Vec<Complex> {
    let mut a = c.to_vec();
    if a.is_empty() {
        a.push(Complex::new(0.0, 0.0));
    }
    let n = a.len() - 1;
    for i in 0..n {
        for k in (i..n).rev() {
            let next = a[k + 1];
            a[k] += center * next;
        }
    }
    a
}

fn shift_quaternion(c: &[Quaternion], d: Complex, unit: ImaginaryUnit) -> Vec<Quaternion> {
    let mut a = c.to_vec();
    if a.is_empty() {
        return a;
    }
    let n = a.len() - 1;
    for i in 0..n {
        for k in (i..n).rev() {
            let next = a[k + 1];
            a[k] += slice_scale(d, unit, next);
        }
    }
    a
}

/// A truncated power series at a complex center.
///
/// Without an ODE the series is trusted only inside the disk it was built on:
/// recentring a truncated series reproduces the same polynomial, so nothing
/// beyond that disk is recoverable from it. Polynomial germs (vanishing tail)
/// are exact everywhere.
#[derive(Clone, Debug, PartialEq)]
pub struct HolomorphicGerm {
    center: Complex,
    radius: f64,
    coeffs: Vec<Quaternion>,
    ode: Option<LinearOde>,
    trust: Option<(Complex, f64)>,
}

/// Root-test radius over the trailing coefficients, scaled by the safety factor.
pub fn estimate_radius(coeffs: &[Quaternion], opts: &ContinuationOptions) -> f64 {
    let m = coeffs.len().saturating_sub(1);
    let lo = (m + 1).saturating_sub(opts.tail).max(1);
    let mut est = f64::INFINITY;
    for (k, a) in coeffs.iter().enumerate().take(m + 1).skip(lo) {
        let n = a.norm();
        if n > 0.0 {
            est = est.min(n.powf(-1.0 / k as f64));
        }
    }
    if est.is_infinite() {
        opts.r_max
    } else {
        (opts.safety * est).min(opts.r_max)
    }
}

/// Lists shorter than the working order are taken as exact polynomials.
fn is_polynomial(coeffs: &[Quaternion], opts: &ContinuationOptions) -> bool {
    coeffs.len() <= opts.order || tail_vanishes(coeffs, opts)
}

fn tail_vanishes(coeffs: &[Quaternion], opts: &ContinuationOptions) -> bool {
    let m = coeffs.len().saturating_sub(1);
    let lo = (m + 1).saturating_sub(opts.tail).max(1);
    coeffs.iter().skip(lo).all(|a| *a == Quaternion::ZERO)
}

impl HolomorphicGerm {
    /// Germ with the radius estimated under default options.
    pub fn new(center: Complex, coeffs: Vec<Quaternion>) -> Result<Self> {
        Self::with_options(center, coeffs, &ContinuationOptions::default())
    }

    pub fn with_options(
        center: Complex,
        coeffs: Vec<Quaternion>,
        opts: &ContinuationOptions,
    ) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::LengthMismatch {
                expected: 1,
                got: 0,
            });
        }
        let (radius, trust) = if is_polynomial(&coeffs, opts) {
            (opts.r_max, None)
        } else {
            let radius = estimate_radius(&coeffs, opts);
            (radius, Some((center, radius)))
        };
        Ok(Self {
            center,
            radius,
            coeffs,
            ode: None,
            trust,
        })
    }

    /// The solution of `ode` with value `a0` at `center`, to order `opts.order`.
    pub fn from_ode(
        center: Complex,
        a0: Quaternion,
        ode: LinearOde,
        unit: ImaginaryUnit,
        opts: &ContinuationOptions,
    ) -> Result<Self> {
        let coeffs = ode.coefficients(center, a0, opts.order, unit)?;
        Ok(Self {
            center,
            radius: estimate_radius(&coeffs, opts),
            coeffs,
            ode: Some(ode),
            trust: None,
        })
    }

    /// `p(q) = Σ qᵏ a_k` as a germ at the real point 0.
    pub fn polynomial(coeffs: Vec<Quaternion>) -> Result<Self> {
        Self::new(Complex::new(0.0, 0.0), coeffs)
    }

    /// `log(w − branch)` at `center`, principal value at the center, in slice `unit`.
    pub fn log(
        center: Complex,
        branch: Complex,
        order: usize,
        unit: ImaginaryUnit,
    ) -> Result<Self> {
        let base = center - branch;
        if base.norm() == 0.0 {
            return Err(Error::EvaluationOutsideDomain {
                x: center.re,
                y: center.im,
            });
        }
        let opts = ContinuationOptions {
            order,
            ..ContinuationOptions::default()
        };
        Self::from_ode(
            center,
            embed(base.ln(), unit),
            LinearOde::log(branch),
            unit,
            &opts,
        )
    }

    /// `1/(w − pole)` at `center` in slice `unit`.
    pub fn reciprocal(
        center: Complex,
        pole: Complex,
        order: usize,
        unit: ImaginaryUnit,
    ) -> Result<Self> {
        let base = center - pole;
        if base.norm() == 0.0 {
            return Err(Error::EvaluationOutsideDomain {
                x: center.re,
                y: center.im,
            });
        }
        let opts = ContinuationOptions {
            order,
            ..ContinuationOptions::default()
        };
        Self::from_ode(
            center,
            embed(base.inv(), unit),
            LinearOde::reciprocal(pole),
            unit,
            &opts,
        )
    }

    pub fn center(&self) -> Complex {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn ode(&self) -> Option<&LinearOde> {
        self.ode.as_ref()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The value at the center, `a_0`.
    pub fn value(&self) -> Quaternion {
        self.coeffs[0]
    }

    fn horner(&self, dq: Quaternion, upto: usize) -> Quaternion {
        let mut s = self.coeffs[upto];
        for a in self.coeffs[..upto].iter().rev() {
            s = dq * s + *a;
        }
        s
    }

    /// Partial sums of order `M` and `M/2` at `w`.
    fn eval_pair(&self, w: Complex, unit: ImaginaryUnit) -> (Quaternion, Quaternion) {
        let dq = embed(w - self.center, unit);
        let m = self.order();
        (self.horner(dq, m), self.horner(dq, m / 2))
    }

    /// The series at `w ∈ ℂ_unit`; refuses points outside the working radius.
    pub fn eval(&self, w: Complex, unit: ImaginaryUnit) -> Result<Quaternion> {
        if (w - self.center).norm() > self.radius {
            return Err(Error::EvaluationOutsideDomain { x: w.re, y: w.im });
        }
        Ok(self.horner(embed(w - self.center, unit), self.order()))
    }

    /// Pads with zeros or truncates to order `m`.
    ///
    /// A germ carrying an ODE keeps its coefficients exact by regenerating them.
    pub fn with_order(&self, m: usize, unit: ImaginaryUnit) -> Result<Self> {
        let mut out = self.clone();
        match &self.ode {
            Some(ode) => out.coeffs = ode.coefficients(self.center, self.value(), m, unit)?,
            None => out.coeffs.resize(m + 1, Quaternion::ZERO),
        }
        Ok(out)
    }

    /// The germ at `new_center`, which must lie inside the working radius.
    pub fn recentred(
        &self,
        new_center: Complex,
        unit: ImaginaryUnit,
        opts: &ContinuationOptions,
    ) -> Result<Self> {
        let d = new_center - self.center;
        if d.norm() > self.radius {
            return Err(Error::EvaluationOutsideDomain {
                x: new_center.re,
                y: new_center.im,
            });
        }
        if d.re == 0.0 && d.im == 0.0 {
            return Ok(self.clone());
        }
        if let Some(ode) = &self.ode {
            let a0 = self.horner(embed(d, unit), self.order());
            let coeffs = ode.coefficients(new_center, a0, self.order(), unit)?;
            return Ok(Self {
                center: new_center,
                radius: estimate_radius(&coeffs, opts),
                coeffs,
                ode: self.ode.clone(),
                trust: None,
            });
        }
        let a = shift_quaternion(&self.coeffs, d, unit);
        let mut radius = estimate_radius(&a, opts);
        if let Some((c0, r0)) = self.trust {
            radius = radius.min(r0 - (new_center - c0).norm()).max(0.0);
        }
        Ok(Self {
            center: new_center,
            radius,
            coeffs: a,
            ode: None,
            trust: self.trust,
        })
    }

    /// Moves the center onto ℝ, dropping an imaginary residue below [`EPS_JUNCTION`].
    fn snap_real(mut self) -> Result<Self> {
        if self.center.im.abs() > EPS_JUNCTION {
            return Err(Error::NonRealCenter {
                imag: self.center.im,
            });
        }
        self.center.im = 0.0;
        Ok(self)
    }
}

/// Continues `germ` along `path` inside `ℂ_unit`, returning the germ at `path(1)`.
pub fn continue_along(
    germ: &HolomorphicGerm,
    path: &PlanarPath,
    unit: ImaginaryUnit,
    opts: &ContinuationOptions,
) -> Result<HolomorphicGerm> {
    let mut g = germ.with_order(opts.order, unit)?;
    g = g.recentred(path.start(), unit, opts)?;
    let speed = path.speed_bound();
    let mut t = 0.0;
    let mut steps = 0;
    while t < 1.0 {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::TruncationBudgetExceeded {
                steps: opts.max_steps,
            });
        }
        if g.radius < opts.r_min || !g.radius.is_finite() {
            return Err(singularity(&g));
        }
        let reach = opts.step_fraction * g.radius;
        let mut dt = if speed > 0.0 {
            (reach / speed).min(1.0 - t)
        } else {
            1.0 - t
        };
        let mut halvings = 0;
        let t_new = loop {
            let t_new = if dt >= 1.0 - t { 1.0 } else { t + dt };
            let (full, half) = g.eval_pair(path.eval(t_new), unit);
            if full.is_finite() && (full - half).norm() <= opts.tol * (1.0 + full.norm()) {
                break t_new;
            }
            dt *= 0.5;
            halvings += 1;
            if halvings > 60 || dt * speed < opts.r_min {
                return Err(singularity(&g));
            }
        };
        g = g.recentred(path.eval(t_new), unit, opts)?;
        t = t_new;
    }
    Ok(g)
}

fn singularity(g: &HolomorphicGerm) -> Error {
    Error::SingularityHit {
        x: g.center.re,
        y: g.center.im,
        radius: g.radius,
    }
}

/// Continues through consecutive legs of one slice.
pub fn continue_chain(
    germ: &HolomorphicGerm,
    legs: &[PlanarPath],
    unit: ImaginaryUnit,
    opts: &ContinuationOptions,
) -> Result<HolomorphicGerm> {
    let mut g = germ.clone();
    for leg in legs {
        g = continue_along(&g, leg, unit, opts)?;
    }
    Ok(g)
}

/// Value at the `units`-lifted endpoint of `g`, continuing leg `ı` in slice `I_ı`.
pub fn continue_npart(
    germ: &HolomorphicGerm,
    g: &NPartPath,
    units: &UnitTuple,
    opts: &ContinuationOptions,
) -> Result<Quaternion> {
    let lifted = lift(g, units)?;
    let mut current = germ.clone().snap_real()?;
    let n = lifted.n();
    for (idx, (leg, unit)) in lifted.legs().iter().enumerate() {
        current = continue_along(&current, leg, *unit, opts)?;
        if idx + 1 < n {
            current = current.snap_real()?;
        }
    }
    Ok(current.value())
}

/// `a_0` after continuing around `loop_path`, minus the value at its base point.
pub fn monodromy_gap(
    germ: &HolomorphicGerm,
    loop_path: &PlanarPath,
    unit: ImaginaryUnit,
    opts: &ContinuationOptions,
) -> Result<Quaternion> {
    let base = loop_path.start();
    let gap = (loop_path.end() - base).norm();
    if gap > EPS_JUNCTION {
        return Err(Error::OpenLoop { gap });
    }
    let before = germ.eval(base, unit)?;
    let after = continue_along(germ, loop_path, unit, opts)?;
    Ok(after.value() - before)
}
