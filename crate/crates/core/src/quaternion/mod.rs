//! Quaternions, the sphere 𝕊 of imaginary units, and the slice planes ℂ_I.
//!
//! Every quaternion lies on some slice ℂ_I = {x + yI}; [`decompose`] finds it and
//! [`embed`] is the field isomorphism ℂ → ℂ_I sending i to I.

mod sampling;

use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Complex, Error, Result};

pub use sampling::{approach_units, sample_sphere, SamplingScheme};

/// Tolerance for unit and purity checks.
pub const EPS_UNIT: f64 = 1e-12;

/// Quaternions with norm at or below this are not inverted.
pub const EPS_ZERO: f64 = 1e-150;

/// Products of units are renormalized after this many factors.
pub const RENORM_INTERVAL: u32 = 64;

/// A quaternion `w + x i + y j + z k`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub const fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    #[inline]
    pub const fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// Imaginary part as a pure quaternion.
    #[inline]
    pub fn imag(self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    #[inline]
    pub fn vector(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Euclidean norm in ℝ⁴, computed without intermediate overflow.
    #[inline]
    pub fn norm(self) -> f64 {
        self.w.hypot(self.x).hypot(self.y.hypot(self.z))
    }

    /// Euclidean inner product in ℝ⁴.
    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// `conj(q) / |q|²`.
    pub fn inverse(self) -> Result<Self> {
        let norm = self.norm();
        if !(norm > EPS_ZERO) {
            return Err(Error::ZeroDivision { norm });
        }
        // divide twice by the norm so tiny or huge inputs do not under/overflow
        Ok(self.conj().scale(1.0 / norm).scale(1.0 / norm))
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    #[inline]
    pub fn dist(self, other: Self) -> f64 {
        (self - other).norm()
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.w, self.x, self.y, self.z)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, q: Self) -> Self {
        let p = self;
        Self::new(
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Self::real(w)
    }
}

/// An element of 𝕊: a purely imaginary quaternion of norm one, so `u² = -1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImaginaryUnit(Quaternion);

impl ImaginaryUnit {
    pub const I: Self = Self(Quaternion::I);
    pub const J: Self = Self(Quaternion::J);
    pub const K: Self = Self(Quaternion::K);

    /// Checks purity and unit norm within [`EPS_UNIT`].
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::try_from_quaternion(Quaternion::new(0.0, x, y, z))
    }

    pub fn try_from_quaternion(q: Quaternion) -> Result<Self> {
        let norm = q.imag().norm();
        if !q.is_finite() || q.w.abs() > EPS_UNIT || (norm - 1.0).abs() > EPS_UNIT {
            return Err(Error::NotUnit { real: q.w, norm });
        }
        Ok(Self(q.imag()))
    }

    /// Projects a nonzero vector onto 𝕊.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Quaternion::new(0.0, x, y, z);
        let norm = v.norm();
        if !(norm > EPS_ZERO) || !norm.is_finite() {
            return Err(Error::NotUnit { real: 0.0, norm });
        }
        Ok(Self(v.scale(1.0 / norm)))
    }

    #[inline]
    pub fn as_quaternion(self) -> Quaternion {
        self.0
    }

    #[inline]
    pub fn vector(self) -> [f64; 3] {
        self.0.vector()
    }

    /// Inner product of the imaginary parts.
    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.0.dot(other.0)
    }

    #[inline]
    pub fn cross(self, other: Self) -> [f64; 3] {
        let [a1, a2, a3] = self.vector();
        let [b1, b2, b3] = other.vector();
        [a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1]
    }

    /// Euclidean distance from `self` to the plane ℂ_`slice`.
    ///
    /// Computed as `|self × slice|`, which stays accurate when the two units are
    /// nearly parallel.
    pub fn dist_to_slice(self, slice: Self) -> f64 {
        let [a, b, c] = self.cross(slice);
        a.hypot(b).hypot(c)
    }

    /// Some unit orthogonal to `self`.
    pub fn orthogonal(self) -> Self {
        let [x, y, z] = self.vector();
        // cross with the basis axis least aligned with self
        let (ax, ay, az) = (x.abs(), y.abs(), z.abs());
        let axis = if ax <= ay && ax <= az {
            Self::I
        } else if ay <= az {
            Self::J
        } else {
            Self::K
        };
        let [a, b, c] = self.cross(axis);
        Self::normalized(a, b, c).expect("cross product with the least aligned axis is nonzero")
    }

    /// Re-projects onto 𝕊 to remove accumulated rounding.
    pub fn renormalized(self) -> Self {
        let [x, y, z] = self.vector();
        Self::normalized(x, y, z).unwrap_or(self)
    }
}

impl Neg for ImaginaryUnit {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl From<ImaginaryUnit> for Quaternion {
    #[inline]
    fn from(u: ImaginaryUnit) -> Self {
        u.0
    }
}

impl TryFrom<Quaternion> for ImaginaryUnit {
    type Error = Error;
    fn try_from(q: Quaternion) -> Result<Self> {
        Self::try_from_quaternion(q)
    }
}

/// `q = x + y·unit` with `y >= 0`; `unit` is `None` exactly when `y = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlicePoint {
    pub x: f64,
    pub y: f64,
    pub unit: Option<ImaginaryUnit>,
}

impl SlicePoint {
    pub fn reassemble(&self) -> Quaternion {
        match self.unit {
            Some(u) => Quaternion::real(self.x) + u.as_quaternion() * self.y,
            None => Quaternion::real(self.x),
        }
    }

    /// Complex coordinate of the point in the slice of `unit` (upper half-plane).
    pub fn coordinate(&self) -> Complex {
        Complex::new(self.x, self.y)
    }
}

/// `P_I(x + yi) = x + yI`.
#[inline]
pub fn embed(z: Complex, unit: ImaginaryUnit) -> Quaternion {
    Quaternion::real(z.re) + unit.as_quaternion() * z.im
}

/// Writes `q = x + yI` with `y = |Im q| >= 0`.
///
/// Near-real quaternions (`y <= EPS_UNIT`) get the real marker and `y = 0`.
pub fn decompose(q: Quaternion) -> SlicePoint {
    let im = q.imag();
    let y = im.norm();
    if y > EPS_UNIT {
        SlicePoint {
            x: q.w,
            y,
            unit: Some(ImaginaryUnit(im.scale(1.0 / y))),
        }
    } else {
        SlicePoint {
            x: q.w,
            y: 0.0,
            unit: None,
        }
    }
}

/// Left-multiplication by `P_I(z)`: the action of a complex scalar on a
/// quaternion inside the slice of `unit`.
#[inline]
pub fn slice_scale(z: Complex, unit: ImaginaryUnit, q: Quaternion) -> Quaternion {
    embed(z, unit) * q
}

/// Running product of units that re-projects onto the unit 3-sphere every
/// [`RENORM_INTERVAL`] factors.
#[derive(Clone, Copy, Debug)]
pub struct UnitProduct {
    acc: Quaternion,
    factors: u32,
}

impl Default for UnitProduct {
    fn default() -> Self {
        Self {
            acc: Quaternion::ONE,
            factors: 0,
        }
    }
}

impl UnitProduct {
    pub fn mul_right(&mut self, u: Quaternion) {
        self.acc *= u;
        self.factors += 1;
        if self.factors.is_multiple_of(RENORM_INTERVAL) {
            let n = self.acc.norm();
            if n > EPS_ZERO {
                self.acc = self.acc.scale(1.0 / n);
            }
        }
    }

    pub fn value(&self) -> Quaternion {
        self.acc
    }
}
