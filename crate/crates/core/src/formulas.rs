//! Extension and representation formulas, the splitting of a value along a
//! slice, and closed-form slice regular oracles.

use alloc::vec::Vec;

use crate::qlinalg::QMatrix;
use crate::quaternion::{embed, ImaginaryUnit, Quaternion, EPS_UNIT};
use crate::slice_calculus::{full_slice_rank, mmat, zeta, UnitMatrix, UnitTuple};
use crate::{Complex, Error, Result};

/// Number of terms kept in [`SlicePolynomial::exp_series`].
pub const EXP_TERMS: usize = 40;

/// Values `f(γ^{J_ı}(1))`, one per row of a unit matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceValueVector {
    n: usize,
    values: Vec<Quaternion>,
}

impl SliceValueVector {
    pub fn new(n: usize, values: Vec<Quaternion>) -> Result<Self> {
        if n == 0 || n > crate::slice_calculus::MAX_N {
            return Err(Error::SizeCap {
                requested: n,
                cap: crate::slice_calculus::MAX_N,
            });
        }
        if values.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                got: values.len(),
            });
        }
        Ok(Self { n, values })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Quaternion] {
        &self.values
    }
}

/// `q ↦ Σ q^k a_k`: powers on the left, coefficients on the right.
#[derive(Clone, Debug, PartialEq)]
pub struct SlicePolynomial {
    coeffs: Vec<Quaternion>,
}

impl SlicePolynomial {
    pub fn new(coeffs: Vec<Quaternion>) -> Self {
        Self { coeffs }
    }

    /// Truncated `Σ_{k<EXP_TERMS} q^k c / k!`, i.e. `exp(q)·c`.
    pub fn exp_series(c: Quaternion) -> Self {
        let mut coeffs = Vec::with_capacity(EXP_TERMS);
        let mut fact = 1.0;
        for k in 0..EXP_TERMS {
            if k > 0 {
                fact *= k as f64;
            }
            coeffs.push(c.scale(1.0 / fact));
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Horner evaluation `a_0 + q(a_1 + q(a_2 + …))`.
    pub fn eval(&self, q: Quaternion) -> Quaternion {
        self.coeffs
            .iter()
            .rev()
            .fold(Quaternion::ZERO, |acc, &a| q * acc + a)
    }

    /// Evaluation at `P_I(z)`.
    pub fn eval_slice(&self, z: Complex, unit: ImaginaryUnit) -> Quaternion {
        self.eval(embed(z, unit))
    }
}

pub fn eval_slice_polynomial(p: &SlicePolynomial, q: Quaternion) -> Quaternion {
    p.eval(q)
}

/// Coefficient pair `((I1-I2)⁻¹I1 + J(I1-I2)⁻¹, (I2-I1)⁻¹I2 + J(I2-I1)⁻¹)`.
pub fn extension_coefficients(
    i1: ImaginaryUnit,
    i2: ImaginaryUnit,
    j: ImaginaryUnit,
) -> Result<(Quaternion, Quaternion)> {
    let (a, b, j) = (i1.as_quaternion(), i2.as_quaternion(), j.as_quaternion());
    let separation = (a - b).norm();
    if separation <= EPS_UNIT {
        return Err(Error::DegenerateSlices { separation });
    }
    // on the data slices the pair is (1, 0) or (0, 1); return it without rounding
    if j == a {
        return Ok((Quaternion::ONE, Quaternion::ZERO));
    }
    if j == b {
        return Ok((Quaternion::ZERO, Quaternion::ONE));
    }
    let d12 = (a - b).inverse()?;
    let d21 = -d12;
    Ok((d12 * a + j * d12, d21 * b + j * d21))
}

/// Value at `x + yJ` of the slice regular extension of holomorphic data whose
/// values at `x + yI1` and `x + yI2` (`y >= 0`) are `v1` and `v2`.
pub fn extend_two_slices(
    v1: Quaternion,
    v2: Quaternion,
    i1: ImaginaryUnit,
    i2: ImaginaryUnit,
    j: ImaginaryUnit,
) -> Result<Quaternion> {
    let (c1, c2) = extension_coefficients(i1, i2, j)?;
    Ok(c1 * v1 + c2 * v2)
}

/// `ζ(K)·𝓜(J)⁻¹·F` via a linear solve against `F`.
pub fn represent(k: &UnitTuple, j: &UnitMatrix, f: &SliceValueVector) -> Result<Quaternion> {
    check_shapes(k, j, f)?;
    let report = full_slice_rank(j)?;
    if let Some(level) = report.failing_level() {
        return Err(Error::NotFullSliceRank { level });
    }
    let column = QMatrix::column_vector(f.values().to_vec())?;
    let coeffs = match closed_form_inverse(j)? {
        Some(inverse) => inverse.matmul(&column)?,
        None => mmat(j)?.solve(&column)?,
    };
    Ok(dot(&zeta(k)?, coeffs.entries()))
}

/// Explicit `𝓜(J)⁻¹` for `N = 1`: `[[D·J1, -D·J2], [D, -D]]` with `D = (J1-J2)⁻¹`.
///
/// Stored units have norms that differ by an ulp, and LU then disagrees with
/// the two-term formula by `O(ε/|J1-J2|²)`; the explicit inverse does not.
fn closed_form_inverse(j: &UnitMatrix) -> Result<Option<QMatrix>> {
    if j.n() != 1 {
        return Ok(None);
    }
    let (a, b) = (
        j.row(0).last().as_quaternion(),
        j.row(1).last().as_quaternion(),
    );
    let d = (a - b).inverse()?;
    Ok(Some(QMatrix::new(
        2,
        2,
        alloc::vec![d * a, -(d * b), d, -d],
    )?))
}

fn check_shapes(k: &UnitTuple, j: &UnitMatrix, f: &SliceValueVector) -> Result<()> {
    if k.len() != j.n() {
        return Err(Error::ShapeMismatch {
            context: "unit tuple length differs from the unit matrix N",
        });
    }
    if f.n() != j.n() {
        return Err(Error::ShapeMismatch {
            context: "value vector length differs from 2^N",
        });
    }
    Ok(())
}

fn dot(row: &[Quaternion], col: &[Quaternion]) -> Quaternion {
    row.iter().zip(col).map(|(&a, &b)| a * b).sum()
}

/// Representation formula with `𝓜(J)⁻¹` formed once, for sweeps over many `K`.
#[derive(Clone, Debug)]
pub struct RepresentationSweep {
    j: UnitMatrix,
    inverse: QMatrix,
}

impl RepresentationSweep {
    pub fn new(j: UnitMatrix) -> Result<Self> {
        let report = full_slice_rank(&j)?;
        if let Some(level) = report.failing_level() {
            return Err(Error::NotFullSliceRank { level });
        }
        let inverse = match closed_form_inverse(&j)? {
            Some(inverse) => inverse,
            None => mmat(&j)?.inverse()?,
        };
        Ok(Self { j, inverse })
    }

    pub fn unit_matrix(&self) -> &UnitMatrix {
        &self.j
    }

    pub fn inverse(&self) -> &QMatrix {
        &self.inverse
    }

    /// `𝓜(J)⁻¹·F`; pass to [`RepresentationSweep::eval_with`] for each `K`.
    pub fn coefficients(&self, f: &SliceValueVector) -> Result<Vec<Quaternion>> {
        if f.n() != self.j.n() {
            return Err(Error::ShapeMismatch {
                context: "value vector length differs from 2^N",
            });
        }
        Ok(self
            .inverse
            .matmul(&QMatrix::column_vector(f.values().to_vec())?)?
            .into_entries())
    }

    pub fn eval_with(&self, k: &UnitTuple, coeffs: &[Quaternion]) -> Result<Quaternion> {
        if k.len() != self.j.n() {
            return Err(Error::ShapeMismatch {
                context: "unit tuple length differs from the unit matrix N",
            });
        }
        Ok(dot(&zeta(k)?, coeffs))
    }

    pub fn eval(&self, k: &UnitTuple, f: &SliceValueVector) -> Result<Quaternion> {
        let c = self.coefficients(f)?;
        self.eval_with(k, &c)
    }
}

/// `(J1-J2)⁻¹[J1 v1 - J2 v2] + K(J1-J2)⁻¹[v1 - v2]`.
pub fn classical_repr(
    k: ImaginaryUnit,
    j1: ImaginaryUnit,
    j2: ImaginaryUnit,
    v1: Quaternion,
    v2: Quaternion,
) -> Result<Quaternion> {
    let (a, b) = (j1.as_quaternion(), j2.as_quaternion());
    let separation = (a - b).norm();
    if separation <= EPS_UNIT {
        return Err(Error::DegenerateSlices { separation });
    }
    let d = (a - b).inverse()?;
    Ok(d * (a * v1 - b * v2) + k.as_quaternion() * d * (v1 - v2))
}

/// Writes `q = F + G·Jp` with `F, G ∈ ℂ_I`, for `I ⊥ Jp`.
pub fn split_value(
    q: Quaternion,
    i: ImaginaryUnit,
    jp: ImaginaryUnit,
) -> Result<(Quaternion, Quaternion)> {
    let inner = i.dot(jp);
    if inner.abs() > EPS_UNIT {
        return Err(Error::NotOrthogonal { inner });
    }
    let (iq, jq) = (i.as_quaternion(), jp.as_quaternion());
    // {1, I, Jp, I·Jp} is an orthonormal basis of ℝ⁴
    let ij = iq * jq;
    let f = Quaternion::real(q.w) + iq * q.dot(iq);
    let g = Quaternion::real(q.dot(jq)) + iq * q.dot(ij);
    Ok((f, g))
}

/// Central-difference estimate of `|∂̄_I f|` at `P_I(z)`, where
/// `∂̄_I = ½(∂/∂x + I ∂/∂y)`.
///
/// Any error from `f` is reported as [`Error::EvaluationOutsideDomain`].
pub fn cr_residual<F>(f: F, unit: ImaginaryUnit, z: Complex, h: f64) -> Result<f64>
where
    F: Fn(Quaternion) -> Result<Quaternion>,
{
    if !(h > 0.0) {
        return Err(Error::ParameterOutOfRange { t: h });
    }
    let at = |dz: Complex| {
        let w = z + dz;
        f(embed(w, unit)).map_err(|_| Error::EvaluationOutsideDomain { x: w.re, y: w.im })
    };
    let dx = (at(Complex::new(h, 0.0))? - at(Complex::new(-h, 0.0))?) / (2.0 * h);
    let dy = (at(Complex::new(0.0, h))? - at(Complex::new(0.0, -h))?) / (2.0 * h);
    Ok(((dx + unit.as_quaternion() * dy) * 0.5).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::{decompose, sample_sphere, SamplingScheme};
    use alloc::vec;

    const I: ImaginaryUnit = ImaginaryUnit::I;
    const J: ImaginaryUnit = ImaginaryUnit::J;
    const K: ImaginaryUnit = ImaginaryUnit::K;

    fn square(q: Quaternion) -> Quaternion {
        q * q
    }

    #[test]
    fn extension_reproduces_first_slice() {
        let i1 = ImaginaryUnit::normalized(0.3, -0.2, 0.9).unwrap();
        let i2 = ImaginaryUnit::normalized(-0.7, 0.1, 0.2).unwrap();
        let (c1, c2) = extension_coefficients(i1, i2, i1).unwrap();
        assert!(c1.dist(Quaternion::ONE) < 1e-15);
        assert!(c2.norm() < 1e-15);
        let v1 = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        let v2 = Quaternion::new(-1.0, 0.5, 0.0, 2.0);
        assert!(extend_two_slices(v1, v2, i1, i2, i1).unwrap().dist(v1) < 1e-14);
    }

    #[test]
    fn extension_from_antipodal_slices() {
        let u = ImaginaryUnit::normalized(0.1, 0.5, -0.4).unwrap();
        for j in sample_sphere(20, SamplingScheme::Fibonacci) {
            let (c1, c2) = extension_coefficients(u, -u, j).unwrap();
            let ji = j.as_quaternion() * u.as_quaternion();
            assert!(c1.dist((Quaternion::ONE - ji) * 0.5) < 1e-15);
            assert!(c2.dist((Quaternion::ONE + ji) * 0.5) < 1e-15);
        }
    }

    #[test]
    fn extension_of_square_matches_direct_evaluation() {
        let (x, y) = (0.7, 1.3);
        let at = |u: ImaginaryUnit| square(embed(Complex::new(x, y), u));
        for j in sample_sphere(30, SamplingScheme::Random { seed: 3 }) {
            let got = extend_two_slices(at(I), at(J), I, J, j).unwrap();
            assert!(got.dist(at(j)) < 1e-12);
        }
        assert!(matches!(
            extend_two_slices(at(I), at(I), I, I, J),
            Err(Error::DegenerateSlices { .. })
        ));
    }

    #[test]
    fn extension_at_real_point_keeps_value() {
        let v = Quaternion::new(0.2, -1.0, 3.0, 0.5);
        for j in sample_sphere(10, SamplingScheme::Grid) {
            assert!(extend_two_slices(v, v, I, K, j).unwrap().dist(v) < 1e-12);
        }
    }

    #[test]
    fn classical_formula_examples() {
        let (v1, v2) = (
            Quaternion::new(1.0, 2.0, 0.0, 0.0),
            Quaternion::new(0.0, 0.0, 5.0, 1.0),
        );
        assert!(classical_repr(I, I, J, v1, v2).unwrap().dist(v1) < 1e-15);
        let (x, y) = (-0.4, 2.0);
        let at = |u: ImaginaryUnit| square(embed(Complex::new(x, y), u));
        let got = classical_repr(K, I, J, at(I), at(J)).unwrap();
        assert!(got.dist(at(K)) < 1e-12);
        assert!(classical_repr(K, J, J, v1, v2).is_err());
    }

    #[test]
    fn represent_row_selection_and_errors() {
        let jm = UnitMatrix::from_units(1, vec![vec![I], vec![J]]).unwrap();
        let f = SliceValueVector::new(1, vec![Quaternion::new(1.0, 2.0, 3.0, 4.0), Quaternion::K])
            .unwrap();
        for (row, want) in jm.rows().iter().zip(f.values()) {
            assert!(represent(row, &jm, &f).unwrap().dist(*want) < 1e-12);
        }
        let bad = UnitMatrix::from_units(1, vec![vec![I], vec![I]]).unwrap();
        assert_eq!(
            represent(&UnitTuple::from(K), &bad, &f),
            Err(Error::NotFullSliceRank { level: 1 })
        );
        let k2 = UnitTuple::new(vec![I, J]).unwrap();
        assert!(matches!(
            represent(&k2, &jm, &f),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn split_examples() {
        let (f, g) = split_value(Quaternion::J, I, J).unwrap();
        assert_eq!((f, g), (Quaternion::ZERO, Quaternion::ONE));
        let (f, g) = split_value(Quaternion::I, I, J).unwrap();
        assert_eq!((f, g), (Quaternion::I, Quaternion::ZERO));
        let u = ImaginaryUnit::normalized(1.0, 1.0, 0.0).unwrap();
        let w = ImaginaryUnit::normalized(1.0, 0.0, 0.3).unwrap();
        assert!(matches!(
            split_value(Quaternion::ONE, u, w),
            Err(Error::NotOrthogonal { .. })
        ));
        let w = u.orthogonal();
        let q = Quaternion::new(0.3, -2.0, 1.5, 0.25);
        let (f, g) = split_value(q, u, w).unwrap();
        assert!((f + g * w.as_quaternion()).dist(q) < 1e-14);
        for part in [f, g] {
            let p = decompose(part);
            assert!(p.unit.is_none_or(|v| v.dist_to_slice(u) < 1e-12));
        }
    }

    #[test]
    fn polynomial_examples() {
        let sq = SlicePolynomial::new(vec![Quaternion::ZERO, Quaternion::ZERO, Quaternion::ONE]);
        assert_eq!(sq.eval(Quaternion::I), -Quaternion::ONE);
        let c = Quaternion::new(1.0, -2.0, 0.5, 3.0);
        let constant = SlicePolynomial::new(vec![c]);
        assert_eq!(constant.eval(Quaternion::new(4.0, 1.0, 1.0, 1.0)), c);
        let id = SlicePolynomial::new(vec![Quaternion::ZERO, Quaternion::ONE]);
        let p = Quaternion::new(1.0, 0.0, 1.0, 0.0);
        assert_eq!(id.eval(p), p);
        // coefficients act from the right: q·a, not a·q
        let lin = SlicePolynomial::new(vec![Quaternion::ZERO, Quaternion::J]);
        assert_eq!(lin.eval(Quaternion::I), Quaternion::K);
    }

    #[test]
    fn exp_series_on_a_slice() {
        let e = SlicePolynomial::exp_series(Quaternion::ONE);
        let z = Complex::new(0.3, 1.1);
        let got = e.eval_slice(z, J);
        let want = embed(z.exp(), J);
        assert!(got.dist(want) < 1e-14);
    }

    #[test]
    fn cauchy_riemann_residuals() {
        let z = Complex::new(0.4, 0.9);
        let u = ImaginaryUnit::normalized(0.2, 0.3, 0.9).unwrap();
        let r = cr_residual(|q| Ok(square(q)), u, z, 1e-4).unwrap();
        assert!(r <= 1e-6);
        let anti = |q: Quaternion| {
            let p = decompose(q);
            Ok(Quaternion::real(p.x) - u.as_quaternion() * (q.imag().dot(u.as_quaternion())))
        };
        let r = cr_residual(anti, u, z, 1e-4).unwrap();
        assert!((r - 1.0).abs() < 1e-8);
        assert!(cr_residual(Ok, u, z, 0.0).is_err());
        let outside = cr_residual(|_| Err(Error::NoRoute { x: 0.0, y: 0.0 }), u, z, 1e-3);
        assert!(matches!(
            outside,
            Err(Error::EvaluationOutsideDomain { .. })
        ));
    }
}
