//! Dense quaternionic matrices.
//!
//! Inversion goes through the complex adjoint χ: each quaternion `q = a + j·b`
//! (`a = w + x i`, `b = y - z i`) becomes the 2×2 complex block
//! `[[a, -conj(b)], [b, conj(a)]]`, χ is an injective ring homomorphism, and
//! `χ(A)` is factored by LU with partial pivoting. The determinant of `χ(A)` also
//! provides the invertibility test.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::quaternion::Quaternion;
use crate::{Complex, Error, Result};

/// Relative determinant threshold below which a matrix counts as singular.
pub const TOL_DET: f64 = 1e-10;

/// Largest accepted row or column count.
pub const MAX_DIM: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Quaternion>,
}

impl QMatrix {
    /// Row-major constructor.
    pub fn new(rows: usize, cols: usize, entries: Vec<Quaternion>) -> Result<Self> {
        check_dims(rows, cols)?;
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![Quaternion::ZERO; rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, Quaternion::ONE);
        }
        Ok(m)
    }

    pub fn diagonal(diag: &[Quaternion]) -> Result<Self> {
        let mut m = Self::zeros(diag.len(), diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<Quaternion>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch {
                context: "ragged rows",
            });
        }
        Self::new(rows.len(), cols, rows.iter().flatten().copied().collect())
    }

    pub fn row_vector(entries: Vec<Quaternion>) -> Result<Self> {
        Self::new(1, entries.len(), entries)
    }

    pub fn column_vector(entries: Vec<Quaternion>) -> Result<Self> {
        Self::new(entries.len(), 1, entries)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn entries(&self) -> &[Quaternion] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Quaternion> {
        self.entries
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Quaternion {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, q: Quaternion) {
        self.entries[r * self.cols + c] = q;
    }

    pub fn row(&self, r: usize) -> &[Quaternion] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// `A·B` with left factors multiplying from the left.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                context: "matmul: left cols != right rows",
            });
        }
        let mut out = Self::zeros(self.rows, other.cols)?;
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == Quaternion::ZERO {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.entries[idx] += a * other.get(k, c);
                }
            }
        }
        Ok(out)
    }

    /// `qA`: every entry multiplied by `q` from the left.
    pub fn left_scale(&self, q: Quaternion) -> Self {
        self.map(|a| q * a)
    }

    /// `Aq`: every entry multiplied by `q` from the right.
    pub fn right_scale(&self, q: Quaternion) -> Self {
        self.map(|a| a * q)
    }

    fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&a| f(a)).collect(),
        }
    }

    /// Largest entry norm.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    /// Largest entry norm of `self - other`.
    pub fn max_diff(&self, other: &Self) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                context: "difference of differently shaped matrices",
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest entry norm of `self - I`.
    pub fn identity_residual(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch {
                context: "identity residual of a non-square matrix",
            });
        }
        let mut worst: f64 = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                let target = if r == c {
                    Quaternion::ONE
                } else {
                    Quaternion::ZERO
                };
                worst = worst.max((self.get(r, c) - target).norm());
            }
        }
        Ok(worst)
    }

    /// The complex adjoint χ(A), a `2·rows × 2·cols` complex matrix.
    pub fn adjoint_complex(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(2 * self.rows, 2 * self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let [a, b] = split_complex(self.get(r, c));
                m.set(2 * r, 2 * c, a);
                m.set(2 * r, 2 * c + 1, -b.conj());
                m.set(2 * r + 1, 2 * c, b);
                m.set(2 * r + 1, 2 * c + 1, a.conj());
            }
        }
        m
    }

    /// Reads a quaternion matrix back from its complex adjoint (left column of
    /// every 2×2 block).
    pub fn from_adjoint(m: &ComplexMatrix) -> Result<Self> {
        if !m.rows.is_multiple_of(2) || !m.cols.is_multiple_of(2) {
            return Err(Error::ShapeMismatch {
                context: "adjoint with odd dimension",
            });
        }
        let (rows, cols) = (m.rows / 2, m.cols / 2);
        let mut out = Self::zeros(rows, cols)?;
        for r in 0..rows {
            for c in 0..cols {
                out.set(
                    r,
                    c,
                    join_complex(m.get(2 * r, 2 * c), m.get(2 * r + 1, 2 * c)),
                );
            }
        }
        Ok(out)
    }

    /// log|det χ(A)| against the scale-relative threshold.
    pub fn invertibility(&self) -> Result<Invertibility> {
        self.require_square()?;
        let chi = self.adjoint_complex();
        let lu = Lu::factor(chi.clone());
        Ok(Invertibility {
            log_det: lu.log_abs_det,
            log_threshold: TOL_DET.ln() + chi.log_row_scale(),
        })
    }

    /// `true` iff `|det χ(A)| > TOL_DET · scale(A)`.
    pub fn is_invertible(&self) -> Result<bool> {
        Ok(self.invertibility()?.invertible())
    }

    pub fn inverse(&self) -> Result<Self> {
        let id = Self::identity(self.rows.max(self.cols))?;
        self.solve(&id)
    }

    /// `X` with `A·X = rhs`.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        self.require_square()?;
        if rhs.rows != self.rows {
            return Err(Error::ShapeMismatch {
                context: "solve: right-hand side has the wrong row count",
            });
        }
        let chi = self.adjoint_complex();
        let log_threshold = TOL_DET.ln() + chi.log_row_scale();
        let lu = Lu::factor(chi);
        if !(lu.log_abs_det > log_threshold) {
            return Err(Error::Singular {
                log_det: lu.log_abs_det,
                log_threshold,
            });
        }
        let mut x = Self::from_adjoint(&lu.solve(&rhs.adjoint_complex()))?;
        // iterative refinement with the residual accumulated in doubled precision
        for _ in 0..REFINE_STEPS {
            let residual = self.residual(&x, rhs);
            let correction = Self::from_adjoint(&lu.solve(&residual.adjoint_complex()))?;
            for (e, d) in x.entries.iter_mut().zip(&correction.entries) {
                *e += *d;
            }
        }
        Ok(x)
    }

    /// `rhs − self·x`, each component summed with error-free transformations.
    fn residual(&self, x: &Self, rhs: &Self) -> Self {
        let n = self.cols;
        let mut entries = Vec::with_capacity(rhs.entries.len());
        for r in 0..rhs.rows {
            for c in 0..rhs.cols {
                let mut acc = rhs.get(r, c).to_array().map(|v| (v, 0.0));
                for k in 0..n {
                    let a = self.get(r, k).to_array();
                    let b = x.get(k, c).to_array();
                    for (comp, terms) in HAMILTON.iter().enumerate() {
                        for &(sign, i, j) in terms {
                            let (p, e) = two_prod(a[i], b[j]);
                            acc[comp] = compensated_add(acc[comp], -sign * p, -sign * e);
                        }
                    }
                }
                entries.push(Quaternion::from_array(acc.map(|(s, e)| s + e)));
            }
        }
        Self {
            rows: rhs.rows,
            cols: rhs.cols,
            entries,
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                context: "square matrix required",
            })
        }
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            f.write_str("[")?;
            for (c, q) in self.row(r).iter().enumerate() {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{q}")?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

fn check_dims(rows: usize, cols: usize) -> Result<()> {
    let worst = rows.max(cols);
    if worst > MAX_DIM {
        return Err(Error::SizeCap {
            requested: worst,
            cap: MAX_DIM,
        });
    }
    Ok(())
}

const REFINE_STEPS: usize = 2;

/// Component `c` of `p·q` is `Σ sign·p[i]·q[j]` over `HAMILTON[c]`.
const HAMILTON: [[(f64, usize, usize); 4]; 4] = [
    [(1.0, 0, 0), (-1.0, 1, 1), (-1.0, 2, 2), (-1.0, 3, 3)],
    [(1.0, 0, 1), (1.0, 1, 0), (1.0, 2, 3), (-1.0, 3, 2)],
    [(1.0, 0, 2), (-1.0, 1, 3), (1.0, 2, 0), (1.0, 3, 1)],
    [(1.0, 0, 3), (1.0, 1, 2), (-1.0, 2, 1), (1.0, 3, 0)],
];

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Adds `p + e` to the running pair `(sum, error)`.
#[inline]
fn compensated_add(acc: (f64, f64), p: f64, e: f64) -> (f64, f64) {
    let (s, err) = two_sum(acc.0, p);
    (s, acc.1 + err + e)
}

/// `q = a + j·b` with `a, b` complex.
#[inline]
fn split_complex(q: Quaternion) -> [Complex; 2] {
    [Complex::new(q.w, q.x), Complex::new(q.y, -q.z)]
}

#[inline]
fn join_complex(a: Complex, b: Complex) -> Quaternion {
    Quaternion::new(a.re, a.im, b.re, -b.im)
}

/// Outcome of the determinant test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Invertibility {
    pub log_det: f64,
    pub log_threshold: f64,
}

impl Invertibility {
    pub fn invertible(&self) -> bool {
        self.log_det > self.log_threshold
    }

    /// `log(|det χ| / (TOL_DET·scale))`; positive means invertible.
    pub fn margin(&self) -> f64 {
        self.log_det - self.log_threshold
    }
}

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<Complex>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, z: Complex) {
        self.data[r * self.cols + c] = z;
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                context: "complex matmul: left cols != right rows",
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        Ok(out)
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Σ log(max |entry| of each row); `-inf` when a row vanishes.
    fn log_row_scale(&self) -> f64 {
        (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max)
                    .ln()
            })
            .sum()
    }
}

/// LU factorization with partial pivoting, `P·A = L·U`.
struct Lu {
    n: usize,
    lu: Vec<Complex>,
    perm: Vec<usize>,
    log_abs_det: f64,
}

impl Lu {
    fn factor(a: ComplexMatrix) -> Self {
        assert_eq!(a.rows, a.cols);
        let n = a.rows;
        let mut lu = a.data;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut log_abs_det = 0.0;
        for k in 0..n {
            let (p, pivot_abs) =
                (k..n)
                    .map(|r| (r, lu[r * n + k].norm()))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if pivot_abs == 0.0 {
                log_abs_det = f64::NEG_INFINITY;
                continue;
            }
            log_abs_det += pivot_abs.ln();
            if p != k {
                for c in 0..n {
                    lu.swap(k * n + c, p * n + c);
                }
                perm.swap(k, p);
            }
            let pivot = lu[k * n + k];
            for r in k + 1..n {
                let factor = lu[r * n + k] / pivot;
                lu[r * n + k] = factor;
                if factor.is_zero() {
                    continue;
                }
                for c in k + 1..n {
                    let u = lu[k * n + c];
                    lu[r * n + c] -= factor * u;
                }
            }
        }
        Self {
            n,
            lu,
            perm,
            log_abs_det,
        }
    }

    fn solve(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let n = self.n;
        let m = rhs.cols;
        let mut x = ComplexMatrix::zeros(n, m);
        for c in 0..m {
            let mut col: Vec<Complex> = self.perm.iter().map(|&p| rhs.get(p, c)).collect();
            for r in 0..n {
                let row = &self.lu[r * n..r * n + r];
                let s = row
                    .iter()
                    .zip(&col[..r])
                    .fold(col[r], |s, (a, b)| s - a * b);
                col[r] = s;
            }
            for r in (0..n).rev() {
                let row = &self.lu[r * n + r + 1..(r + 1) * n];
                let s = row
                    .iter()
                    .zip(&col[r + 1..])
                    .fold(col[r], |s, (a, b)| s - a * b);
                col[r] = s / self.lu[r * n + r];
            }
            for (r, v) in col.into_iter().enumerate() {
                x.set(r, c, v);
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    #[test]
    fn identity_is_neutral() {
        let a = QMatrix::from_rows(&[
            vec![q(1.0, 2.0, 0.0, -1.0), q(0.5, 0.0, 3.0, 0.0)],
            vec![q(0.0, 0.0, 0.0, 1.0), q(-2.0, 1.0, 1.0, 1.0)],
        ])
        .unwrap();
        let id = QMatrix::identity(2).unwrap();
        assert_eq!(id.matmul(&a).unwrap(), a);
        assert_eq!(a.matmul(&id).unwrap(), a);
    }

    #[test]
    fn product_order_is_respected() {
        let i = QMatrix::from_rows(&[vec![Quaternion::I]]).unwrap();
        let j = QMatrix::from_rows(&[vec![Quaternion::J]]).unwrap();
        assert_eq!(i.matmul(&j).unwrap().get(0, 0), Quaternion::K);
        assert_eq!(j.matmul(&i).unwrap().get(0, 0), -Quaternion::K);
    }

    #[test]
    fn row_times_column() {
        let k1 = q(0.0, 0.6, 0.0, 0.8);
        let (a, b) = (q(1.0, -1.0, 2.0, 0.5), q(0.3, 0.0, -0.7, 1.1));
        let row = QMatrix::row_vector(vec![Quaternion::ONE, k1]).unwrap();
        let col = QMatrix::column_vector(vec![a, b]).unwrap();
        let got = row.matmul(&col).unwrap().get(0, 0);
        assert!(got.dist(a + k1 * b) < 1e-15);
        assert!(matches!(col.matmul(&col), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn adjoint_blocks() {
        let one = QMatrix::identity(1).unwrap().adjoint_complex();
        assert_eq!(
            one,
            ComplexMatrix::from_rows(&[
                vec![Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)],
                vec![Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)],
            ])
        );
        let j = QMatrix::from_rows(&[vec![Quaternion::J]])
            .unwrap()
            .adjoint_complex();
        assert_eq!(
            j,
            ComplexMatrix::from_rows(&[
                vec![Complex::new(0.0, 0.0), Complex::new(-1.0, 0.0)],
                vec![Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)],
            ])
        );
        // the basis relations survive: χ(i)χ(j) = χ(k)
        let chi = |u: Quaternion| QMatrix::from_rows(&[vec![u]]).unwrap().adjoint_complex();
        let prod = chi(Quaternion::I).matmul(&chi(Quaternion::J)).unwrap();
        assert_eq!(prod, chi(Quaternion::K));
    }

    #[test]
    fn inverse_of_scalar_unit() {
        let a = QMatrix::from_rows(&[vec![Quaternion::I]]).unwrap();
        let inv = a.inverse().unwrap();
        assert!(inv.get(0, 0).dist(-Quaternion::I) < 1e-15);
    }

    #[test]
    fn singular_detection() {
        assert!(QMatrix::identity(3).unwrap().is_invertible().unwrap());
        let r = vec![q(1.0, 2.0, 3.0, 4.0), q(0.0, 1.0, 0.0, 0.0)];
        let a = QMatrix::from_rows(&[r.clone(), r]).unwrap();
        assert!(!a.is_invertible().unwrap());
        assert!(matches!(a.inverse(), Err(Error::Singular { .. })));
        let rect = QMatrix::zeros(2, 3).unwrap();
        assert!(matches!(
            rect.is_invertible(),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(QMatrix::zeros(2, 2).unwrap().inverse().is_err());
    }

    #[test]
    fn scale_invariant_singularity_test() {
        let a = QMatrix::from_rows(&[
            vec![q(1.0, 0.0, 0.0, 0.0), q(0.0, 1.0, 0.0, 0.0)],
            vec![q(1.0, 0.0, 0.0, 0.0), q(0.0, 0.0, 1.0, 0.0)],
        ])
        .unwrap();
        for s in [1e-80, 1.0, 1e80] {
            assert!(a.left_scale(Quaternion::real(s)).is_invertible().unwrap());
        }
    }

    #[test]
    fn size_cap() {
        assert!(matches!(
            QMatrix::zeros(MAX_DIM + 1, 1),
            Err(Error::SizeCap { .. })
        ));
    }
}
