//! The ζ-map, the signed antidiagonal σ_N, D_N(J), 𝓜(J), and full slice-rank.
//!
//! For `K = (K_1, …, K_N) ∈ 𝕊^N` and `m = 1..=2^N`, component `m` of `ζ(K)` is
//!
//! ```text
//! K(m) = (K_N K_{N-1})^{m_N} (K_{N-1} K_{N-2})^{m_{N-1}} ··· (K_1 K_0)^{m_1},   K_0 = 1,
//! ```
//!
//! where `m_N … m_1` are the binary digits of `m - 1` and `m_1` is the least
//! significant one. The rows of `𝓜(J)` are `ζ(J_1), …, ζ(J_{2^N})`.

use alloc::vec;
use alloc::vec::Vec;

use crate::qlinalg::{Invertibility, QMatrix};
use crate::quaternion::{ImaginaryUnit, Quaternion, UnitProduct};
use crate::{Error, Result};

/// Largest supported tuple length (2^12 = 4096 rows in 𝓜).
pub const MAX_N: usize = 12;

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::LengthMismatch {
            expected: 1,
            got: 0,
        });
    }
    if n > MAX_N {
        return Err(Error::SizeCap {
            requested: n,
            cap: MAX_N,
        });
    }
    Ok(())
}

/// An ordered tuple `(K_1, …, K_N)` of imaginary units, `N >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitTuple(Vec<ImaginaryUnit>);

impl UnitTuple {
    pub fn new(units: Vec<ImaginaryUnit>) -> Result<Self> {
        if units.is_empty() {
            return Err(Error::LengthMismatch {
                expected: 1,
                got: 0,
            });
        }
        Ok(Self(units))
    }

    pub fn units(&self) -> &[ImaginaryUnit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> ImaginaryUnit {
        *self.0.last().expect("tuples are nonempty")
    }

    /// The first `l` components.
    pub fn prefix(&self, l: usize) -> Result<Self> {
        if l == 0 || l > self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: l,
            });
        }
        Ok(Self(self.0[..l].to_vec()))
    }
}

impl From<ImaginaryUnit> for UnitTuple {
    fn from(u: ImaginaryUnit) -> Self {
        Self(vec![u])
    }
}

/// `J ∈ M_{2^N × N}(𝕊)`: `2^N` unit tuples of length `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitMatrix {
    n: usize,
    rows: Vec<UnitTuple>,
}

impl UnitMatrix {
    pub fn new(n: usize, rows: Vec<UnitTuple>) -> Result<Self> {
        check_n(n)?;
        if rows.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                got: rows.len(),
            });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        Ok(Self { n, rows })
    }

    pub fn from_units(n: usize, rows: Vec<Vec<ImaginaryUnit>>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .map(UnitTuple::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, rows)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[UnitTuple] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &UnitTuple {
        &self.rows[i]
    }

    /// `J^{(l)}`: the first `2^l` rows truncated to their first `l` columns.
    pub fn level(&self, l: usize) -> Result<Self> {
        if l == 0 || l > self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: l,
            });
        }
        let rows = self.rows[..1 << l]
            .iter()
            .map(|r| r.prefix(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n: l, rows })
    }
}

/// `ζ(K)`, a row of `2^N` unit quaternions.
pub fn zeta(k: &UnitTuple) -> Result<Vec<Quaternion>> {
    let n = k.len();
    check_n(n)?;
    // pair products P_l = K_l K_{l-1}, with K_0 = 1
    let pairs: Vec<Quaternion> = (0..n)
        .map(|l| {
            let hi = k.units()[l].as_quaternion();
            let lo = if l == 0 {
                Quaternion::ONE
            } else {
                k.units()[l - 1].as_quaternion()
            };
            hi * lo
        })
        .collect();
    Ok((0..1usize << n)
        .map(|bits| {
            let mut prod = UnitProduct::default();
            // leftmost factor carries the most significant digit m_N
            for l in (0..n).rev() {
                if bits >> l & 1 == 1 {
                    prod.mul_right(pairs[l]);
                }
            }
            prod.value()
        })
        .collect())
}

/// A signed permutation matrix with integer entries, stored densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    dim: usize,
    entries: Vec<i8>,
}

impl SignedPermutation {
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry `(i, j)`, zero-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// Exact integer product.
    pub fn matmul(&self, other: &Self) -> Vec<i64> {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k) as i64;
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.get(k, j) as i64;
                }
            }
        }
        out
    }

    /// `true` iff `self² = -I` in exact integer arithmetic.
    pub fn squares_to_minus_identity(&self) -> bool {
        let n = self.dim;
        self.matmul(self)
            .iter()
            .enumerate()
            .all(|(idx, &v)| v == if idx / n == idx % n { -1 } else { 0 })
    }

    /// `v·σ` for a row vector `v`, by index arithmetic.
    pub fn apply_right(&self, v: &[Quaternion]) -> Vec<Quaternion> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|j| {
                (0..self.dim)
                    .filter(|&i| self.get(i, j) != 0)
                    .map(|i| v[i] * f64::from(self.get(i, j)))
                    .sum()
            })
            .collect()
    }

    /// `σ·A` for a quaternion matrix with `dim` rows.
    pub fn apply_left(&self, a: &QMatrix) -> Result<QMatrix> {
        if a.rows() != self.dim {
            return Err(Error::ShapeMismatch {
                context: "sigma applied to a matrix of the wrong height",
            });
        }
        let mut out = QMatrix::zeros(a.rows(), a.cols())?;
        for i in 0..self.dim {
            for k in 0..self.dim {
                let s = self.get(i, k);
                if s == 0 {
                    continue;
                }
                for c in 0..a.cols() {
                    out.set(i, c, out.get(i, c) + a.get(k, c) * f64::from(s));
                }
            }
        }
        Ok(out)
    }

    pub fn to_qmatrix(&self) -> Result<QMatrix> {
        QMatrix::new(
            self.dim,
            self.dim,
            self.entries
                .iter()
                .map(|&e| Quaternion::real(f64::from(e)))
                .collect(),
        )
    }
}

/// σ_N: entry `(ı, ȷ)` (one-based) is `(-1)^{N+ȷ}` when `ı + ȷ = 2^N + 1`, zero otherwise.
pub fn sigma(n: usize) -> Result<SignedPermutation> {
    check_n(n)?;
    let dim = 1usize << n;
    let mut entries = vec![0i8; dim * dim];
    for j in 1..=dim {
        let i = dim + 1 - j;
        entries[(i - 1) * dim + (j - 1)] = if (n + j).is_multiple_of(2) { 1 } else { -1 };
    }
    Ok(SignedPermutation { dim, entries })
}

/// 𝓜(J): row `ı` is `ζ(J_ı)`.
pub fn mmat(j: &UnitMatrix) -> Result<QMatrix> {
    let dim = 1usize << j.n();
    let mut entries = Vec::with_capacity(dim * dim);
    for row in j.rows() {
        entries.extend(zeta(row)?);
    }
    QMatrix::new(dim, dim, entries)
}

/// D_N(J) = diag(J_{1,N}, …, J_{2^N,N}).
pub fn dmat(j: &UnitMatrix) -> Result<QMatrix> {
    let diag: Vec<Quaternion> = j.rows().iter().map(|r| r.last().as_quaternion()).collect();
    QMatrix::diagonal(&diag)
}

/// Determinant test of `𝓜(J^{(l)})` at one level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevelReport {
    pub level: usize,
    pub invertibility: Invertibility,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SliceRankReport {
    pub levels: Vec<LevelReport>,
}

impl SliceRankReport {
    pub fn full(&self) -> bool {
        self.levels.iter().all(|l| l.invertibility.invertible())
    }

    /// First level whose block is singular.
    pub fn failing_level(&self) -> Option<usize> {
        self.levels
            .iter()
            .find(|l| !l.invertibility.invertible())
            .map(|l| l.level)
    }
}

/// Checks invertibility of `𝓜(J^{(l)})` for every `l = 1..=N`.
pub fn full_slice_rank(j: &UnitMatrix) -> Result<SliceRankReport> {
    let levels = (1..=j.n())
        .map(|l| {
            let m = mmat(&j.level(l)?)?;
            Ok(LevelReport {
                level: l,
                invertibility: m.invertibility()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SliceRankReport { levels })
}

/// `max |K_N·ζ(K) - ζ(K)·σ_N|` over the components.
pub fn verify_intertwine(k: &UnitTuple) -> Result<f64> {
    let z = zeta(k)?;
    let s = sigma(k.len())?;
    let right = s.apply_right(&z);
    let kn = k.last().as_quaternion();
    Ok(z.iter()
        .zip(&right)
        .map(|(&a, &b)| (kn * a - b).norm())
        .fold(0.0, f64::max))
}

/// `max |σ_N·𝓜(J)⁻¹ - 𝓜(J)⁻¹·D_N(J)|` over the entries.
pub fn verify_conjugation(j: &UnitMatrix) -> Result<f64> {
    let inv = mmat(j)?.inverse()?;
    let left = sigma(j.n())?.apply_left(&inv)?;
    let right = inv.matmul(&dmat(j)?)?;
    left.max_diff(&right)
}
