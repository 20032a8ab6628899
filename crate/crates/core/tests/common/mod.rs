//! Reference arithmetic written independently of the library: quaternions as
//! plain `[f64; 4]`, the ζ row and σ_N straight from their index formulas, and
//! direct left-power polynomial evaluation.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slicereg::{ImaginaryUnit, Quaternion};

pub type Q = [f64; 4];

pub const ONE: Q = [1.0, 0.0, 0.0, 0.0];
pub const ZERO: Q = [0.0; 4];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn mul(p: Q, q: Q) -> Q {
    let [a1, b1, c1, d1] = p;
    let [a2, b2, c2, d2] = q;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

pub fn add(p: Q, q: Q) -> Q {
    [p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3]]
}

pub fn sub(p: Q, q: Q) -> Q {
    [p[0] - q[0], p[1] - q[1], p[2] - q[2], p[3] - q[3]]
}

pub fn scale(p: Q, s: f64) -> Q {
    [p[0] * s, p[1] * s, p[2] * s, p[3] * s]
}

pub fn norm(p: Q) -> f64 {
    (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]).sqrt()
}

pub fn inv(p: Q) -> Q {
    let n2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
    [p[0] / n2, -p[1] / n2, -p[2] / n2, -p[3] / n2]
}

pub fn dist(p: Q, q: Q) -> f64 {
    norm(sub(p, q))
}

pub fn q(x: Quaternion) -> Q {
    x.to_array()
}

pub fn lib(x: Q) -> Quaternion {
    Quaternion::from_array(x)
}

pub fn unit_q(u: ImaginaryUnit) -> Q {
    u.as_quaternion().to_array()
}

/// `x + y·u`.
pub fn on_slice(x: f64, y: f64, u: Q) -> Q {
    [x, y * u[1], y * u[2], y * u[3]]
}

/// Uniform on the unit sphere by rejection from the cube.
pub fn random_unit(r: &mut ChaCha8Rng) -> ImaginaryUnit {
    loop {
        let v: [f64; 3] = [
            r.gen_range(-1.0..1.0),
            r.gen_range(-1.0..1.0),
            r.gen_range(-1.0..1.0),
        ];
        let n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if n2 > 1e-4 && n2 <= 1.0 {
            return ImaginaryUnit::normalized(v[0], v[1], v[2]).unwrap();
        }
    }
}

pub fn random_q(r: &mut ChaCha8Rng) -> Q {
    [
        r.gen_range(-1.0..1.0),
        r.gen_range(-1.0..1.0),
        r.gen_range(-1.0..1.0),
        r.gen_range(-1.0..1.0),
    ]
}

/// Component `m` (1-based) is `∏_{l=N..1} (K_l K_{l-1})^{m_l}` with `K_0 = 1`,
/// `m_l` the `l`-th least significant binary digit of `m − 1`.
pub fn zeta(units: &[Q]) -> Vec<Q> {
    let n = units.len();
    (1..=1usize << n)
        .map(|m| {
            let digits = m - 1;
            let mut acc = ONE;
            for l in (1..=n).rev() {
                if (digits >> (l - 1)) & 1 == 1 {
                    let lower = if l == 1 { ONE } else { units[l - 2] };
                    acc = mul(acc, mul(units[l - 1], lower));
                }
            }
            acc
        })
        .collect()
}

/// `σ_N` with entry `(ı, ȷ)` (1-based) equal to `(−1)^{N+ȷ}` when `ı + ȷ = 2^N + 1`.
pub fn sigma(n: usize) -> Vec<Vec<i64>> {
    let dim = 1usize << n;
    (1..=dim)
        .map(|i| {
            (1..=dim)
                .map(|j| {
                    if i + j == dim + 1 {
                        if (n + j).is_multiple_of(2) {
                            1
                        } else {
                            -1
                        }
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

pub type Mat = Vec<Vec<Q>>;

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(ZERO, |s, l| add(s, mul(a[i][l], b[l][j]))))
                .collect()
        })
        .collect()
}

pub fn identity_residual(a: &Mat) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max(dist(*x, target));
        }
    }
    worst
}

pub fn max_diff(a: &Mat, b: &Mat) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(r, s)| r.iter().zip(s).map(|(x, y)| dist(*x, *y)))
        .fold(0.0, f64::max)
}

pub fn from_lib(m: &slicereg::QMatrix) -> Mat {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| x.to_array()).collect())
        .collect()
}

/// `Σ qᵏ a_k` with powers on the left.
pub fn poly_eval(coeffs: &[Q], x: Q) -> Q {
    let mut power = ONE;
    let mut sum = ZERO;
    for a in coeffs {
        sum = add(sum, mul(power, *a));
        power = mul(power, x);
    }
    sum
}
