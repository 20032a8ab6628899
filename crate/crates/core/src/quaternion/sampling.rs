use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ImaginaryUnit;

/// How [`sample_sphere`] places points on 𝕊.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplingScheme {
    /// Latitude rings around the i axis, starting at `i` and ending at `-i`.
    Grid,
    /// Golden-angle spiral.
    Fibonacci,
    /// Uniform on the sphere from a seeded ChaCha8 stream.
    Random { seed: u64 },
}

/// `n` imaginary units placed by `scheme`. Deterministic for every scheme.
pub fn sample_sphere(n: usize, scheme: SamplingScheme) -> Vec<ImaginaryUnit> {
    match scheme {
        SamplingScheme::Grid => grid(n),
        SamplingScheme::Fibonacci => fibonacci(n),
        SamplingScheme::Random { seed } => random(n, seed),
    }
}

fn from_spherical(polar: f64, azimuth: f64) -> ImaginaryUnit {
    // polar angle measured from the i axis
    let (s, c) = polar.sin_cos();
    let (sa, ca) = azimuth.sin_cos();
    ImaginaryUnit::normalized(c, s * ca, s * sa).expect("spherical point is nonzero")
}

fn grid(n: usize) -> Vec<ImaginaryUnit> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    out.push(ImaginaryUnit::I);
    let rings = ((n as f64).sqrt().ceil() as usize).max(2);
    let per_ring = 2 * rings;
    'outer: for a in 1..rings {
        let polar = PI * a as f64 / rings as f64;
        for b in 0..per_ring {
            if out.len() == n {
                break 'outer;
            }
            out.push(from_spherical(polar, 2.0 * PI * b as f64 / per_ring as f64));
        }
    }
    if out.len() < n {
        out.push(-ImaginaryUnit::I);
    }
    out
}

fn fibonacci(n: usize) -> Vec<ImaginaryUnit> {
    let golden = PI * (3.0 - 5.0.sqrt());
    (0..n)
        .map(|k| {
            let h = 1.0 - (2 * k + 1) as f64 / n as f64;
            let r = (1.0 - h * h).max(0.0).sqrt();
            let phi = golden * k as f64;
            ImaginaryUnit::normalized(r * phi.cos(), h, r * phi.sin())
                .expect("fibonacci point is nonzero")
        })
        .collect()
}

fn random(n: usize, seed: u64) -> Vec<ImaginaryUnit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            // Archimedes: uniform height and azimuth give the uniform measure
            let h: f64 = rng.gen_range(-1.0..=1.0);
            let phi: f64 = rng.gen_range(0.0..(2.0 * PI));
            let r = (1.0 - h * h).max(0.0).sqrt();
            ImaginaryUnit::normalized(r * phi.cos(), r * phi.sin(), h)
                .expect("random point is nonzero")
        })
        .collect()
}

/// Units `J_m` approaching `target` with `dist(J_m, ℂ_target) = 2^-m`, `m = 1..=count`.
pub fn approach_units(target: ImaginaryUnit, count: usize) -> Vec<ImaginaryUnit> {
    let t = target.as_quaternion();
    let o = target.orthogonal().as_quaternion();
    (1..=count)
        .map(|m| {
            let s = 0.5f64.powi(m as i32);
            let c = (1.0 - s * s).sqrt();
            let q = t * c + o * s;
            ImaginaryUnit::try_from_quaternion(q).unwrap_or(target)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion;

    fn check_units(units: &[ImaginaryUnit]) {
        for u in units {
            let q = u.as_quaternion();
            assert!(q.w.abs() <= 1e-12);
            assert!((q.norm() - 1.0).abs() <= 1e-12);
            assert!((q * q + Quaternion::ONE).norm() <= 1e-12);
        }
    }

    #[test]
    fn grid_starts_at_i() {
        assert_eq!(sample_sphere(1, SamplingScheme::Grid), [ImaginaryUnit::I]);
        for n in [2, 7, 50, 513] {
            let g = sample_sphere(n, SamplingScheme::Grid);
            assert_eq!(g.len(), n);
            check_units(&g);
        }
    }

    #[test]
    fn fibonacci_units_are_valid() {
        for n in [1, 8, 512] {
            let f = sample_sphere(n, SamplingScheme::Fibonacci);
            assert_eq!(f.len(), n);
            check_units(&f);
        }
    }

    #[test]
    fn random_is_deterministic() {
        let a = sample_sphere(100, SamplingScheme::Random { seed: 7 });
        let b = sample_sphere(100, SamplingScheme::Random { seed: 7 });
        assert_eq!(a, b);
        check_units(&a);
        assert_ne!(a, sample_sphere(100, SamplingScheme::Random { seed: 8 }));
    }

    #[test]
    fn approach_distances() {
        let target = ImaginaryUnit::normalized(0.2, -0.5, 0.7).unwrap();
        for (m, u) in approach_units(target, 40).into_iter().enumerate() {
            let want = 0.5f64.powi(m as i32 + 1);
            assert!((u.dist_to_slice(target) - want).abs() <= 1e-15);
        }
        // along a basis axis the perturbation is exact down to tiny distances
        for (m, u) in approach_units(ImaginaryUnit::I, 60).into_iter().enumerate() {
            let want = 0.5f64.powi(m as i32 + 1);
            assert_eq!(u.dist_to_slice(ImaginaryUnit::I), want);
        }
    }
}
