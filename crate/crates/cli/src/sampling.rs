use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slicereg::quaternion::sample_sphere;
use slicereg::{ImaginaryUnit, Quaternion, SamplingScheme, UnitMatrix};

use crate::error::CliResult;

/// All randomness of a job, drawn from one seeded stream in a fixed order.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn units(&mut self, n: usize) -> Vec<ImaginaryUnit> {
        sample_sphere(
            n,
            SamplingScheme::Random {
                seed: self.rng.gen(),
            },
        )
    }

    pub fn unit(&mut self) -> ImaginaryUnit {
        self.units(1)[0]
    }

    /// Components uniform in `[-1, 1]`.
    pub fn quaternion(&mut self) -> Quaternion {
        let mut c = || self.rng.gen_range(-1.0..=1.0);
        Quaternion::new(c(), c(), c(), c())
    }

    pub fn quaternions(&mut self, n: usize) -> Vec<Quaternion> {
        (0..n).map(|_| self.quaternion()).collect()
    }

    /// A unit matrix with `2^n` random rows; full slice-rank with probability one.
    pub fn unit_matrix(&mut self, n: usize) -> CliResult<UnitMatrix> {
        let rows = (0..1usize << n).map(|_| self.units(n)).collect();
        Ok(UnitMatrix::from_units(n, rows)?)
    }
}
