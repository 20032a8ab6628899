//! The job description: one JSON document, overridable from the command line.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use slicereg::SamplingScheme;

use crate::codec::{ComplexJson, GermJson, PathJson, QuatJson, UnitJson, UnitMatrixJson};
use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    VerifyIntertwine,
    VerifyConjugation,
    ReprEval,
    Extend,
    ContinuePath,
    Counterexample,
    Topology,
}

impl CommandName {
    /// Tolerance used when neither `--tol` nor the config sets one.
    pub fn default_tol(self) -> f64 {
        match self {
            Self::VerifyIntertwine => 1e-12,
            Self::VerifyConjugation => 1e-10,
            Self::ReprEval => 1e-9,
            Self::Extend => 1e-10,
            Self::ContinuePath => 1e-8,
            Self::Counterexample => 1e-4,
            Self::Topology => 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Grid,
    #[default]
    Fibonacci,
    /// Seeded from the job seed.
    Random,
}

impl Scheme {
    pub fn resolve(self, seed: u64) -> SamplingScheme {
        match self {
            Self::Grid => SamplingScheme::Grid,
            Self::Fibonacci => SamplingScheme::Fibonacci,
            Self::Random => SamplingScheme::Random { seed },
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TopologyExample {
    #[default]
    Ellipse,
    Ball,
    Custom,
}

/// A slice disk `{x + yJ : |x + iy − center| < radius}` inside one slice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskJson {
    pub unit: UnitJson,
    pub center: ComplexJson,
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobConfig {
    pub command: Option<CommandName>,
    pub seed: u64,
    pub tol: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub scheme: Scheme,

    // identity sweeps
    pub n_min: usize,
    pub n_max: usize,
    pub samples: usize,
    /// Real part added to the first sampled unit; a nonzero value breaks purity.
    pub perturb: f64,

    // repr-eval
    pub n: usize,
    pub k_samples: usize,
    pub degree: usize,
    pub classical_tol: f64,
    pub j: Option<UnitMatrixJson>,
    pub polynomial: Option<Vec<QuatJson>>,
    pub path: Option<Vec<PathJson>>,

    // extend
    pub i1: Option<UnitJson>,
    pub i2: Option<UnitJson>,
    pub target: Option<UnitJson>,
    pub point: ComplexJson,
    pub values: Option<[QuatJson; 2]>,
    pub h: f64,

    // continue-path
    pub germ: Option<GermJson>,
    pub units: Option<Vec<UnitJson>>,

    // counterexample
    pub probe_center: ComplexJson,
    pub probe_radius: f64,
    pub probe_points: usize,
    pub witness_units: usize,
    pub openness_units: usize,
    pub openness_grid: usize,
    pub sweep_csv: Option<PathBuf>,

    // topology
    pub example: TopologyExample,
    pub custom: Option<Vec<DiskJson>>,
    pub grid: usize,
}

impl Default for JobConfig {
    fn default() -> Self {
        Self {
            command: None,
            seed: 0,
            tol: None,
            format: Format::Json,
            out: None,
            scheme: Scheme::Fibonacci,
            n_min: 1,
            n_max: 6,
            samples: 200,
            perturb: 0.0,
            n: 2,
            k_samples: 100,
            degree: 6,
            classical_tol: 1e-12,
            j: None,
            polynomial: None,
            path: None,
            i1: None,
            i2: None,
            target: None,
            point: [0.3, 0.7],
            values: None,
            h: 1e-3,
            germ: None,
            units: None,
            probe_center: [0.0, 2.0],
            probe_radius: 1.0,
            probe_points: 256,
            witness_units: 512,
            openness_units: 16,
            openness_grid: 25,
            sweep_csv: None,
            example: TopologyExample::Ellipse,
            custom: None,
            grid: 400,
        }
    }
}

impl JobConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn tol(&self) -> f64 {
        self.tol
            .unwrap_or_else(|| self.command.map_or(0.0, CommandName::default_tol))
    }

    /// Rejects values no command can run with, before any computation starts.
    pub fn validate(&self) -> CliResult<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if let Some(t) = self.tol {
            if !(t >= 0.0 && t.is_finite()) {
                return bad(format!("tol must be a finite non-negative number, got {t}"));
            }
        }
        if self.n_min == 0 || self.n_min > self.n_max {
            return bad(format!(
                "need 1 <= n_min <= n_max, got {}..{}",
                self.n_min, self.n_max
            ));
        }
        if self.n_max > slicereg::slice_calculus::MAX_N || self.n > slicereg::slice_calculus::MAX_N
        {
            return bad(format!(
                "N is capped at {}",
                slicereg::slice_calculus::MAX_N
            ));
        }
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return bad(format!("h must be positive, got {}", self.h));
        }
        if !self.perturb.is_finite() {
            return bad("perturb must be finite".into());
        }
        Ok(())
    }
}
