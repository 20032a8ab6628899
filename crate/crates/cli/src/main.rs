//! `slicereg`: reports for the slice regular function engine.
//!
//! Exit codes: 0 success, 2 invariant violation, 3 configuration error,
//! 4 numerical failure.

// `!(x > t)` on floats also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod codec;
mod commands;
mod config;
mod error;
mod report;
mod sampling;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{CommandName, Format, JobConfig, Scheme, TopologyExample};
use error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "slicereg", version, about)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand; each overrides the matching config field.
#[derive(Args, Debug)]
struct Common {
    /// JSON job file; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for every random draw (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Acceptance tolerance. Defaults: verify-intertwine 1e-12, verify-conjugation
    /// 1e-10, repr-eval 1e-9, extend 1e-10, continue-path 1e-8, counterexample 1e-4
    /// (on | |monodromy| - 2π |); unused by topology.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Report destination (default stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format (default json).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Unit sampling scheme (default fibonacci).
    #[arg(long, global = true, value_enum)]
    scheme: Option<Scheme>,
}

#[derive(Args, Debug, Default)]
struct Sweep {
    /// Smallest N (default 1).
    #[arg(long)]
    n_min: Option<usize>,
    /// Largest N (default 6, cap 12).
    #[arg(long)]
    n_max: Option<usize>,
    /// Random draws per N (default 200).
    #[arg(long)]
    samples: Option<usize>,
    /// Add this real part to the first sampled unit (fault injection).
    #[arg(long)]
    perturb: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check K_N·ζ(K) = ζ(K)·σ_N on random unit tuples; CSV columns N,sample,residual.
    VerifyIntertwine(Sweep),
    /// Check σ_N·𝓜(J)⁻¹ = 𝓜(J)⁻¹·D_N(J) on random full slice-rank J; CSV columns N,sample,residual.
    VerifyConjugation(Sweep),
    /// Representation formula against a polynomial oracle over a K sweep.
    ReprEval {
        /// Size N of the random unit matrix when the config gives none (default 2).
        #[arg(long)]
        n: Option<usize>,
        /// Random K tuples, in addition to the rows of J (default 100).
        #[arg(long)]
        k_samples: Option<usize>,
        /// Degree of the random polynomial oracle (default 6).
        #[arg(long)]
        degree: Option<usize>,
        /// Bound on the N=1 difference from the two-term formula (default 1e-12).
        #[arg(long)]
        classical_tol: Option<f64>,
    },
    /// Two-slice extension formula at one point.
    Extend {
        /// Point x + yJ as `x,y` (default 0.3,0.7).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Option<Vec<f64>>,
        /// Step for the ∂̄ residual probe (default 1e-3).
        #[arg(long)]
        h: Option<f64>,
    },
    /// Continue a germ along an N-part path given in the config.
    ContinuePath,
    /// Coverage of the probe circle, log monodromy around it, sampled openness.
    Counterexample {
        /// Probe circle center `x,y` in slice coordinates (default 0,2).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        probe_center: Option<Vec<f64>>,
        /// Probe circle radius (default 1).
        #[arg(long)]
        probe_radius: Option<f64>,
        /// Probe points on the circle (default 256).
        #[arg(long)]
        probe_points: Option<usize>,
        /// Candidate witness units (default 512).
        #[arg(long)]
        witness_units: Option<usize>,
        /// Also write the per-unit coverage sweep as CSV.
        #[arg(long)]
        sweep_csv: Option<PathBuf>,
    },
    /// Slice-topology witnesses.
    Topology {
        /// Which example to run (default ellipse).
        #[arg(long, value_enum)]
        example: Option<TopologyExample>,
        /// Sampled slices (default 200).
        #[arg(long)]
        samples: Option<usize>,
        /// Sample points per slice for openness (default 400).
        #[arg(long)]
        grid: Option<usize>,
    },
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn pair(flag: &str, v: Option<Vec<f64>>) -> CliResult<Option<[f64; 2]>> {
    match v.as_deref() {
        None => Ok(None),
        Some(&[a, b]) => Ok(Some([a, b])),
        Some(other) => Err(CliError::Config(format!(
            "--{flag} takes two comma-separated numbers, got {}",
            other.len()
        ))),
    }
}

fn resolve(cli: Cli) -> CliResult<(CommandName, JobConfig)> {
    let mut cfg = match &cli.common.config {
        Some(path) => JobConfig::load(path)?,
        None => JobConfig::default(),
    };
    let name = match &cli.command {
        Command::VerifyIntertwine(_) => CommandName::VerifyIntertwine,
        Command::VerifyConjugation(_) => CommandName::VerifyConjugation,
        Command::ReprEval { .. } => CommandName::ReprEval,
        Command::Extend { .. } => CommandName::Extend,
        Command::ContinuePath => CommandName::ContinuePath,
        Command::Counterexample { .. } => CommandName::Counterexample,
        Command::Topology { .. } => CommandName::Topology,
    };
    if let Some(other) = cfg.command.filter(|c| *c != name) {
        return Err(CliError::Config(format!(
            "config is for {other:?} but {name:?} was requested"
        )));
    }
    cfg.command = Some(name);
    let c = cli.common;
    set(&mut cfg.seed, c.seed);
    cfg.tol = c.tol.or(cfg.tol);
    cfg.out = c.out.or(cfg.out);
    set(&mut cfg.format, c.format);
    set(&mut cfg.scheme, c.scheme);
    match cli.command {
        Command::VerifyIntertwine(s) | Command::VerifyConjugation(s) => {
            set(&mut cfg.n_min, s.n_min);
            set(&mut cfg.n_max, s.n_max);
            set(&mut cfg.samples, s.samples);
            set(&mut cfg.perturb, s.perturb);
        }
        Command::ReprEval {
            n,
            k_samples,
            degree,
            classical_tol,
        } => {
            set(&mut cfg.n, n);
            set(&mut cfg.k_samples, k_samples);
            set(&mut cfg.degree, degree);
            set(&mut cfg.classical_tol, classical_tol);
        }
        Command::Extend { point, h } => {
            set(&mut cfg.point, pair("point", point)?);
            set(&mut cfg.h, h);
        }
        Command::ContinuePath => {}
        Command::Counterexample {
            probe_center,
            probe_radius,
            probe_points,
            witness_units,
            sweep_csv,
        } => {
            set(&mut cfg.probe_center, pair("probe-center", probe_center)?);
            set(&mut cfg.probe_radius, probe_radius);
            set(&mut cfg.probe_points, probe_points);
            set(&mut cfg.witness_units, witness_units);
            cfg.sweep_csv = sweep_csv.or(cfg.sweep_csv);
        }
        Command::Topology {
            example,
            samples,
            grid,
        } => {
            set(&mut cfg.example, example);
            set(&mut cfg.samples, samples);
            set(&mut cfg.grid, grid);
        }
    }
    cfg.validate()?;
    Ok((name, cfg))
}

fn run(cli: Cli) -> CliResult<()> {
    let (name, cfg) = resolve(cli)?;
    let report = commands::dispatch(name, &cfg)?;
    report.write(cfg.format, cfg.out.as_deref())?;
    match report.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage errors are configuration errors, not clap's default code 2
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("slicereg: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
