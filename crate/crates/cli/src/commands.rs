use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use sph_core::bench::{bench_with, scaling_table, BenchOptions, BenchSummary, REALTIME_RATE_HZ};
use sph_core::signals::uniform_samples;
use sph_core::{oracle_model_run, OracleRelay, Trajectory};

use crate::config::{ExperimentConfig, OutputFormat};
use crate::error::CliError;

pub const DEFAULT_ORACLE_CEILING: usize = 5000;

/// Bank sizes for the `--scaling` table.
pub const SCALING_SIZES: [usize; 3] = [210, 3240, 10_000];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub n_hysterons: usize,
    pub samples: usize,
    pub min_f: f64,
    pub max_f: f64,
    pub wall_seconds: f64,
}

impl std::fmt::Display for RunSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "N={} samples={} f in [{}, {}] wall={:.3}s",
            self.n_hysterons, self.samples, self.min_f, self.max_f, self.wall_seconds
        )
    }
}

/// Generate the drive and run the bank; no files are touched.
pub fn simulate(cfg: &ExperimentConfig) -> Result<(Trajectory, RunSummary), CliError> {
    let xs = cfg.signal.generate()?;
    let mut bank = cfg.model.build()?;
    let start = Instant::now();
    let traj = bank.run(&xs)?;
    let wall_seconds = start.elapsed().as_secs_f64();
    let (min_f, max_f) = traj.output_range().unwrap_or((0.0, 0.0));
    let summary = RunSummary {
        n_hysterons: bank.len(),
        samples: traj.len(),
        min_f,
        max_f,
        wall_seconds,
    };
    Ok((traj, summary))
}

pub fn write_trajectory(
    traj: &Trajectory,
    path: &Path,
    format: OutputFormat,
) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    match format {
        OutputFormat::Csv => traj.write_csv(&mut w).map_err(io)?,
        OutputFormat::Json => {
            serde_json::to_writer(&mut w, traj)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            w.write_all(b"\n").map_err(io)?;
            w.flush().map_err(io)?;
        }
    }
    Ok(())
}

pub fn cmd_run(cfg: &ExperimentConfig) -> Result<RunSummary, CliError> {
    let path = cfg.output.path.as_deref().ok_or_else(|| {
        CliError::Config("output.path: no trajectory path (set it or pass --out)".into())
    })?;
    let (traj, summary) = simulate(cfg)?;
    write_trajectory(
        &traj.decimate(cfg.output.decimation),
        path,
        cfg.output.format,
    )?;
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub n_hysterons: usize,
    pub samples: usize,
    pub seed: u64,
}

/// Drive the configured bank and the oracle model with the same seeded
/// random input spanning the mesh range plus a 10% margin on each side,
/// and require identical outputs.
pub fn cmd_verify(
    cfg: &ExperimentConfig,
    samples: usize,
    seed: u64,
    ceiling: usize,
) -> Result<VerifyReport, CliError> {
    let mut bank = cfg.model.build()?;
    if bank.len() > ceiling {
        return Err(CliError::Config(format!(
            "model has {} hysterons, above the oracle ceiling of {ceiling}",
            bank.len()
        )));
    }
    let margin = 0.1 * (cfg.model.x_max - cfg.model.x_min);
    let xs = uniform_samples(
        samples,
        cfg.model.x_min - margin,
        cfg.model.x_max + margin,
        seed,
    )?;

    let mut relays = (0..bank.len())
        .map(|i| OracleRelay::from_params(bank.params(i), bank.states()[i] as i8))
        .collect::<Result<Vec<_>, _>>()?;
    let weights = bank.weights().to_vec();
    let expected = oracle_model_run(&mut relays, &weights, &xs)?;
    let got = bank.run(&xs)?;

    if let Some((g, e)) = got
        .iter()
        .zip(&expected)
        .find(|(g, e)| g.f.to_bits() != e.f.to_bits())
    {
        return Err(CliError::Mismatch(format!(
            "first divergence at sample {} (x = {}): bank f = {}, oracle f = {}",
            g.index, g.x, g.f, e.f
        )));
    }
    Ok(VerifyReport {
        n_hysterons: bank.len(),
        samples,
        seed,
    })
}

/// Time the configured bank on the configured drive for each worker count.
pub fn cmd_bench(
    cfg: &ExperimentConfig,
    workers: &[usize],
    opts: BenchOptions,
) -> Result<Vec<BenchSummary>, CliError> {
    let bank = cfg.model.build()?;
    let xs = cfg.signal.generate()?;
    workers
        .iter()
        .map(|&w| bench_with(&bank, &xs, w, opts).map_err(CliError::from))
        .collect()
}

/// Synthetic banks of [`SCALING_SIZES`] hysterons on a sweep of `samples`.
pub fn cmd_scaling(
    samples: usize,
    workers: &[usize],
    opts: BenchOptions,
) -> Result<Vec<BenchSummary>, CliError> {
    Ok(scaling_table(&SCALING_SIZES, samples, workers, opts)?)
}

pub fn describe_bench(s: &BenchSummary) -> String {
    format!(
        "N={:<6} workers={:<2} samples={:<7} updates/s min/median/max = {:.3e}/{:.3e}/{:.3e}  samples/s = {:.3e}  \
         max N at {} Hz = {:.0}  real-time margin = {:.1}x  checksum = {:#018x}",
        s.n_hysterons,
        s.workers,
        s.samples,
        s.min_updates_per_second,
        s.median_updates_per_second,
        s.max_updates_per_second,
        s.median_samples_per_second,
        REALTIME_RATE_HZ,
        s.max_hysterons_at_realtime,
        s.realtime_margin,
        s.checksum
    )
}
