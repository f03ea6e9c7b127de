//! Throughput measurement for hysteron banks.
//!
//! Every timed run is checked against a single-threaded run of the same
//! bank under [`Reduction::Blocked`]; a report is only produced when the
//! output checksums agree.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    assign_weights, build_mesh, DensitySpec, HysteronBank, InitPreset, MeshSpec, Reduction,
};
use crate::signals::SignalSpec;

/// Sample rate of the real-time operating point used as the throughput floor.
pub const REALTIME_RATE_HZ: f64 = 2000.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub n_hysterons: usize,
    pub samples: usize,
    pub wall_seconds: f64,
    pub updates_per_second: f64,
    pub samples_per_second: f64,
    pub workers: usize,
    pub checksum: u64,
}

impl BenchReport {
    fn new(
        n_hysterons: usize,
        samples: usize,
        wall_seconds: f64,
        workers: usize,
        checksum: u64,
    ) -> Self {
        // clamp so a sub-resolution timing still yields finite rates
        let wall_seconds = wall_seconds.max(1e-9);
        Self {
            n_hysterons,
            samples,
            wall_seconds,
            updates_per_second: (n_hysterons * samples) as f64 / wall_seconds,
            samples_per_second: samples as f64 / wall_seconds,
            workers,
            checksum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchOptions {
    pub warmup: usize,
    pub repeats: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            warmup: 3,
            repeats: 1,
        }
    }
}

/// Repeated measurements of one workload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    pub n_hysterons: usize,
    pub samples: usize,
    pub workers: usize,
    pub warmup: usize,
    pub runs: Vec<BenchReport>,
    pub min_updates_per_second: f64,
    pub median_updates_per_second: f64,
    pub max_updates_per_second: f64,
    pub median_samples_per_second: f64,
    /// Largest bank the median update rate could sustain at [`REALTIME_RATE_HZ`].
    pub max_hysterons_at_realtime: f64,
    /// Median samples per second divided by [`REALTIME_RATE_HZ`].
    pub realtime_margin: f64,
    pub checksum: u64,
    /// Largest |f| gap between the blocked and ascending reductions.
    pub max_reduction_gap: f64,
}

impl BenchSummary {
    pub fn median(&self) -> &BenchReport {
        let mut idx: Vec<usize> = (0..self.runs.len()).collect();
        idx.sort_by(|&a, &b| {
            self.runs[a]
                .updates_per_second
                .total_cmp(&self.runs[b].updates_per_second)
        });
        &self.runs[idx[idx.len() / 2]]
    }
}

/// FNV-1a over the output bit patterns.
pub fn checksum(outputs: impl IntoIterator<Item = f64>) -> u64 {
    outputs
        .into_iter()
        .fold(0xcbf2_9ce4_8422_2325u64, fold_checksum)
}

#[inline]
fn fold_checksum(h: u64, f: f64) -> u64 {
    f.to_bits().to_le_bytes().iter().fold(h, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// `n` hysterons taken in mesh order from the smallest uniform mesh on
/// `[-1, 1]` with at least `n` nodes, uniformly weighted, demagnetized.
pub fn synthetic_bank(n: usize) -> Result<HysteronBank> {
    if n == 0 {
        return Err(Error::InvalidMesh(
            "benchmark bank needs at least one hysteron".into(),
        ));
    }
    let mut levels = 1;
    while levels * (levels + 1) / 2 < n {
        levels += 1;
    }
    let mut nodes = build_mesh(&MeshSpec::new(-1.0, 1.0, levels)?)?;
    nodes.truncate(n);
    let weights = assign_weights(&nodes, &DensitySpec::Uniform)?;
    HysteronBank::new(&nodes, &weights, InitPreset::Demagnetized, 0.0)
}

/// Full-range 1 Hz sweep sampled at the real-time rate.
pub fn sweep_input(samples: usize) -> Result<Vec<f64>> {
    if samples == 0 {
        return Err(Error::InvalidSignal(
            "benchmark needs at least one sample".into(),
        ));
    }
    SignalSpec::Sinusoid {
        amplitude: 1.0,
        frequency_hz: 1.0,
        sample_rate_hz: REALTIME_RATE_HZ,
        duration_s: samples as f64 / REALTIME_RATE_HZ,
    }
    .generate()
}

fn timed_run(template: &HysteronBank, xs: &[f64], workers: usize) -> Result<(f64, u64)> {
    let mut bank = template
        .clone()
        .with_reduction(Reduction::Blocked)
        .with_workers(workers)?;
    let start = Instant::now();
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &x in xs {
        h = fold_checksum(h, bank.step(x)?);
    }
    Ok((start.elapsed().as_secs_f64(), h))
}

/// Benchmark `template` (in its current state) on `xs`.
pub fn bench_with(
    template: &HysteronBank,
    xs: &[f64],
    workers: usize,
    opts: BenchOptions,
) -> Result<BenchSummary> {
    if xs.is_empty() {
        return Err(Error::InvalidSignal(
            "benchmark needs at least one sample".into(),
        ));
    }
    let repeats = opts.repeats.max(1);

    let mut reference_bank = template
        .clone()
        .with_reduction(Reduction::Blocked)
        .with_workers(1)?;
    let reference_out = reference_bank.run_outputs(xs)?;
    let reference = checksum(reference_out.iter().copied());
    let mut ascending_bank = template
        .clone()
        .with_reduction(Reduction::Ascending)
        .with_workers(1)?;
    let ascending_out = ascending_bank.run_outputs(xs)?;
    let max_reduction_gap = reference_out
        .iter()
        .zip(&ascending_out)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));

    for _ in 0..opts.warmup {
        timed_run(template, xs, workers)?;
    }
    let mut runs = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let (secs, timed) = timed_run(template, xs, workers)?;
        if timed != reference {
            return Err(Error::ChecksumMismatch { timed, reference });
        }
        runs.push(BenchReport::new(
            template.len(),
            xs.len(),
            secs,
            workers,
            timed,
        ));
    }

    let mut ups: Vec<f64> = runs.iter().map(|r| r.updates_per_second).collect();
    ups.sort_by(f64::total_cmp);
    let mut sps: Vec<f64> = runs.iter().map(|r| r.samples_per_second).collect();
    sps.sort_by(f64::total_cmp);
    let median_ups = ups[ups.len() / 2];
    let median_sps = sps[sps.len() / 2];
    Ok(BenchSummary {
        n_hysterons: template.len(),
        samples: xs.len(),
        workers,
        warmup: opts.warmup,
        min_updates_per_second: ups[0],
        median_updates_per_second: median_ups,
        max_updates_per_second: ups[ups.len() - 1],
        median_samples_per_second: median_sps,
        max_hysterons_at_realtime: median_ups / REALTIME_RATE_HZ,
        realtime_margin: median_sps / REALTIME_RATE_HZ,
        checksum: reference,
        max_reduction_gap,
        runs,
    })
}

/// One checked, timed run of a synthetic `n`-hysteron bank over `samples`
/// sweep samples, after the default warm-up.
pub fn bench_bank(n: usize, samples: usize, workers: usize) -> Result<BenchReport> {
    let bank = synthetic_bank(n)?;
    let xs = sweep_input(samples)?;
    let summary = bench_with(&bank, &xs, workers, BenchOptions::default())?;
    Ok(summary.runs[0])
}

/// Summaries for every `(n, workers)` pair.
pub fn scaling_table(
    ns: &[usize],
    samples: usize,
    workers: &[usize],
    opts: BenchOptions,
) -> Result<Vec<BenchSummary>> {
    let xs = sweep_input(samples)?;
    let mut out = Vec::new();
    for &n in ns {
        let bank = synthetic_bank(n)?;
        for &w in workers {
            out.push(bench_with(&bank, &xs, w, opts)?);
        }
    }
    Ok(out)
}
