//! Acceptance criteria. Runs as a plain binary (`harness = false`) so every
//! criterion prints exactly one PASS/FAIL line regardless of output capture.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sph_cli::commands::simulate;
use sph_cli::preset;
use sph_core::bench::{bench_bank, REALTIME_RATE_HZ};
use sph_core::{
    oracle_model_run, relay_step, resample_piecewise_linear, DensitySpec, HysteronBank,
    HysteronParams, InitPreset, ModelConfig, OracleRelay, Reduction, RelayState, SignalSpec,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn uniform_bank(levels: usize) -> HysteronBank {
    ModelConfig {
        x_min: -1.0,
        x_max: 1.0,
        levels,
        density: DensitySpec::Uniform,
        init: InitPreset::Demagnetized,
        x0: 0.0,
    }
    .build()
    .unwrap()
}

fn within(limit_s: f64, elapsed: Duration) -> Result<f64, String> {
    let s = elapsed.as_secs_f64();
    if s < limit_s {
        Ok(s)
    } else {
        Err(format!("took {s:.2} s, limit {limit_s} s"))
    }
}

/// Random input that also lands exactly on the given thresholds now and then.
fn random_input(rng: &mut ChaCha8Rng, n: usize, thresholds: &[f64]) -> Vec<f64> {
    (0..n)
        .map(|_| {
            if !thresholds.is_empty() && rng.gen_bool(0.1) {
                thresholds[rng.gen_range(0..thresholds.len())]
            } else {
                rng.gen_range(-1.3..1.3)
            }
        })
        .collect()
}

fn relay_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA1);
    let mut mismatches = 0usize;
    for _ in 0..10_000 {
        let beta = rng.gen_range(-1.0..1.0);
        let alpha = beta + rng.gen_range(1e-9..1.0);
        if alpha <= beta {
            continue;
        }
        let params = HysteronParams::new(alpha, beta).unwrap();
        let up = rng.gen_bool(0.5);
        let mut state = if up { RelayState::Up } else { RelayState::Down };
        let mut oracle = OracleRelay::new(alpha, beta, if up { 1 } else { -1 }).unwrap();
        for x in random_input(&mut rng, 1000, &[alpha, beta]) {
            state = relay_step(params, state, x).unwrap();
            if state.value() != oracle.step(x) as f64 {
                mismatches += 1;
            }
        }
    }
    let secs = within(10.0, start.elapsed())?;
    if mismatches > 0 {
        return Err(format!("{mismatches} mismatching samples"));
    }
    Ok(format!(
        "10000 hysterons x 1000 samples, 0 mismatches, {secs:.2} s (< 10 s)"
    ))
}

fn bank_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xB2);
    let mut notes = Vec::new();
    for levels in [3usize, 9, 20] {
        let template = uniform_bank(levels);
        let n = template.len();
        let mut thresholds: Vec<f64> = template.alphas().to_vec();
        thresholds.extend_from_slice(template.betas());
        let xs = random_input(&mut rng, 10_000, &thresholds);

        let mut relays: Vec<OracleRelay> = (0..n)
            .map(|i| {
                OracleRelay::from_params(template.params(i), template.states()[i] as i8).unwrap()
            })
            .collect();
        let expected = oracle_model_run(&mut relays, template.weights(), &xs)
            .unwrap()
            .outputs();

        let serial = template.clone().run_outputs(&xs).unwrap();
        if let Some(k) = serial
            .iter()
            .zip(&expected)
            .position(|(a, b)| a.to_bits() != b.to_bits())
        {
            return Err(format!(
                "N={n}: serial bank differs from oracle at sample {k}"
            ));
        }

        let tol = 1e-12 * n as f64;
        let mut worst = 0.0f64;
        for reduction in [Reduction::Ascending, Reduction::Blocked] {
            let mut par = template
                .clone()
                .with_reduction(reduction)
                .with_workers(4)
                .unwrap();
            let out = par.run_outputs(&xs).unwrap();
            worst = out
                .iter()
                .zip(&expected)
                .fold(worst, |m, (a, b)| m.max((a - b).abs()));
        }
        if worst > tol {
            return Err(format!("N={n}: parallel deviation {worst:e} > {tol:e}"));
        }
        notes.push(format!("N={n} max parallel gap {worst:.1e}"));
    }
    let secs = within(30.0, start.elapsed())?;
    Ok(format!(
        "serial exact; {}; {secs:.2} s (< 30 s)",
        notes.join(", ")
    ))
}

fn fig6a_major_loops() -> Outcome {
    let cfg = preset("fig6a").map_err(|e| e.to_string())?;
    let (traj, summary) = simulate(&cfg).map_err(|e| e.to_string())?;
    if summary.n_hysterons != 210 {
        return Err(format!(
            "expected 210 hysterons, got {}",
            summary.n_hysterons
        ));
    }
    let period = 2000;
    let loops: Vec<_> = traj.samples.chunks(period).collect();
    if loops.len() != 120 || loops.iter().any(|l| l.len() != period) {
        return Err(format!(
            "expected 120 loops of {period} samples, got {}",
            loops.len()
        ));
    }
    for (j, lp) in loops.iter().enumerate().skip(2) {
        let same = lp
            .iter()
            .zip(loops[1])
            .all(|(a, b)| a.x.to_bits() == b.x.to_bits() && a.f.to_bits() == b.f.to_bits());
        if !same {
            return Err(format!("loop {} differs from loop 2", j + 1));
        }
    }
    for (j, lp) in loops.iter().enumerate() {
        let top = lp.iter().max_by(|a, b| a.x.total_cmp(&b.x)).unwrap();
        let bottom = lp.iter().min_by(|a, b| a.x.total_cmp(&b.x)).unwrap();
        if (top.f - 1.0).abs() > 1e-12 || (bottom.f + 1.0).abs() > 1e-12 {
            return Err(format!(
                "loop {}: f = {} at x = {}, f = {} at x = {}",
                j + 1,
                top.f,
                top.x,
                bottom.f,
                bottom.x
            ));
        }
    }
    Ok(format!(
        "N=210, 120 loops, loops 2..120 bit-identical, f = {:+.15} / {:+.15} at input extrema",
        summary.max_f, summary.min_f
    ))
}

fn fig5_nested_loops() -> Outcome {
    let start = Instant::now();
    let cfg = preset("fig5").map_err(|e| e.to_string())?;
    let period = match cfg.signal {
        SignalSpec::DecayingSinusoid {
            frequency_hz,
            sample_rate_hz,
            ..
        } => (sample_rate_hz / frequency_hz).round() as usize,
        _ => return Err("fig5 preset must use a decaying sinusoid".into()),
    };
    let (traj, summary) = simulate(&cfg).map_err(|e| e.to_string())?;
    if summary.n_hysterons != 3240 {
        return Err(format!(
            "expected 3240 hysterons, got {}",
            summary.n_hysterons
        ));
    }
    let boxes: Vec<(f64, f64, f64, f64)> = traj
        .samples
        .chunks(period)
        .map(|c| {
            c.iter().fold(
                (f64::MAX, f64::MIN, f64::MAX, f64::MIN),
                |(xl, xh, fl, fh), s| (xl.min(s.x), xh.max(s.x), fl.min(s.f), fh.max(s.f)),
            )
        })
        .collect();
    let extrema: Vec<f64> = boxes.iter().map(|b| b.2.abs().max(b.3.abs())).collect();
    if let Some(k) = extrema.windows(2).position(|w| w[1] >= w[0]) {
        return Err(format!(
            "extremal |f| not decreasing at period {}: {extrema:?}",
            k + 2
        ));
    }
    let last = *extrema.last().unwrap();
    if last >= 0.05 {
        return Err(format!("final extremal |f| = {last} not below 0.05"));
    }
    if let Some(k) = boxes.windows(2).position(|w| {
        !(w[1].0 >= w[0].0 && w[1].1 <= w[0].1 && w[1].2 >= w[0].2 && w[1].3 <= w[0].3)
    }) {
        return Err(format!("period {} not nested in period {}", k + 2, k + 1));
    }
    let secs = within(60.0, start.elapsed())?;
    Ok(format!(
        "N=3240, {} periods, extremal |f| {:.3} -> {:.4}, all nested, {secs:.2} s (< 60 s)",
        extrema.len(),
        extrema[0],
        last
    ))
}

fn wiping_out() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3);
    let template = uniform_bank(20);
    for trial in 0..200 {
        let mut bank = template.clone();
        let history: Vec<f64> = (0..rng.gen_range(1..60))
            .map(|_| rng.gen_range(-1.2..1.2))
            .collect();
        bank.run(&history).unwrap();
        let start = bank.snapshot();
        let from = bank.x_last();
        let rising = rng.gen_bool(0.5);
        let c = if rising {
            rng.gen_range(from..=1.3)
        } else {
            rng.gen_range(-1.3..=from)
        };
        // alternating reversals, all inside [from, c]
        let mut seq: Vec<f64> = (0..rng.gen_range(2..20))
            .map(|_| from + rng.gen_range(0.0..=1.0) * (c - from))
            .collect();
        seq.push(c);
        bank.run(&seq).unwrap();
        let long = bank.snapshot();

        bank.restore(&start).unwrap();
        bank.step(c).unwrap();
        if bank.states() != &long.states[..] {
            return Err(format!(
                "trial {trial}: states differ after dominant extremum {c}"
            ));
        }
    }
    Ok("200 sequences, post-state arrays identical".into())
}

fn ramp(from: f64, to: f64, steps: usize) -> Vec<f64> {
    (1..=steps)
        .map(|k| from + (to - from) * k as f64 / steps as f64)
        .collect()
}

fn congruency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD4);
    let template = uniform_bank(20);
    let tol = 1e-12 * template.len() as f64;
    let mut worst = 0.0f64;
    let mut offsets_seen = 0;
    for pair in 0..50 {
        let u = rng.gen_range(-0.8..0.4);
        let v = rng.gen_range(u + 0.1..0.9);
        let mut curves = Vec::new();
        for _ in 0..2 {
            let mut bank = template.clone();
            let history: Vec<f64> = (0..rng.gen_range(1..40))
                .map(|_| rng.gen_range(-1.2..1.2))
                .collect();
            bank.run(&history).unwrap();
            bank.run(&[u, v]).unwrap();
            let mut lp = ramp(v, u, 50);
            lp.extend(ramp(u, v, 50));
            curves.push(bank.run_outputs(&lp).unwrap());
        }
        let d: Vec<f64> = curves[0]
            .iter()
            .zip(&curves[1])
            .map(|(a, b)| a - b)
            .collect();
        let spread = d.iter().fold(0.0f64, |m, x| m.max((x - d[0]).abs()));
        worst = worst.max(spread);
        if d[0].abs() > tol {
            offsets_seen += 1;
        }
        if spread > tol {
            return Err(format!(
                "pair {pair}: offset varies by {spread:e} > {tol:e}"
            ));
        }
    }
    Ok(format!(
        "50 pairs, max offset variation {worst:.1e} (tol {tol:.1e}), {offsets_seen} pairs with nonzero offset"
    ))
}

fn rate_independence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xE5);
    let template = uniform_bank(20);
    for trial in 0..100 {
        let coarse: Vec<f64> = (0..rng.gen_range(2..200))
            .map(|_| rng.gen_range(-1.2..1.2))
            .collect();
        let pts: Vec<(f64, f64)> = coarse
            .iter()
            .enumerate()
            .map(|(k, &x)| (k as f64, x))
            .collect();
        let fine = resample_piecewise_linear(&pts, 10.0).map_err(|e| e.to_string())?;
        if fine.len() != 10 * (coarse.len() - 1) + 1 {
            return Err(format!("trial {trial}: resampled length {}", fine.len()));
        }
        let fc = template.clone().run_outputs(&coarse).unwrap();
        let ff = template.clone().run_outputs(&fine).unwrap();
        if let Some(k) = (0..coarse.len()).find(|&k| ff[10 * k].to_bits() != fc[k].to_bits()) {
            return Err(format!("trial {trial}: f differs at coarse sample {k}"));
        }
    }
    Ok("100 sequences upsampled 10x, f identical at original instants".into())
}

fn realtime_throughput() -> Outcome {
    let report = bench_bank(210, 240_000, 1).map_err(|e| e.to_string())?;
    if report.samples_per_second < REALTIME_RATE_HZ {
        return Err(format!(
            "{:.0} samples/s below {REALTIME_RATE_HZ}",
            report.samples_per_second
        ));
    }
    Ok(format!(
        "N=210, 1 worker: {:.3e} samples/s, {:.3e} updates/s, margin {:.0}x over 2 kHz, checksum {:#018x} verified",
        report.samples_per_second,
        report.updates_per_second,
        report.samples_per_second / REALTIME_RATE_HZ,
        report.checksum
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("relay-oracle equivalence", relay_oracle_equivalence),
        ("bank-oracle equivalence", bank_oracle_equivalence),
        ("210-hysteron major loops at 2 kHz", fig6a_major_loops),
        ("3240-hysteron nested minor loops", fig5_nested_loops),
        ("wiping-out", wiping_out),
        ("congruency", congruency),
        ("rate independence", rate_independence),
        ("real-time-equivalent throughput", realtime_throughput),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS  criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
