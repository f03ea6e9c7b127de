//! Deterministic input drives.
//!
//! Sinusoids are evaluated from the phase `((f k) mod fs) / fs` so that a
//! drive whose period is a whole number of samples repeats bit-for-bit.

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SignalSpec {
    /// `A sin(2 pi f k / fs)`
    Sinusoid {
        amplitude: f64,
        frequency_hz: f64,
        sample_rate_hz: f64,
        duration_s: f64,
    },
    /// `A exp(-decay k / fs) sin(2 pi f k / fs)`
    DecayingSinusoid {
        amplitude: f64,
        frequency_hz: f64,
        /// Envelope decay rate in 1/s.
        decay: f64,
        sample_rate_hz: f64,
        duration_s: f64,
    },
    /// Uniform white noise in `[-A, A]` through a one-pole low-pass with
    /// coefficient `1 - exp(-2 pi cutoff / fs)`.
    FilteredNoise {
        amplitude: f64,
        cutoff_hz: f64,
        seed: u64,
        sample_rate_hz: f64,
        duration_s: f64,
    },
    /// One decimal sample per line.
    FileReplay { path: PathBuf },
    /// CSV `t,x` breakpoints (header optional), linearly resampled.
    PiecewiseLinear { path: PathBuf, sample_rate_hz: f64 },
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidSignal(msg()))
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    check(v.is_finite() && v > 0.0, || {
        format!("{name} must be positive, got {v}")
    })
}

fn nonnegative(name: &str, v: f64) -> Result<()> {
    check(v.is_finite() && v >= 0.0, || {
        format!("{name} must be nonnegative, got {v}")
    })
}

fn sample_count(duration_s: f64, sample_rate_hz: f64) -> Result<usize> {
    positive("duration_s", duration_s)?;
    positive("sample_rate_hz", sample_rate_hz)?;
    let n = (duration_s * sample_rate_hz).round();
    check(n >= 1.0, || {
        format!(
            "duration_s * sample_rate_hz = {} rounds to zero samples",
            duration_s * sample_rate_hz
        )
    })?;
    Ok(n as usize)
}

#[inline]
fn phase(frequency_hz: f64, sample_rate_hz: f64, k: usize) -> f64 {
    TAU * ((frequency_hz * k as f64) % sample_rate_hz) / sample_rate_hz
}

impl SignalSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            SignalSpec::Sinusoid {
                amplitude,
                frequency_hz,
                sample_rate_hz,
                duration_s,
            } => {
                nonnegative("amplitude", *amplitude)?;
                positive("frequency_hz", *frequency_hz)?;
                sample_count(*duration_s, *sample_rate_hz).map(drop)
            }
            SignalSpec::DecayingSinusoid {
                amplitude,
                frequency_hz,
                decay,
                sample_rate_hz,
                duration_s,
            } => {
                nonnegative("amplitude", *amplitude)?;
                positive("frequency_hz", *frequency_hz)?;
                nonnegative("decay", *decay)?;
                sample_count(*duration_s, *sample_rate_hz).map(drop)
            }
            SignalSpec::FilteredNoise {
                amplitude,
                cutoff_hz,
                sample_rate_hz,
                duration_s,
                ..
            } => {
                nonnegative("amplitude", *amplitude)?;
                positive("cutoff_hz", *cutoff_hz)?;
                sample_count(*duration_s, *sample_rate_hz).map(drop)
            }
            SignalSpec::FileReplay { .. } => Ok(()),
            SignalSpec::PiecewiseLinear { sample_rate_hz, .. } => {
                positive("sample_rate_hz", *sample_rate_hz)
            }
        }
    }

    /// Replace the noise seed; other kinds are returned unchanged.
    pub fn with_seed(mut self, new_seed: u64) -> Self {
        if let SignalSpec::FilteredNoise { seed, .. } = &mut self {
            *seed = new_seed;
        }
        self
    }

    pub fn sample_rate_hz(&self) -> Option<f64> {
        match self {
            SignalSpec::Sinusoid { sample_rate_hz, .. }
            | SignalSpec::DecayingSinusoid { sample_rate_hz, .. }
            | SignalSpec::FilteredNoise { sample_rate_hz, .. }
            | SignalSpec::PiecewiseLinear { sample_rate_hz, .. } => Some(*sample_rate_hz),
            SignalSpec::FileReplay { .. } => None,
        }
    }

    pub fn generate(&self) -> Result<Vec<f64>> {
        self.validate()?;
        match self {
            SignalSpec::Sinusoid {
                amplitude,
                frequency_hz,
                sample_rate_hz,
                duration_s,
            } => {
                let n = sample_count(*duration_s, *sample_rate_hz)?;
                Ok((0..n)
                    .map(|k| amplitude * phase(*frequency_hz, *sample_rate_hz, k).sin())
                    .collect())
            }
            SignalSpec::DecayingSinusoid {
                amplitude,
                frequency_hz,
                decay,
                sample_rate_hz,
                duration_s,
            } => {
                let n = sample_count(*duration_s, *sample_rate_hz)?;
                Ok((0..n)
                    .map(|k| {
                        let envelope = (-decay * k as f64 / sample_rate_hz).exp();
                        amplitude * envelope * phase(*frequency_hz, *sample_rate_hz, k).sin()
                    })
                    .collect())
            }
            SignalSpec::FilteredNoise {
                amplitude,
                cutoff_hz,
                seed,
                sample_rate_hz,
                duration_s,
            } => {
                let n = sample_count(*duration_s, *sample_rate_hz)?;
                let c = 1.0 - (-TAU * cutoff_hz / sample_rate_hz).exp();
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut y = 0.0;
                Ok((0..n)
                    .map(|_| {
                        let u = if *amplitude > 0.0 {
                            rng.gen_range(-amplitude..=*amplitude)
                        } else {
                            0.0
                        };
                        y += c * (u - y);
                        y
                    })
                    .collect())
            }
            SignalSpec::FileReplay { path } => read_samples(path),
            SignalSpec::PiecewiseLinear {
                path,
                sample_rate_hz,
            } => resample_piecewise_linear(&read_breakpoints(path)?, *sample_rate_hz),
        }
    }
}

/// `samples` independent uniform draws from `[lo, hi]`, seeded.
pub fn uniform_samples(samples: usize, lo: f64, hi: f64, seed: u64) -> Result<Vec<f64>> {
    check(lo.is_finite() && hi.is_finite() && lo <= hi, || {
        format!("bad range [{lo}, {hi}]")
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..samples).map(|_| rng.gen_range(lo..=hi)).collect())
}

/// Sample the polyline through `points` at `t0 + j / rate_hz`. Both
/// endpoints appear exactly; if the last instant falls short of the final
/// breakpoint, the final value is appended. Interpolated values never leave
/// the range of their segment's endpoints.
pub fn resample_piecewise_linear(points: &[(f64, f64)], rate_hz: f64) -> Result<Vec<f64>> {
    check(points.len() >= 2, || {
        format!("need at least 2 breakpoints, got {}", points.len())
    })?;
    positive("rate_hz", rate_hz)?;
    for (i, &(t, x)) in points.iter().enumerate() {
        check(t.is_finite() && x.is_finite(), || {
            format!("breakpoint {i} is not finite")
        })?;
    }
    if let Some(i) = points.windows(2).position(|w| w[1].0 <= w[0].0) {
        return Err(Error::InvalidSignal(format!(
            "breakpoint times must be strictly increasing (t[{}] = {} after t[{}] = {})",
            i + 1,
            points[i + 1].0,
            i,
            points[i].0
        )));
    }

    let (t0, _) = points[0];
    let (t_end, x_end) = points[points.len() - 1];
    let steps = ((t_end - t0) * rate_hz + 1e-9).floor() as usize;
    let mut out = Vec::with_capacity(steps + 2);
    let mut seg = 0;
    for j in 0..=steps {
        let t = t0 + j as f64 / rate_hz;
        if t >= t_end || (t_end - t) * rate_hz <= 1e-9 {
            out.push(x_end);
            return Ok(out);
        }
        while seg + 2 < points.len() && t >= points[seg + 1].0 {
            seg += 1;
        }
        let (ta, xa) = points[seg];
        let (tb, xb) = points[seg + 1];
        let s = (t - ta) / (tb - ta);
        let x = xa + s * (xb - xa);
        out.push(x.clamp(xa.min(xb), xa.max(xb)));
    }
    out.push(x_end);
    Ok(out)
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn parse_err(path: &Path, line: usize, message: String) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    }
}

fn parse_finite(text: &str) -> std::result::Result<f64, String> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| format!("not a number: {:?}", text.trim()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("non-finite sample {v}"))
    }
}

/// One sample per line; blank lines are skipped.
pub fn read_samples(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_samples(&text).map_err(|(line, msg)| parse_err(path, line, msg))
}

fn parse_samples(text: &str) -> std::result::Result<Vec<f64>, (usize, String)> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_finite(line).map_err(|m| (i + 1, m))?);
    }
    if out.is_empty() {
        return Err((0, "no samples".into()));
    }
    Ok(out)
}

/// CSV `t,x` rows. A first row that does not parse as numbers is taken as
/// a header.
pub fn read_breakpoints(path: &Path) -> Result<Vec<(f64, f64)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => io_err(path, io),
            other => parse_err(path, 0, format!("{other:?}")),
        })?;
    let mut out = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let line = i + 1;
        let rec = rec.map_err(|e| parse_err(path, line, e.to_string()))?;
        if rec.len() != 2 {
            return Err(parse_err(
                path,
                line,
                format!("expected 2 columns, got {}", rec.len()),
            ));
        }
        match (parse_finite(&rec[0]), parse_finite(&rec[1])) {
            (Ok(t), Ok(x)) => out.push((t, x)),
            _ if i == 0 => continue,
            (Err(m), _) | (_, Err(m)) => return Err(parse_err(path, line, m)),
        }
    }
    Ok(out)
}
