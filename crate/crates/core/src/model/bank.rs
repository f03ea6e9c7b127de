use std::sync::Arc;

use rayon::prelude::*;
use rayon::ThreadPool;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hysteron::{relay_init, step_value, HysteronParams, RelayState};
use crate::trajectory::Trajectory;

/// Hysterons per reduction block. Block boundaries never depend on the
/// number of workers.
pub const REDUCTION_BLOCK: usize = 256;

/// Summation order for the weighted output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reduction {
    /// `((0 + w0 y0) + w1 y1) + ...` in ascending index order. The reference.
    #[default]
    Ascending,
    /// Each block of [`REDUCTION_BLOCK`] hysterons is summed in ascending
    /// order from zero, then the block sums are added in ascending block
    /// order from zero. Identical for every worker count; equals
    /// `Ascending` when `N <= REDUCTION_BLOCK`.
    Blocked,
}

/// How the bank is initialized before the first sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitPreset {
    NegativeSaturation,
    PositiveSaturation,
    /// `+1` iff `alpha + beta < 0`.
    Demagnetized,
    /// Relay initialization against `x0` with in-band default `-1`.
    FromInput,
}

impl InitPreset {
    fn state(self, p: HysteronParams, x0: f64) -> Result<RelayState> {
        Ok(match self {
            InitPreset::NegativeSaturation => RelayState::Down,
            InitPreset::PositiveSaturation => RelayState::Up,
            InitPreset::Demagnetized => {
                if p.alpha + p.beta < 0.0 {
                    RelayState::Up
                } else {
                    RelayState::Down
                }
            }
            InitPreset::FromInput => relay_init(p, x0, RelayState::Down)?,
        })
    }
}

/// Saved relay states of a bank.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub states: Vec<f64>,
    pub x_last: f64,
}

/// Structure-of-arrays store of `N` weighted hysterons sharing one input.
#[derive(Clone)]
pub struct HysteronBank {
    alphas: Vec<f64>,
    betas: Vec<f64>,
    weights: Vec<f64>,
    states: Vec<f64>,
    x_last: f64,
    reduction: Reduction,
    pool: Option<Arc<ThreadPool>>,
    partials: Vec<f64>,
}

impl std::fmt::Debug for HysteronBank {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HysteronBank")
            .field("len", &self.len())
            .field("x_last", &self.x_last)
            .field("reduction", &self.reduction)
            .field("workers", &self.workers())
            .finish()
    }
}

impl HysteronBank {
    pub fn new(
        nodes: &[HysteronParams],
        weights: &[f64],
        preset: InitPreset,
        x0: f64,
    ) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidMesh(
                "bank needs at least one hysteron".into(),
            ));
        }
        if weights.len() != nodes.len() {
            return Err(Error::LengthMismatch {
                what: "weights",
                expected: nodes.len(),
                got: weights.len(),
            });
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::InvalidDensity(format!(
                "weight {w} is not a finite nonnegative value"
            )));
        }
        if !x0.is_finite() {
            return Err(Error::NonFiniteInput { value: x0 });
        }
        let mut states = Vec::with_capacity(nodes.len());
        for p in nodes {
            p.validate()?;
            states.push(preset.state(*p, x0)?.value());
        }
        let n = nodes.len();
        Ok(Self {
            alphas: nodes.iter().map(|p| p.alpha).collect(),
            betas: nodes.iter().map(|p| p.beta).collect(),
            weights: weights.to_vec(),
            states,
            x_last: x0,
            reduction: Reduction::Ascending,
            pool: None,
            partials: vec![0.0; n.div_ceil(REDUCTION_BLOCK)],
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn states(&self) -> &[f64] {
        &self.states
    }

    pub fn params(&self, i: usize) -> HysteronParams {
        HysteronParams {
            alpha: self.alphas[i],
            beta: self.betas[i],
        }
    }

    pub fn x_last(&self) -> f64 {
        self.x_last
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn reduction(&self) -> Reduction {
        self.reduction
    }

    pub fn set_reduction(&mut self, reduction: Reduction) {
        self.reduction = reduction;
    }

    pub fn with_reduction(mut self, reduction: Reduction) -> Self {
        self.reduction = reduction;
        self
    }

    pub fn workers(&self) -> usize {
        self.pool.as_ref().map_or(1, |p| p.current_num_threads())
    }

    /// Update hysterons on `workers` threads. One worker runs on the
    /// calling thread.
    pub fn set_workers(&mut self, workers: usize) -> Result<()> {
        self.pool = match workers {
            0 => return Err(Error::Pool("worker count must be at least 1".into())),
            1 => None,
            n => Some(Arc::new(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Error::Pool(e.to_string()))?,
            )),
        };
        Ok(())
    }

    pub fn with_workers(mut self, workers: usize) -> Result<Self> {
        self.set_workers(workers)?;
        Ok(self)
    }

    /// Share an existing pool between banks.
    pub fn set_pool(&mut self, pool: Option<Arc<ThreadPool>>) {
        self.pool = pool;
    }

    /// Weighted output of the current states.
    pub fn output(&self) -> f64 {
        match self.reduction {
            Reduction::Ascending => weighted_sum(&self.weights, &self.states),
            Reduction::Blocked => self
                .weights
                .chunks(REDUCTION_BLOCK)
                .zip(self.states.chunks(REDUCTION_BLOCK))
                .fold(0.0, |acc, (w, s)| acc + weighted_sum(w, s)),
        }
    }

    /// Apply one input sample to every hysteron and return the output.
    /// A non-finite sample is rejected before any state changes.
    pub fn step(&mut self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::NonFiniteInput { value: x });
        }
        self.x_last = x;
        let f = match (&self.pool, self.reduction) {
            (None, Reduction::Ascending) => {
                update_states(&self.alphas, &self.betas, &mut self.states, x);
                weighted_sum(&self.weights, &self.states)
            }
            (None, Reduction::Blocked) => {
                let mut acc = 0.0;
                for (((a, b), s), w) in self
                    .alphas
                    .chunks(REDUCTION_BLOCK)
                    .zip(self.betas.chunks(REDUCTION_BLOCK))
                    .zip(self.states.chunks_mut(REDUCTION_BLOCK))
                    .zip(self.weights.chunks(REDUCTION_BLOCK))
                {
                    update_states(a, b, s, x);
                    acc += weighted_sum(w, s);
                }
                acc
            }
            (Some(pool), Reduction::Ascending) => {
                let (alphas, betas, states) = (&self.alphas, &self.betas, &mut self.states);
                pool.install(|| {
                    (
                        alphas.par_chunks(REDUCTION_BLOCK),
                        betas.par_chunks(REDUCTION_BLOCK),
                        states.par_chunks_mut(REDUCTION_BLOCK),
                    )
                        .into_par_iter()
                        .for_each(|(a, b, s)| update_states(a, b, s, x));
                });
                weighted_sum(&self.weights, &self.states)
            }
            (Some(pool), Reduction::Blocked) => {
                let (alphas, betas, states, weights, partials) = (
                    &self.alphas,
                    &self.betas,
                    &mut self.states,
                    &self.weights,
                    &mut self.partials,
                );
                pool.install(|| {
                    (
                        alphas.par_chunks(REDUCTION_BLOCK),
                        betas.par_chunks(REDUCTION_BLOCK),
                        states.par_chunks_mut(REDUCTION_BLOCK),
                        weights.par_chunks(REDUCTION_BLOCK),
                        partials.par_iter_mut(),
                    )
                        .into_par_iter()
                        .for_each(|(a, b, s, w, p)| {
                            update_states(a, b, s, x);
                            *p = weighted_sum(w, s);
                        });
                });
                self.partials.iter().fold(0.0, |acc, p| acc + p)
            }
        };
        Ok(f)
    }

    /// Feed `xs` in order. On a bad sample the error carries its index and
    /// the bank keeps the state reached before it.
    pub fn run(&mut self, xs: &[f64]) -> Result<Trajectory> {
        let mut out = Trajectory::with_capacity(xs.len());
        for (k, &x) in xs.iter().enumerate() {
            let f = self
                .step(x)
                .map_err(|_| Error::NonFiniteSample { index: k, value: x })?;
            out.push(k, x, f);
        }
        Ok(out)
    }

    /// Like [`run`](Self::run) but only returns the outputs.
    pub fn run_outputs(&mut self, xs: &[f64]) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(xs.len());
        for (k, &x) in xs.iter().enumerate() {
            out.push(
                self.step(x)
                    .map_err(|_| Error::NonFiniteSample { index: k, value: x })?,
            );
        }
        Ok(out)
    }

    pub fn snapshot(&self) -> Snapshot {
        Snapshot {
            states: self.states.clone(),
            x_last: self.x_last,
        }
    }

    pub fn restore(&mut self, snap: &Snapshot) -> Result<()> {
        if snap.states.len() != self.states.len() {
            return Err(Error::LengthMismatch {
                what: "snapshot states",
                expected: self.states.len(),
                got: snap.states.len(),
            });
        }
        if let Some(&s) = snap.states.iter().find(|&&s| s != 1.0 && s != -1.0) {
            return Err(Error::InvalidState(s));
        }
        self.states.copy_from_slice(&snap.states);
        self.x_last = snap.x_last;
        Ok(())
    }
}

#[inline]
fn update_states(alphas: &[f64], betas: &[f64], states: &mut [f64], x: f64) {
    for ((s, &a), &b) in states.iter_mut().zip(alphas).zip(betas) {
        *s = step_value(a, b, *s, x);
    }
}

#[inline]
fn weighted_sum(weights: &[f64], states: &[f64]) -> f64 {
    weights
        .iter()
        .zip(states)
        .fold(0.0, |acc, (w, s)| acc + w * s)
}
