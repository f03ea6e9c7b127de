//! Reference relay and aggregate model written directly from the
//! piecewise relay definition. Slow on purpose; shares no code with the
//! kernel in [`crate::hysteron`] or the bank in [`crate::model`].

use crate::error::{Error, Result};
use crate::hysteron::HysteronParams;
use crate::trajectory::Trajectory;

/// State-machine relay: `x <= beta` gives -1, `x >= alpha` gives +1,
/// anything strictly between holds the previous state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleRelay {
    pub alpha: f64,
    pub beta: f64,
    /// Either `-1` or `+1`.
    pub state: i8,
}

impl OracleRelay {
    pub fn new(alpha: f64, beta: f64, state: i8) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite() && alpha >= beta) {
            return Err(Error::InvalidThresholds { alpha, beta });
        }
        if state != 1 && state != -1 {
            return Err(Error::InvalidState(state as f64));
        }
        Ok(Self { alpha, beta, state })
    }

    pub fn from_params(params: HysteronParams, state: i8) -> Result<Self> {
        Self::new(params.alpha, params.beta, state)
    }

    /// Advance by one sample and return the new state.
    pub fn step(&mut self, x: f64) -> i8 {
        if x <= self.beta {
            self.state = -1;
        } else if x >= self.alpha {
            self.state = 1;
        } else {
            // beta < x < alpha: keep the state
        }
        self.state
    }
}

pub fn oracle_step(relay: &mut OracleRelay, x: f64) -> i8 {
    relay.step(x)
}

/// Naive weighted aggregate: for each sample, step every relay in index
/// order and accumulate `sum += w[i] * y[i]` starting from zero.
pub fn oracle_model_run(
    relays: &mut [OracleRelay],
    weights: &[f64],
    xs: &[f64],
) -> Result<Trajectory> {
    if relays.len() != weights.len() {
        return Err(Error::LengthMismatch {
            what: "oracle weights",
            expected: relays.len(),
            got: weights.len(),
        });
    }
    let mut out = Trajectory::with_capacity(xs.len());
    for (k, &x) in xs.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::NonFiniteSample { index: k, value: x });
        }
        let mut sum = 0.0;
        for i in 0..relays.len() {
            let y = relays[i].step(x);
            sum += weights[i] * (y as f64);
        }
        out.push(k, x, sum);
    }
    Ok(out)
}
