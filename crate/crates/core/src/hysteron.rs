//! The algebraic non-ideal relay.
//!
//! A hysteron with thresholds `beta <= alpha` is updated per input sample by
//!
//! ```text
//! y = min( sgn_minus(x - beta), max( y_prev, sgn_plus(x - alpha) ) )
//! ```
//!
//! `sgn_plus` maps zero to `+1` and `sgn_minus` maps zero to `-1`, so that
//! `x >= alpha` switches up and `x <= beta` switches down, both inclusive.
//! With `alpha == beta` the input `x == alpha` resolves to `-1`.
//!
//! The composition needs two subtractions, two sign evaluations and one
//! min/max pair per sample, with the previous output as the only memory.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Switching thresholds of one relay.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HysteronParams {
    /// Up-switching threshold.
    pub alpha: f64,
    /// Down-switching threshold.
    pub beta: f64,
}

impl HysteronParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let p = Self { alpha, beta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha.is_finite() && self.beta.is_finite() && self.alpha >= self.beta {
            Ok(())
        } else {
            Err(Error::InvalidThresholds {
                alpha: self.alpha,
                beta: self.beta,
            })
        }
    }

    /// `alpha == beta`, the ideal-relay limit.
    pub fn is_degenerate(&self) -> bool {
        self.alpha == self.beta
    }
}

/// Binary relay output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RelayState {
    Down,
    Up,
}

impl RelayState {
    pub fn value(self) -> f64 {
        match self {
            RelayState::Down => -1.0,
            RelayState::Up => 1.0,
        }
    }

    pub fn from_value(v: f64) -> Result<Self> {
        if v == 1.0 {
            Ok(RelayState::Up)
        } else if v == -1.0 {
            Ok(RelayState::Down)
        } else {
            Err(Error::InvalidState(v))
        }
    }
}

impl From<RelayState> for f64 {
    fn from(s: RelayState) -> f64 {
        s.value()
    }
}

/// Sign with `sgn(0) = +1`.
#[inline(always)]
pub(crate) fn sgn_plus(z: f64) -> f64 {
    if z >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Sign with `sgn(0) = -1`.
#[inline(always)]
pub(crate) fn sgn_minus(z: f64) -> f64 {
    if z > 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Raw kernel on full-width states. `prev` must be `+1.0` or `-1.0`;
/// the result is again one of the two.
#[inline(always)]
pub fn step_value(alpha: f64, beta: f64, prev: f64, x: f64) -> f64 {
    sgn_minus(x - beta).min(prev.max(sgn_plus(x - alpha)))
}

/// Advance one relay by one input sample.
pub fn relay_step(params: HysteronParams, prev: RelayState, x: f64) -> Result<RelayState> {
    params.validate()?;
    if !x.is_finite() {
        return Err(Error::NonFiniteInput { value: x });
    }
    let y = step_value(params.alpha, params.beta, prev.value(), x);
    Ok(if y > 0.0 {
        RelayState::Up
    } else {
        RelayState::Down
    })
}

/// Initial state for a relay that first sees `x0`. Inside the open band
/// `(beta, alpha)` the state is not determined by the input and
/// `in_band_default` is returned.
pub fn relay_init(
    params: HysteronParams,
    x0: f64,
    in_band_default: RelayState,
) -> Result<RelayState> {
    params.validate()?;
    if !x0.is_finite() {
        return Err(Error::NonFiniteInput { value: x0 });
    }
    Ok(if x0 <= params.beta {
        RelayState::Down
    } else if x0 >= params.alpha {
        RelayState::Up
    } else {
        in_band_default
    })
}
