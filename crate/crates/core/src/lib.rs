//! Scalar Preisach hysteresis built from algebraic non-ideal relays.
//!
//! * [`hysteron`]: the per-sample relay kernel.
//! * [`model`]: mesh, weights and the structure-of-arrays [`HysteronBank`].
//! * [`oracle`]: literal state-machine reference used for validation.
//! * [`signals`]: deterministic input drives.
//! * [`bench`]: checked throughput measurement.

pub mod bench;
pub mod error;
pub mod hysteron;
pub mod model;
pub mod oracle;
pub mod signals;
pub mod trajectory;

pub use error::{Error, Result};
pub use hysteron::{relay_init, relay_step, HysteronParams, RelayState};
pub use model::{
    assign_weights, build_mesh, DensitySpec, HysteronBank, InitPreset, MeshSpec, ModelConfig,
    Reduction, Snapshot,
};
pub use oracle::{oracle_model_run, oracle_step, OracleRelay};
pub use signals::{resample_piecewise_linear, SignalSpec};
pub use trajectory::{Sample, Trajectory};
