//! Discretized Preisach model: a mesh of hysterons over the triangle
//! `x_min <= beta <= alpha <= x_max`, weighted by a density rule and
//! evaluated as `f = sum_i w_i y_i` after every input sample.

mod bank;
mod config;
mod mesh;

pub use bank::{HysteronBank, InitPreset, Reduction, Snapshot, REDUCTION_BLOCK};
pub use config::ModelConfig;
pub use mesh::{assign_weights, build_mesh, DensitySpec, MeshSpec};
