use serde::{Deserialize, Serialize};

use super::{assign_weights, build_mesh, DensitySpec, HysteronBank, InitPreset, MeshSpec};
use crate::error::{Error, Result};
use crate::hysteron::HysteronParams;

/// JSON fragment describing a bank:
/// `{ "x_min", "x_max", "levels", "density": {"kind", "table"?}, "init", "x0" }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub levels: usize,
    pub density: DensitySpec,
    pub init: InitPreset,
    #[serde(default)]
    pub x0: f64,
}

impl ModelConfig {
    pub fn mesh(&self) -> MeshSpec {
        MeshSpec {
            x_min: self.x_min,
            x_max: self.x_max,
            levels: self.levels,
        }
    }

    pub fn nodes(&self) -> Result<Vec<HysteronParams>> {
        build_mesh(&self.mesh())
    }

    pub fn validate(&self) -> Result<()> {
        let nodes = self.nodes()?;
        assign_weights(&nodes, &self.density)?;
        if !self.x0.is_finite() {
            return Err(Error::NonFiniteInput { value: self.x0 });
        }
        Ok(())
    }

    pub fn build(&self) -> Result<HysteronBank> {
        let nodes = self.nodes()?;
        let weights = assign_weights(&nodes, &self.density)?;
        HysteronBank::new(&nodes, &weights, self.init, self.x0)
    }
}
