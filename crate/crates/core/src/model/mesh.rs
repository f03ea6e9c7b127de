use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hysteron::HysteronParams;

/// Uniform discretization of the Preisach triangle `x_min <= beta <= alpha <= x_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeshSpec {
    pub x_min: f64,
    pub x_max: f64,
    /// Number of threshold values per axis.
    pub levels: usize,
}

impl MeshSpec {
    pub fn new(x_min: f64, x_max: f64, levels: usize) -> Result<Self> {
        let m = Self {
            x_min,
            x_max,
            levels,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.levels == 0 {
            return Err(Error::InvalidMesh("levels must be at least 1".into()));
        }
        if !(self.x_min.is_finite() && self.x_max.is_finite()) {
            return Err(Error::InvalidMesh("x_min and x_max must be finite".into()));
        }
        if self.x_min >= self.x_max {
            return Err(Error::InvalidMesh(format!(
                "x_min ({}) must be below x_max ({})",
                self.x_min, self.x_max
            )));
        }
        Ok(())
    }

    /// `n (n + 1) / 2`.
    pub fn node_count(&self) -> usize {
        self.levels * (self.levels + 1) / 2
    }

    /// Threshold value `k` of `levels`, ascending: the centre of the `k`-th
    /// of `levels` equal cells of `[x_min, x_max]`. A range symmetric about
    /// zero yields levels that are exact negatives of each other. The
    /// outermost levels sit half a cell inside the range, so an input at
    /// `x_max` (`x_min`) saturates every node including the diagonal.
    pub fn level(&self, k: usize) -> f64 {
        debug_assert!(k < self.levels);
        let cells = 2.0 * self.levels as f64;
        let upper = (2 * k + 1) as f64;
        (self.x_min * (cells - upper) + self.x_max * upper) / cells
    }

    pub fn levels(&self) -> Vec<f64> {
        (0..self.levels).map(|k| self.level(k)).collect()
    }
}

/// Mesh nodes ordered row-major over `alpha` descending, `beta` ascending
/// within a row. The diagonal `alpha == beta` is included.
pub fn build_mesh(spec: &MeshSpec) -> Result<Vec<HysteronParams>> {
    spec.validate()?;
    let levels = spec.levels();
    let mut nodes = Vec::with_capacity(spec.node_count());
    for a in (0..spec.levels).rev() {
        for &beta in &levels[..=a] {
            nodes.push(HysteronParams {
                alpha: levels[a],
                beta,
            });
        }
    }
    Ok(nodes)
}

/// Rule assigning weights to mesh nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DensitySpec {
    /// Equal weights `1/N`; the output spans `[-1, 1]`.
    Uniform,
    /// Positional weights, one per node.
    Table { table: Vec<f64> },
}

pub fn assign_weights(nodes: &[HysteronParams], density: &DensitySpec) -> Result<Vec<f64>> {
    let n = nodes.len();
    if n == 0 {
        return Err(Error::InvalidDensity("no nodes to weight".into()));
    }
    match density {
        DensitySpec::Uniform => Ok(vec![1.0 / n as f64; n]),
        DensitySpec::Table { table } => {
            if table.len() != n {
                return Err(Error::LengthMismatch {
                    what: "density table",
                    expected: n,
                    got: table.len(),
                });
            }
            if let Some((i, w)) = table
                .iter()
                .enumerate()
                .find(|(_, w)| !(w.is_finite() && **w >= 0.0))
            {
                return Err(Error::InvalidDensity(format!(
                    "weight {i} is {w}; weights must be finite and nonnegative"
                )));
            }
            Ok(table.clone())
        }
    }
}
