use std::io::{self, Write};

use serde::{Deserialize, Serialize};

/// One recorded sample of a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub index: usize,
    pub x: f64,
    pub f: f64,
}

/// Time-indexed record of `(index, x, f)` produced by a run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn with_capacity(n: usize) -> Self {
        Self {
            samples: Vec::with_capacity(n),
        }
    }

    pub fn push(&mut self, index: usize, x: f64, f: f64) {
        self.samples.push(Sample { index, x, f });
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Sample> {
        self.samples.iter()
    }

    pub fn outputs(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.f).collect()
    }

    pub fn inputs(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.x).collect()
    }

    /// `(min f, max f)`, or `None` when empty.
    pub fn output_range(&self) -> Option<(f64, f64)> {
        self.samples.iter().fold(None, |acc, s| match acc {
            None => Some((s.f, s.f)),
            Some((lo, hi)) => Some((lo.min(s.f), hi.max(s.f))),
        })
    }

    /// Rows whose index is a multiple of `every`.
    pub fn decimate(&self, every: usize) -> Trajectory {
        let every = every.max(1);
        Trajectory {
            samples: self
                .samples
                .iter()
                .filter(|s| s.index % every == 0)
                .copied()
                .collect(),
        }
    }

    /// CSV with header `index,x,f`, `\n` line endings and shortest
    /// round-trip decimal formatting.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(b"index,x,f\n")?;
        for s in &self.samples {
            writeln!(w, "{},{},{}", s.index, s.x, s.f)?;
        }
        w.flush()
    }
}

impl<'a> IntoIterator for &'a Trajectory {
    type Item = &'a Sample;
    type IntoIter = std::slice::Iter<'a, Sample>;

    fn into_iter(self) -> Self::IntoIter {
        self.samples.iter()
    }
}
