use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sph_core::{ModelConfig, SignalSpec};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default = "one")]
    pub decimation: usize,
}

fn one() -> usize {
    1
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            path: None,
            format: OutputFormat::Csv,
            decimation: 1,
        }
    }
}

/// A complete experiment: bank, drive and where to put the trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub model: ModelConfig,
    pub signal: SignalSpec,
    #[serde(default)]
    pub output: OutputSpec,
}

const PRESETS: &[(&str, &str)] = &[
    ("fig5", include_str!("../presets/fig5.json")),
    ("fig6a", include_str!("../presets/fig6a.json")),
    ("fig6b", include_str!("../presets/fig6b.json")),
];

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(name, _)| *name)
}

pub fn preset(name: &str) -> Result<ExperimentConfig, CliError> {
    let (_, text) = PRESETS.iter().find(|(n, _)| *n == name).ok_or_else(|| {
        CliError::Config(format!(
            "unknown preset {name:?} (available: {})",
            preset_names().collect::<Vec<_>>().join(", ")
        ))
    })?;
    ExperimentConfig::parse(text, &format!("preset {name}"))
}

impl ExperimentConfig {
    /// Parse and validate. `origin` names the source in diagnostics.
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| {
            CliError::Config(format!(
                "{origin}: line {} column {}: {e}",
                e.line(),
                e.column()
            ))
        })?;
        cfg.validate().map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{origin}: {m}")),
            other => other,
        })?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("could not read {}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.model
            .validate()
            .map_err(|e| CliError::Config(format!("model: {e}")))?;
        self.signal
            .validate()
            .map_err(|e| CliError::Config(format!("signal: {e}")))?;
        if self.output.decimation == 0 {
            return Err(CliError::Config(
                "output.decimation: must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}
