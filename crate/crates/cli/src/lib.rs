//! Experiment configuration, presets and subcommand bodies for the `sph`
//! binary.

pub mod commands;
pub mod config;
pub mod error;

pub use config::{preset, preset_names, ExperimentConfig, OutputFormat, OutputSpec};
pub use error::CliError;
