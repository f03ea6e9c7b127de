use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sph_cli::commands::{self, DEFAULT_ORACLE_CEILING};
use sph_cli::{preset, CliError, ExperimentConfig, OutputFormat};
use sph_core::bench::{BenchOptions, BenchSummary};

#[derive(Parser)]
#[command(name = "sph", version, about = "Scalar Preisach hysteresis engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment and write its trajectory.
    Run {
        #[command(flatten)]
        common: Common,
        /// Trajectory file format (overrides the config).
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Check the bank against the oracle model on random input.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Largest bank the oracle is run against.
        #[arg(long, default_value_t = DEFAULT_ORACLE_CEILING)]
        oracle_ceiling: usize,
    },
    /// Measure update throughput.
    Bench {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long, default_value_t = 3)]
        warmup: usize,
        /// Worker counts to measure, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        workers: Vec<usize>,
        /// Measure synthetic banks of 210, 3240 and 10000 hysterons instead
        /// of the configured model.
        #[arg(long)]
        scaling: bool,
        /// Sweep length for --scaling.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// Experiment config (JSON).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Built-in experiment: fig5, fig6a or fig6b.
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,
    /// Output path (trajectory for run, JSON report for verify and bench).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Noise seed, and the random-input seed for verify.
    #[arg(long)]
    seed: Option<u64>,
    /// Keep every k-th trajectory row.
    #[arg(long)]
    decimate: Option<usize>,
    /// Print the resolved config and exit.
    #[arg(long)]
    dump_config: bool,
}

impl Common {
    fn resolve(&self) -> Result<ExperimentConfig, CliError> {
        let mut cfg = match (&self.config, &self.preset) {
            (Some(path), _) => ExperimentConfig::load(path)?,
            (None, Some(name)) => preset(name)?,
            (None, None) => return Err(CliError::Config("pass --config or --preset".into())),
        };
        if let Some(seed) = self.seed {
            cfg.signal = cfg.signal.with_seed(seed);
        }
        if let Some(k) = self.decimate {
            cfg.output.decimation = k;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn write_report<T: serde::Serialize>(report: &T, out: Option<&PathBuf>) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(report).expect("report serializes");
    match out {
        Some(path) => std::fs::write(path, json + "\n")
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let common = match &cli.command {
        Command::Run { common, .. }
        | Command::Verify { common, .. }
        | Command::Bench { common, .. } => common,
    };
    let synthetic_only = matches!(cli.command, Command::Bench { scaling: true, .. })
        && common.config.is_none()
        && common.preset.is_none();
    if synthetic_only {
        if let Command::Bench {
            common,
            repeats,
            warmup,
            workers,
            samples,
            ..
        } = cli.command
        {
            let summaries =
                commands::cmd_scaling(samples, &workers, BenchOptions { warmup, repeats })?;
            for s in &summaries {
                eprintln!("{}", commands::describe_bench(s));
            }
            write_report(&summaries, common.out.as_ref())?;
        }
        return Ok(());
    }
    let mut cfg = common.resolve()?;
    if common.dump_config {
        println!("{}", cfg.to_json());
        return Ok(());
    }

    match cli.command {
        Command::Run { common, format } => {
            if let Some(out) = common.out {
                cfg.output.path = Some(out);
            }
            if let Some(f) = format {
                cfg.output.format = match f {
                    Format::Csv => OutputFormat::Csv,
                    Format::Json => OutputFormat::Json,
                };
            }
            let summary = commands::cmd_run(&cfg)?;
            println!("{summary}");
            if let Some(path) = &cfg.output.path {
                println!("wrote {}", path.display());
            }
        }
        Command::Verify {
            common,
            samples,
            oracle_ceiling,
        } => {
            let report =
                commands::cmd_verify(&cfg, samples, common.seed.unwrap_or(0), oracle_ceiling)?;
            eprintln!(
                "ok: N={} bank and oracle agree on {} samples (seed {})",
                report.n_hysterons, report.samples, report.seed
            );
            if let Some(out) = common.out.as_ref() {
                write_report(&report, Some(out))?;
            }
        }
        Command::Bench {
            common,
            repeats,
            warmup,
            workers,
            scaling,
            samples,
        } => {
            let opts = BenchOptions { warmup, repeats };
            let summaries: Vec<BenchSummary> = if scaling {
                commands::cmd_scaling(samples, &workers, opts)?
            } else {
                commands::cmd_bench(&cfg, &workers, opts)?
            };
            for s in &summaries {
                eprintln!("{}", commands::describe_bench(s));
            }
            write_report(&summaries, common.out.as_ref())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sph: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
