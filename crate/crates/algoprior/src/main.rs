use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use algoprior::experiment::{GrueVariant, MergeMode};
use algoprior::grammar::{parse_predictor, parse_source};
use algoprior::{report, run_experiment, ExperimentConfig, Failure, Format, Parallel};
use algoprior_core::{BitString, Budget, Estimator, MachineId, PredictorSpec};
use anyhow::Context;
use clap::{Args, Parser, Subcommand};

/// Budgeted algorithmic-prior estimation, diagonalization and merging experiments.
#[derive(Parser)]
#[command(name = "algoprior", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct BudgetArgs {
    /// Longest input prefix to enumerate (L).
    #[arg(long)]
    max_bits: usize,
    /// Step cap per simulation (T).
    #[arg(long)]
    max_steps: u64,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget::new(self.max_bits, self.max_steps)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the prior of one or more target strings.
    Prior {
        #[arg(long, value_parser = machine)]
        machine: MachineId,
        /// Target bit string; repeat for several. May be empty.
        #[arg(long = "target", required = true, value_parser = bits)]
        targets: Vec<BitString>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Next-bit predictions after a run of zeros on both machines.
    Grue {
        #[arg(long, default_value_t = 24)]
        max_bits: usize,
        #[arg(long, default_value_t = 400)]
        max_steps: u64,
        #[arg(long, value_enum, default_value_t = GrueVariant::Both)]
        variant: GrueVariant,
        #[arg(long, default_value_t = 10)]
        prefix_len: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Build a predictor's diagonal sequence.
    Diagonal {
        #[arg(long, value_parser = parse_predictor)]
        predictor: PredictorSpec,
        /// Second predictor for the cross-diagonal masses.
        #[arg(long, value_parser = parse_predictor)]
        cross: Option<PredictorSpec>,
        #[arg(short = 'n')]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Track total variation between two predictors as evidence accumulates.
    Merge {
        #[arg(long, value_enum, default_value_t = MergeMode::Normal)]
        mode: MergeMode,
        #[arg(long, value_parser = parse_predictor)]
        p: Option<PredictorSpec>,
        #[arg(long, value_parser = parse_predictor)]
        q: Option<PredictorSpec>,
        #[arg(long, default_value = "fixed:zeros")]
        source: String,
        /// Seed for sampled sources.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        horizon: usize,
        /// Continuation depth k of the cylinder algebra.
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Check the semi-measure inequality over all short strings.
    Check {
        #[arg(long, value_parser = machine)]
        machine: MachineId,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Re-run the configuration stored in a config or report file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn machine(s: &str) -> Result<MachineId, String> {
    s.parse().map_err(|e: algoprior_core::Error| e.to_string())
}

fn bits(s: &str) -> Result<BitString, String> {
    s.parse().map_err(|e: algoprior_core::Error| e.to_string())
}

fn configure(command: Command) -> anyhow::Result<(ExperimentConfig, Option<PathBuf>)> {
    Ok(match command {
        Command::Prior {
            machine,
            targets,
            budget,
            output,
        } => (
            ExperimentConfig::Prior {
                machine,
                targets,
                budget: budget.budget(),
                format: output.format,
            },
            output.out,
        ),
        Command::Grue {
            max_bits,
            max_steps,
            variant,
            prefix_len,
            output,
        } => (
            ExperimentConfig::Grue {
                budget: Budget::new(max_bits, max_steps),
                prefix_len,
                variant,
                format: output.format,
            },
            output.out,
        ),
        Command::Diagonal {
            predictor,
            cross,
            n,
            output,
        } => (
            ExperimentConfig::Diagonal {
                predictor,
                cross,
                n,
                format: output.format,
            },
            output.out,
        ),
        Command::Merge {
            mode,
            p,
            q,
            source,
            seed,
            horizon,
            depth,
            output,
        } => {
            let config = match (mode, p, q) {
                (MergeMode::Polarize, None, None) => {
                    ExperimentConfig::polarize(horizon, depth, output.format)
                }
                (MergeMode::Polarize, ..) => {
                    return Err(Failure::Usage(
                        "--mode polarize fixes both predictors; drop --p and --q".into(),
                    )
                    .into())
                }
                (MergeMode::Normal, Some(p), Some(q)) => ExperimentConfig::Merge {
                    mode,
                    p,
                    q,
                    source: parse_source(&source, seed).map_err(Failure::Usage)?,
                    horizon,
                    depth,
                    format: output.format,
                },
                (MergeMode::Normal, ..) => {
                    return Err(Failure::Usage("merge needs both --p and --q".into()).into())
                }
            };
            (config, output.out)
        }
        Command::Check {
            machine,
            budget,
            depth,
            output,
        } => (
            ExperimentConfig::Check {
                machine,
                budget: budget.budget(),
                depth,
                format: output.format,
            },
            output.out,
        ),
        Command::Run { config, out } => {
            let text = fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            (parse_config(&text).map_err(Failure::Usage)?, out)
        }
    })
}

/// Accepts a bare configuration or a whole report.
fn parse_config(text: &str) -> Result<ExperimentConfig, String> {
    let mut value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| format!("config is not JSON: {e}"))?;
    if let Some(inner) = value.get_mut("config") {
        value = inner.take();
    }
    serde_json::from_value(value).map_err(|e| format!("invalid config: {e}"))
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let (config, out) = configure(cli.command)?;
    let estimator: Arc<dyn Estimator> = Arc::new(Parallel::from_env().map_err(Failure::Usage)?);
    let report = run_experiment(config, &estimator)?;
    let text = report::render(&report);
    match out {
        Some(path) => {
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            match err.downcast_ref::<Failure>() {
                Some(Failure::Usage(_)) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
