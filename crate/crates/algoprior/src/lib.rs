//! Experiment runner for `algoprior-core`: compact predictor notation, a
//! multi-threaded prior estimator, and JSON/CSV reports.

pub mod experiment;
pub mod grammar;
pub mod parallel;
pub mod report;

use std::sync::Arc;
use std::time::Instant;

use algoprior_core::{Estimator, SEMANTICS_VERSION};

pub use experiment::{execute, ExperimentConfig, ExperimentReport, Failure, Format};
pub use parallel::Parallel;

/// Runs `config` and wraps the results in a timed report.
pub fn run_experiment(
    config: ExperimentConfig,
    estimator: &Arc<dyn Estimator>,
) -> Result<ExperimentReport, Failure> {
    let start = Instant::now();
    let results = execute(&config, estimator)?;
    Ok(ExperimentReport {
        command: config.command(),
        semantics: SEMANTICS_VERSION,
        config,
        results,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}
