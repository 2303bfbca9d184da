//! Experiment configurations and the results each one produces.

use std::sync::Arc;

use algoprior_core::{
    cross_diagonal, make_predictor_with, merging_trajectory, Bit, BitString, Budget, DataSource,
    Error, Estimator, MachineId, PredictorSpec, PriorEstimate, Rational, SemiMeasureReport,
    SequenceGenerator, SolomonoffModel, TrajectoryPoint,
};
use serde::{Deserialize, Serialize};

/// Significant digits in decimal renderings.
pub const DECIMAL_DIGITS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum GrueVariant {
    Both,
    Raw,
    Normalized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum MergeMode {
    Normal,
    /// Point mass on all zeros against uniform, along all-zeros data.
    Polarize,
}

/// Everything needed to reproduce a run. Echoed verbatim in its report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum ExperimentConfig {
    Prior {
        machine: MachineId,
        targets: Vec<BitString>,
        budget: Budget,
        format: Format,
    },
    Grue {
        budget: Budget,
        prefix_len: usize,
        variant: GrueVariant,
        format: Format,
    },
    Diagonal {
        predictor: PredictorSpec,
        cross: Option<PredictorSpec>,
        n: usize,
        format: Format,
    },
    Merge {
        mode: MergeMode,
        p: PredictorSpec,
        q: PredictorSpec,
        source: DataSource,
        horizon: usize,
        depth: usize,
        format: Format,
    },
    Check {
        machine: MachineId,
        budget: Budget,
        depth: usize,
        format: Format,
    },
}

impl ExperimentConfig {
    pub fn command(&self) -> &'static str {
        match self {
            ExperimentConfig::Prior { .. } => "prior",
            ExperimentConfig::Grue { .. } => "grue",
            ExperimentConfig::Diagonal { .. } => "diagonal",
            ExperimentConfig::Merge { .. } => "merge",
            ExperimentConfig::Check { .. } => "check",
        }
    }

    pub fn format(&self) -> Format {
        match self {
            ExperimentConfig::Prior { format, .. }
            | ExperimentConfig::Grue { format, .. }
            | ExperimentConfig::Diagonal { format, .. }
            | ExperimentConfig::Merge { format, .. }
            | ExperimentConfig::Check { format, .. } => *format,
        }
    }

    /// The polarization demo's fixed pair and data.
    pub fn polarize(horizon: usize, depth: usize, format: Format) -> Self {
        ExperimentConfig::Merge {
            mode: MergeMode::Polarize,
            p: PredictorSpec::point_mass(SequenceGenerator::Zeros),
            q: PredictorSpec::Uniform,
            source: DataSource::Fixed {
                sequence: SequenceGenerator::Zeros,
            },
            horizon,
            depth,
            format,
        }
    }
}

/// The complete record of one run.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub command: &'static str,
    pub semantics: &'static str,
    pub config: ExperimentConfig,
    pub results: Results,
    /// Not reproducible; ignore when comparing reports.
    pub wall_time_ms: u64,
}

/// Exact value with a decimal rendering alongside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Value {
    pub exact: Rational,
    pub decimal: String,
}

impl From<Rational> for Value {
    fn from(exact: Rational) -> Self {
        let decimal = exact.to_decimal(DECIMAL_DIGITS);
        Value { exact, decimal }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
#[allow(clippy::large_enum_variant)]
pub enum Results {
    Prior(Vec<PriorResult>),
    Grue(GrueResult),
    Diagonal(DiagonalOutput),
    Merge(MergeResult),
    Check(SemiMeasureReport),
}

#[derive(Clone, Debug, Serialize)]
pub struct PriorResult {
    pub estimate: PriorEstimate,
    pub lower_bound: Value,
    pub bounded_complexity: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrueResult {
    pub prefix: BitString,
    pub machines: Vec<GrueMachine>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrueMachine {
    pub machine: MachineId,
    /// Lower bounds on the prior of the prefix and its two extensions.
    pub prior: GruePriors,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw: Option<NextBit>,
    /// `λ(x0)/λ(x)`, which differs from the raw `p(0)` when mass leaks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw_zero_ratio: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized: Option<NextBit>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GruePriors {
    pub prefix: Value,
    pub zero: Value,
    pub one: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct NextBit {
    pub p_zero: Value,
    pub p_one: Value,
    /// The strictly more probable bit, if any.
    pub predicted: Option<char>,
}

impl NextBit {
    fn new(p_one: Rational) -> Self {
        let half = Rational::half();
        let predicted = if p_one > half {
            Some('1')
        } else if p_one < half {
            Some('0')
        } else {
            None
        };
        NextBit {
            p_zero: p_one.complement().into(),
            p_one: p_one.into(),
            predicted,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagonalOutput {
    pub diagonal: BitString,
    pub mass_trace: Vec<Rational>,
    /// `2^(1-i)`, the bound on `mass_trace[i]`.
    pub envelope: Vec<Rational>,
    pub conditional_trace: Vec<Rational>,
    pub final_mass: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross: Option<CrossOutput>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossOutput {
    /// The cross predictor's mass on the main predictor's diagonal.
    pub cross_on_diagonal: Outcome,
    /// The main predictor's mass on the cross predictor's diagonal.
    pub predictor_on_cross_diagonal: Outcome,
}

/// A value, or the name of the error that prevented computing it.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Outcome {
    Value(Value),
    Error {
        error: &'static str,
        message: String,
    },
}

impl From<Result<Rational, Error>> for Outcome {
    fn from(r: Result<Rational, Error>) -> Self {
        match r {
            Ok(v) => Outcome::Value(v.into()),
            Err(e) => Outcome::Error {
                error: e.name(),
                message: e.to_string(),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MergeResult {
    pub trajectory: Vec<MergePoint>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MergePoint {
    pub n: usize,
    pub prefix: BitString,
    pub tv: Rational,
    pub tv_decimal: String,
}

impl From<TrajectoryPoint> for MergePoint {
    fn from(p: TrajectoryPoint) -> Self {
        MergePoint {
            n: p.n,
            prefix: p.prefix,
            tv_decimal: p.tv.to_decimal(DECIMAL_DIGITS),
            tv: p.tv,
        }
    }
}

/// Why a run failed.
#[derive(Debug)]
pub enum Failure {
    /// The request itself is malformed.
    Usage(String),
    /// The computation hit a domain error.
    Domain { error: Error, hint: Option<String> },
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        match error {
            Error::InvalidSpec(_) | Error::InvalidArgument(_) | Error::Parse(_) => {
                Failure::Usage(error.to_string())
            }
            error => Failure::Domain { error, hint: None },
        }
    }
}

/// Runs `config`, estimating priors with `estimator`.
pub fn execute(
    config: &ExperimentConfig,
    estimator: &Arc<dyn Estimator>,
) -> Result<Results, Failure> {
    if config.format() == Format::Csv
        && !matches!(
            config,
            ExperimentConfig::Diagonal { .. } | ExperimentConfig::Merge { .. }
        )
    {
        return Err(Failure::Usage(format!(
            "{} emits no series; CSV is available for diagonal and merge",
            config.command()
        )));
    }
    match config {
        ExperimentConfig::Prior {
            machine,
            targets,
            budget,
            ..
        } => Ok(Results::Prior(
            targets
                .iter()
                .map(|t| {
                    let estimate = estimator.estimate(*machine, t, *budget);
                    PriorResult {
                        lower_bound: estimate.lower_bound.clone().into(),
                        bounded_complexity: estimate.witness_set.shortest_len(),
                        estimate,
                    }
                })
                .collect(),
        )),
        ExperimentConfig::Grue {
            budget,
            prefix_len,
            variant,
            ..
        } => grue(*budget, *prefix_len, *variant, estimator).map(Results::Grue),
        ExperimentConfig::Diagonal {
            predictor,
            cross,
            n,
            ..
        } => {
            let p = make_predictor_with(predictor, estimator)?;
            let d = algoprior_core::putnam::diagonal_sequence(&p, *n)?;
            let cross = match cross {
                Some(spec) => {
                    let q = make_predictor_with(spec, estimator)?;
                    let c = cross_diagonal(&p, &q, *n);
                    Some(CrossOutput {
                        cross_on_diagonal: c.q_on_p_diagonal.into(),
                        predictor_on_cross_diagonal: c.p_on_q_diagonal.into(),
                    })
                }
                None => None,
            };
            Ok(Results::Diagonal(DiagonalOutput {
                envelope: d.envelope(),
                final_mass: d
                    .mass_trace
                    .last()
                    .cloned()
                    .unwrap_or_else(Rational::one)
                    .into(),
                diagonal: d.diagonal,
                mass_trace: d.mass_trace,
                conditional_trace: d.conditional_trace,
                cross,
            }))
        }
        ExperimentConfig::Merge {
            p,
            q,
            source,
            horizon,
            depth,
            ..
        } => {
            let p = make_predictor_with(p, estimator)?;
            let q = make_predictor_with(q, estimator)?;
            let points = merging_trajectory(&p, &q, source, *horizon, *depth)?;
            Ok(Results::Merge(MergeResult {
                trajectory: points.into_iter().map(MergePoint::from).collect(),
            }))
        }
        ExperimentConfig::Check {
            machine,
            budget,
            depth,
            ..
        } => {
            let model = SolomonoffModel::with_estimator(*machine, *budget, estimator.clone());
            Ok(Results::Check(model.semi_measure_check(*depth)))
        }
    }
}

fn grue(
    budget: Budget,
    prefix_len: usize,
    variant: GrueVariant,
    estimator: &Arc<dyn Estimator>,
) -> Result<GrueResult, Failure> {
    let prefix = BitString::repeat(Bit::Zero, prefix_len);
    let mut machines = Vec::new();
    for machine in MachineId::ALL {
        let model = SolomonoffModel::with_estimator(machine, budget, estimator.clone());
        let prior = GruePriors {
            prefix: model.lower_bound(&prefix).into(),
            zero: model.lower_bound(&prefix.with(Bit::Zero)).into(),
            one: model.lower_bound(&prefix.with(Bit::One)).into(),
        };
        let (mut raw, mut raw_zero_ratio, mut normalized) = (None, None, None);
        if variant != GrueVariant::Normalized {
            let p_one = model
                .raw_conditional(&prefix)
                .map_err(|error| Failure::Domain {
                    hint: Some(format!(
                    "no witness for the {prefix_len}-bit prefix under {machine} within {budget}; \
                     --max-bits 24 --max-steps 400 is enough for ten zeros"
                )),
                    error,
                })?;
            raw = Some(NextBit::new(p_one));
            raw_zero_ratio = Some((&prior.zero.exact / &prior.prefix.exact).into());
        }
        if variant != GrueVariant::Raw {
            normalized = Some(NextBit::new(model.normalized_conditional(&prefix)));
        }
        machines.push(GrueMachine {
            machine,
            prior,
            raw,
            raw_zero_ratio,
            normalized,
        });
    }
    Ok(GrueResult { prefix, machines })
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(message) => f.write_str(message),
            Failure::Domain { error, hint } => {
                write!(f, "{}: {error}", error.name())?;
                if let Some(hint) = hint {
                    write!(f, "\n{hint}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for Failure {}
