//! Computable approximations to algorithmic-probability prediction.
//!
//! The crate is `no_std` (with `alloc`) and purely computational:
//!
//! - [`bits`] and [`rational`]: finite binary strings, cylinders and exact rationals.
//! - [`machine`]: two toy monotone machines, `NATURAL` and `GRUESOME`.
//! - [`enumerator`]: budgeted enumeration of minimal programs, giving lower
//!   bounds on the algorithmic prior and bounded Kolmogorov complexity.
//! - [`measure`]: the predictor zoo, the chain rule, the ratio predictor and
//!   the normalized prior built from budgeted estimates.
//! - [`putnam`]: diagonal sequences against computable predictors.
//! - [`merge`]: finite-depth total variation and merging/polarization runs.
//!
//! Every probability is an exact [`Rational`]; nothing is ever rounded.

#![no_std]

extern crate alloc;

pub mod bits;
pub mod enumerator;
pub mod error;
pub mod machine;
pub mod measure;
pub mod merge;
pub mod putnam;
pub mod rational;

pub use bits::{concat, is_proper_prefix, strings_of_length, Bit, BitString, Cylinder};
pub use enumerator::{
    bounded_complexity, estimate_prior, refine, Budget, Estimator, PriorEstimate, Sequential,
    Witness, WitnessSet,
};
pub use error::Error;
pub use machine::{minimal_witness_length, run, MachineId, MachineState, RunTrace, Status};
pub use measure::{
    make_predictor, make_predictor_with, normalized_prior, semi_measure_check,
    solomonoff_conditional, Predictor, PredictorSpec, SemiMeasureReport, SequenceGenerator,
    SolomonoffModel, Variant,
};
pub use merge::{merging_trajectory, tv_depth, zero_set_divergence, DataSource, TrajectoryPoint};
pub use putnam::{
    cross_diagonal, cross_diagonal_report, diagonal_sequence, CrossDiagonal, DiagonalResult,
};
pub use rational::Rational;

/// Version tag of the machine semantics; embedded in every serialized report.
pub const SEMANTICS_VERSION: &str = "machines/v1";
