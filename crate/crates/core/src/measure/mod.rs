//! Predictors: exact conditional probabilities of the next bit, and the
//! measures they induce on cylinders by the chain rule.

mod predictor;
mod solomonoff;
mod spec;

pub use predictor::{make_predictor, make_predictor_with, Predictor};
pub use solomonoff::{
    normalized_prior, semi_measure_check, solomonoff_conditional, SemiMeasureReport,
    SolomonoffModel,
};
pub use spec::{MixtureComponent, PredictorSpec, SequenceGenerator, Variant};
