use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::bits::{strings_of_length, Bit, BitString};
use crate::enumerator::{Estimator, Sequential};
use crate::error::Error;
use crate::rational::Rational;

use super::solomonoff::SolomonoffModel;
use super::spec::{PredictorSpec, SequenceGenerator, Variant};

#[derive(Clone, Debug)]
enum Kind {
    Uniform,
    PointMass(SequenceGenerator),
    Laplace(Rational),
    Mixture(Vec<(Rational, Predictor)>),
    Solomonoff {
        model: Arc<SolomonoffModel>,
        variant: Variant,
    },
}

/// A deterministic, total source of exact next-bit probabilities.
///
/// Cloning is cheap and clones share any estimate cache.
#[derive(Clone, Debug)]
pub struct Predictor {
    spec: PredictorSpec,
    kind: Kind,
}

/// Builds the predictor described by `spec`, estimating priors sequentially.
pub fn make_predictor(spec: &PredictorSpec) -> Result<Predictor, Error> {
    make_predictor_with(spec, &(Arc::new(Sequential) as Arc<dyn Estimator>))
}

/// As [`make_predictor`], with bounded algorithmic-prior members backed by `estimator`.
pub fn make_predictor_with(
    spec: &PredictorSpec,
    estimator: &Arc<dyn Estimator>,
) -> Result<Predictor, Error> {
    spec.validate()?;
    Ok(build(spec, estimator))
}

fn build(spec: &PredictorSpec, estimator: &Arc<dyn Estimator>) -> Predictor {
    let kind = match spec {
        PredictorSpec::Uniform => Kind::Uniform,
        PredictorSpec::PointMass { sequence } => Kind::PointMass(sequence.clone()),
        PredictorSpec::Laplace { alpha } => Kind::Laplace(alpha.clone()),
        PredictorSpec::Mixture { components } => Kind::Mixture(
            components
                .iter()
                .map(|c| (c.weight.clone(), build(&c.spec, estimator)))
                .collect(),
        ),
        PredictorSpec::BoundedSolomonoff {
            machine,
            budget,
            variant,
        } => Kind::Solomonoff {
            model: Arc::new(SolomonoffModel::with_estimator(
                *machine,
                *budget,
                estimator.clone(),
            )),
            variant: *variant,
        },
    };
    Predictor {
        spec: spec.clone(),
        kind,
    }
}

impl Predictor {
    pub fn spec(&self) -> &PredictorSpec {
        &self.spec
    }

    /// The estimate cache behind a bounded algorithmic-prior predictor.
    pub fn solomonoff_model(&self) -> Option<&SolomonoffModel> {
        match &self.kind {
            Kind::Solomonoff { model, .. } => Some(model),
            _ => None,
        }
    }

    /// p(1 | prefix).
    pub fn conditional_one(&self, prefix: &BitString) -> Result<Rational, Error> {
        match &self.kind {
            Kind::Uniform => Ok(Rational::half()),
            Kind::PointMass(seq) => {
                if seq.prefix(prefix.len()) != *prefix {
                    return Err(Error::OffSupport {
                        prefix: prefix.clone(),
                    });
                }
                Ok(match seq.bit(prefix.len()) {
                    Bit::One => Rational::one(),
                    Bit::Zero => Rational::zero(),
                })
            }
            Kind::Laplace(alpha) => {
                let ones = Rational::from_integer(prefix.count_ones() as i64);
                let n = Rational::from_integer(prefix.len() as i64);
                let two_alpha = alpha + alpha;
                Ok((ones + alpha) / (n + two_alpha))
            }
            Kind::Mixture(components) => {
                let mut evidence = Rational::zero();
                let mut weighted = Rational::zero();
                for (weight, component) in components {
                    let posterior = weight * &component.measure_of(prefix)?;
                    if posterior.is_zero() {
                        continue;
                    }
                    weighted += &(&posterior * &component.conditional_one(prefix)?);
                    evidence += &posterior;
                }
                weighted
                    .checked_div(&evidence)
                    .ok_or_else(|| Error::OffSupport {
                        prefix: prefix.clone(),
                    })
            }
            Kind::Solomonoff { model, variant } => match variant {
                Variant::Raw => model.raw_conditional(prefix),
                Variant::Normalized => Ok(model.normalized_conditional(prefix)),
            },
        }
    }

    /// p(bit | prefix).
    pub fn conditional(&self, prefix: &BitString, bit: Bit) -> Result<Rational, Error> {
        let one = self.conditional_one(prefix)?;
        Ok(match bit {
            Bit::One => one,
            Bit::Zero => one.complement(),
        })
    }

    /// p(continuation | prefix) by the chain rule. Stops at the first zero
    /// factor, so nothing is ever conditioned on a null prefix.
    pub fn conditional_mass(
        &self,
        prefix: &BitString,
        continuation: &BitString,
    ) -> Result<Rational, Error> {
        let mut mass = Rational::one();
        let mut y = prefix.clone();
        for bit in continuation.iter() {
            let factor = self.conditional(&y, bit)?;
            if factor.is_zero() {
                return Ok(Rational::zero());
            }
            mass *= &factor;
            y.push(bit);
        }
        Ok(mass)
    }

    /// p(Γ_x).
    pub fn measure_of(&self, x: &BitString) -> Result<Rational, Error> {
        self.conditional_mass(&BitString::empty(), x)
    }

    /// True iff p(Γ_x) > 0, without forming the product.
    pub fn supports(&self, x: &BitString) -> Result<bool, Error> {
        let mut y = BitString::empty();
        for bit in x.iter() {
            if self.conditional(&y, bit)?.is_zero() {
                return Ok(false);
            }
            y.push(bit);
        }
        Ok(true)
    }

    /// True iff every string of length `depth` (hence every shorter one) has
    /// positive measure.
    pub fn is_open_minded_to_depth(&self, depth: usize) -> Result<bool, Error> {
        for x in strings_of_length(depth) {
            if !self.supports(&x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::Budget;
    use crate::machine::MachineId;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn p(spec: PredictorSpec) -> Predictor {
        make_predictor(&spec).unwrap()
    }

    fn zeros() -> PredictorSpec {
        PredictorSpec::point_mass(SequenceGenerator::Zeros)
    }

    #[test]
    fn conditional_examples() {
        assert_eq!(
            p(PredictorSpec::Uniform).conditional_one(&bs("0110")),
            Ok(Rational::half())
        );
        let laplace = p(PredictorSpec::laplace(Rational::one()));
        assert_eq!(laplace.conditional_one(&bs("0")), Ok(Rational::new(1, 3)));
        assert_eq!(p(zeros()).conditional_one(&bs("000")), Ok(Rational::zero()));
        assert_eq!(
            p(zeros()).conditional_one(&bs("01")),
            Err(Error::OffSupport { prefix: bs("01") })
        );
    }

    #[test]
    fn measure_examples() {
        assert_eq!(
            p(PredictorSpec::Uniform).measure_of(&bs("101")),
            Ok(Rational::new(1, 8))
        );
        let laplace = p(PredictorSpec::laplace(Rational::one()));
        // 1/2 · 2/3, agreeing with the exchangeable closed form 1/((n+1)·C(n,k)).
        assert_eq!(laplace.measure_of(&bs("00")), Ok(Rational::new(1, 3)));
        assert_eq!(laplace.measure_of(&bs("000")), Ok(Rational::new(1, 4)));
        assert_eq!(p(zeros()).measure_of(&bs("01")), Ok(Rational::zero()));
        assert_eq!(p(zeros()).measure_of(&bs("")), Ok(Rational::one()));
    }

    #[test]
    fn mixture_examples() {
        let mix = p(PredictorSpec::mixture([
            (Rational::half(), PredictorSpec::Uniform),
            (Rational::half(), zeros()),
        ]));
        assert_eq!(mix.conditional_one(&bs("")), Ok(Rational::new(1, 4)));
        // Once a 1 is seen only the uniform component survives.
        assert_eq!(mix.conditional_one(&bs("01")), Ok(Rational::half()));
        let bad = PredictorSpec::mixture([
            (Rational::half(), PredictorSpec::Uniform),
            (Rational::new(1, 3), zeros()),
        ]);
        assert!(matches!(make_predictor(&bad), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn open_mindedness() {
        assert_eq!(
            p(PredictorSpec::Uniform).is_open_minded_to_depth(6),
            Ok(true)
        );
        assert_eq!(
            p(PredictorSpec::laplace(Rational::new(1, 2))).is_open_minded_to_depth(6),
            Ok(true)
        );
        assert_eq!(p(zeros()).is_open_minded_to_depth(1), Ok(false));
        let norm = p(PredictorSpec::bounded_solomonoff(
            MachineId::Natural,
            Budget::new(8, 100),
            Variant::Normalized,
        ));
        assert_eq!(norm.is_open_minded_to_depth(4), Ok(true));
    }

    #[test]
    fn bounded_solomonoff_variants() {
        let budget = Budget::new(8, 100);
        let raw = p(PredictorSpec::bounded_solomonoff(
            MachineId::Natural,
            budget,
            Variant::Raw,
        ));
        let norm = p(PredictorSpec::bounded_solomonoff(
            MachineId::Natural,
            budget,
            Variant::Normalized,
        ));
        assert_eq!(raw.conditional_one(&bs("")), Ok(Rational::new(1, 4)));
        assert_eq!(norm.conditional_one(&bs("")), Ok(Rational::half()));
        assert_eq!(norm.measure_of(&bs("11")), Ok(Rational::new(1, 3)));
    }
}
