use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::bits::{Bit, BitString};
use crate::enumerator::Budget;
use crate::error::Error;
use crate::machine::MachineId;
use crate::rational::Rational;

/// A computable infinite binary sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceGenerator {
    Zeros,
    Ones,
    /// The pattern repeated forever. Must be nonempty.
    Cycle(BitString),
}

impl SequenceGenerator {
    /// The `i`-th bit, counting from zero.
    pub fn bit(&self, i: usize) -> Bit {
        match self {
            SequenceGenerator::Zeros => Bit::Zero,
            SequenceGenerator::Ones => Bit::One,
            SequenceGenerator::Cycle(pattern) => pattern
                .get(i % pattern.len())
                .expect("cycle pattern is nonempty"),
        }
    }

    pub fn prefix(&self, n: usize) -> BitString {
        (0..n).map(|i| self.bit(i)).collect()
    }

    fn validate(&self) -> Result<(), Error> {
        match self {
            SequenceGenerator::Cycle(p) if p.is_empty() => {
                Err(Error::InvalidSpec("cycle pattern must be nonempty".into()))
            }
            _ => Ok(()),
        }
    }
}

/// How a bounded algorithmic-prior predictor turns estimates into conditionals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `λ(x1|x) = λ(x1)/λ(x)`, with the 0-branch taking the remainder.
    Raw,
    /// `λ(x1) / (λ(x0) + λ(x1))`, even split when both are zero.
    Normalized,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixtureComponent {
    pub weight: Rational,
    pub spec: PredictorSpec,
}

/// Serializable description of a predictor. Its JSON form is the identity
/// used in reports.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PredictorSpec {
    Uniform,
    PointMass {
        sequence: SequenceGenerator,
    },
    /// Add-α rule on bit counts.
    Laplace {
        alpha: Rational,
    },
    /// Weights positive and summing to one.
    Mixture {
        components: Vec<MixtureComponent>,
    },
    BoundedSolomonoff {
        machine: MachineId,
        budget: Budget,
        variant: Variant,
    },
}

impl PredictorSpec {
    pub fn laplace(alpha: Rational) -> Self {
        PredictorSpec::Laplace { alpha }
    }

    pub fn point_mass(sequence: SequenceGenerator) -> Self {
        PredictorSpec::PointMass { sequence }
    }

    pub fn mixture<I: IntoIterator<Item = (Rational, PredictorSpec)>>(parts: I) -> Self {
        PredictorSpec::Mixture {
            components: parts
                .into_iter()
                .map(|(weight, spec)| MixtureComponent { weight, spec })
                .collect(),
        }
    }

    pub fn bounded_solomonoff(machine: MachineId, budget: Budget, variant: Variant) -> Self {
        PredictorSpec::BoundedSolomonoff {
            machine,
            budget,
            variant,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        match self {
            PredictorSpec::Uniform | PredictorSpec::BoundedSolomonoff { .. } => Ok(()),
            PredictorSpec::PointMass { sequence } => sequence.validate(),
            PredictorSpec::Laplace { alpha } => {
                if alpha.is_positive() {
                    Ok(())
                } else {
                    Err(Error::InvalidSpec(alloc::format!(
                        "laplace pseudocount {alpha} must be positive"
                    )))
                }
            }
            PredictorSpec::Mixture { components } => {
                if components.is_empty() {
                    return Err(Error::InvalidSpec("mixture has no components".into()));
                }
                for c in components {
                    if !c.weight.is_positive() {
                        return Err(Error::InvalidSpec(alloc::format!(
                            "mixture weight {} must be positive",
                            c.weight
                        )));
                    }
                    c.spec.validate()?;
                }
                let total: Rational = components.iter().map(|c| &c.weight).sum();
                if total != Rational::one() {
                    return Err(Error::InvalidSpec(alloc::format!(
                        "mixture weights sum to {total}, not 1"
                    )));
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators() {
        assert_eq!(SequenceGenerator::Zeros.prefix(3), "000".parse().unwrap());
        assert_eq!(SequenceGenerator::Ones.prefix(2), "11".parse().unwrap());
        let cyc = SequenceGenerator::Cycle("011".parse().unwrap());
        assert_eq!(cyc.prefix(7), "0110110".parse().unwrap());
        assert!(SequenceGenerator::Cycle(BitString::empty())
            .validate()
            .is_err());
    }

    #[test]
    fn mixture_weights_must_sum_to_one() {
        let bad = PredictorSpec::mixture([
            (Rational::half(), PredictorSpec::Uniform),
            (
                Rational::new(1, 3),
                PredictorSpec::point_mass(SequenceGenerator::Zeros),
            ),
        ]);
        assert!(matches!(bad.validate(), Err(Error::InvalidSpec(_))));
        let negative = PredictorSpec::mixture([
            (Rational::new(3, 2), PredictorSpec::Uniform),
            (Rational::new(-1, 2), PredictorSpec::Uniform),
        ]);
        assert!(negative.validate().is_err());
        assert!(PredictorSpec::mixture([]).validate().is_err());
        assert!(PredictorSpec::laplace(Rational::zero()).validate().is_err());
    }
}
