use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};
use spin::Mutex;

use crate::bits::{strings_of_length, Bit, BitString};
use crate::enumerator::{Budget, Estimator, PriorEstimate, Sequential};
use crate::error::Error;
use crate::machine::MachineId;
use crate::rational::Rational;

/// Budgeted prior estimates for one machine, cached per target.
///
/// The cache only memoizes a pure function, so concurrent callers always see
/// the same values regardless of interleaving.
pub struct SolomonoffModel {
    machine: MachineId,
    budget: Budget,
    estimator: Arc<dyn Estimator>,
    cache: Mutex<BTreeMap<BitString, PriorEstimate>>,
}

impl fmt::Debug for SolomonoffModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SolomonoffModel")
            .field("machine", &self.machine)
            .field("budget", &self.budget)
            .field("cached", &self.cache.lock().len())
            .finish()
    }
}

impl SolomonoffModel {
    pub fn new(machine: MachineId, budget: Budget) -> Self {
        Self::with_estimator(machine, budget, Arc::new(Sequential))
    }

    pub fn with_estimator(
        machine: MachineId,
        budget: Budget,
        estimator: Arc<dyn Estimator>,
    ) -> Self {
        SolomonoffModel {
            machine,
            budget,
            estimator,
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn machine(&self) -> MachineId {
        self.machine
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn estimate(&self, x: &BitString) -> PriorEstimate {
        if let Some(hit) = self.cache.lock().get(x) {
            return hit.clone();
        }
        // Computed outside the lock; a racing duplicate computes the same value.
        let fresh = self.estimator.estimate(self.machine, x, self.budget);
        self.cache.lock().entry(x.clone()).or_insert(fresh).clone()
    }

    pub fn lower_bound(&self, x: &BitString) -> Rational {
        self.estimate(x).lower_bound
    }

    /// `λ(x1) / λ(x)`.
    pub fn raw_conditional(&self, x: &BitString) -> Result<Rational, Error> {
        let denominator = self.lower_bound(x);
        self.lower_bound(&x.with(Bit::One))
            .checked_div(&denominator)
            .ok_or_else(|| Error::ZeroDenominator { prefix: x.clone() })
    }

    /// `λ(x1) / (λ(x0) + λ(x1))`, or `1/2` when both are zero.
    pub fn normalized_conditional(&self, x: &BitString) -> Rational {
        let zero = self.lower_bound(&x.with(Bit::Zero));
        let one = self.lower_bound(&x.with(Bit::One));
        one.checked_div(&(&zero + &one))
            .unwrap_or_else(Rational::half)
    }

    /// The normalized prior Λ(x), built top-down: Λ(ε) = 1,
    /// Λ(y1) = Λ(y)·λ(y1)/(λ(y0)+λ(y1)) and Λ(y0) = Λ(y) − Λ(y1).
    pub fn normalized_prior(&self, x: &BitString) -> Rational {
        let mut mass = Rational::one();
        let mut y = BitString::empty();
        for bit in x.iter() {
            let one_branch = &mass * &self.normalized_conditional(&y);
            mass = match bit {
                Bit::One => one_branch,
                Bit::Zero => mass - one_branch,
            };
            y.push(bit);
        }
        mass
    }

    /// Compares λ(x) with λ(x0) + λ(x1) for every `|x| < depth`.
    pub fn semi_measure_check(&self, depth: usize) -> SemiMeasureReport {
        let mut violations = Vec::new();
        let mut strict_sites = Vec::new();
        for len in 0..depth {
            for x in strings_of_length(len) {
                let parent = self.lower_bound(&x);
                let children =
                    self.lower_bound(&x.with(Bit::Zero)) + self.lower_bound(&x.with(Bit::One));
                if parent < children {
                    violations.push(x);
                } else if parent > children {
                    strict_sites.push(x);
                }
            }
        }
        SemiMeasureReport {
            depth,
            violations,
            strict_sites,
        }
    }
}

/// Outcome of checking the semi-measure inequalities down to a depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiMeasureReport {
    pub depth: usize,
    /// Prefixes with λ(x) < λ(x0) + λ(x1). Always empty for correct estimates.
    pub violations: Vec<BitString>,
    /// Prefixes with λ(x) > λ(x0) + λ(x1).
    pub strict_sites: Vec<BitString>,
}

pub fn solomonoff_conditional(
    machine: MachineId,
    budget: Budget,
    x: &BitString,
) -> Result<Rational, Error> {
    SolomonoffModel::new(machine, budget).raw_conditional(x)
}

pub fn normalized_prior(machine: MachineId, budget: Budget, x: &BitString) -> Rational {
    SolomonoffModel::new(machine, budget).normalized_prior(x)
}

pub fn semi_measure_check(machine: MachineId, budget: Budget, depth: usize) -> SemiMeasureReport {
    SolomonoffModel::new(machine, budget).semi_measure_check(depth)
}
