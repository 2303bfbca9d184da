//! Budgeted enumeration of minimal programs.
//!
//! For a target `b` and budget `(L, T)`, every input of at most `L` bits is
//! run for at most `T` steps; an input is a witness when the output first
//! extends `b` exactly as its last bit is consumed. Witness sets are
//! prefix-free by construction and their Kraft sum is a lower bound on the
//! machine's algorithmic prior of `b`.
//!
//! The input space is explored as a tree. Inputs sharing a prefix share the
//! simulation of that prefix, a subtree is abandoned as soon as the output
//! disagrees with the target (the output can never be retracted), and a
//! witness is never extended. The visited set of inputs and the resulting
//! witnesses are exactly those of running every candidate separately,
//! breadth-first and lexicographically.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{Bit, BitString};
use crate::error::Error;
use crate::machine::{MachineId, MachineState, Status};
use crate::rational::Rational;
use crate::SEMANTICS_VERSION;

/// Maximum input length `L` and per-candidate step allowance `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budget {
    #[serde(rename = "L")]
    pub max_input_bits: usize,
    #[serde(rename = "T")]
    pub max_steps: u64,
}

impl Budget {
    pub const fn new(max_input_bits: usize, max_steps: u64) -> Self {
        Budget {
            max_input_bits,
            max_steps,
        }
    }

    /// Componentwise `<=`.
    pub fn is_within(&self, other: &Budget) -> bool {
        self.max_input_bits <= other.max_input_bits && self.max_steps <= other.max_steps
    }
}

impl PartialOrd for Budget {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.is_within(other), other.is_within(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(L={}, T={})", self.max_input_bits, self.max_steps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub bits: BitString,
    pub len: usize,
}

/// A prefix-free set of consumed input prefixes, kept sorted by length then
/// lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessSet {
    witnesses: Vec<BitString>,
}

fn canonical(a: &BitString, b: &BitString) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl WitnessSet {
    /// Canonicalizes order and removes duplicates. Does not check prefix-freeness.
    pub fn from_unordered(mut witnesses: Vec<BitString>) -> Self {
        witnesses.sort_by(canonical);
        witnesses.dedup();
        WitnessSet { witnesses }
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BitString> {
        self.witnesses.iter()
    }

    pub fn contains(&self, bits: &BitString) -> bool {
        self.witnesses
            .binary_search_by(|w| canonical(w, bits))
            .is_ok()
    }

    /// Σ 2^-ℓ over the set.
    pub fn kraft_sum(&self) -> Rational {
        self.witnesses
            .iter()
            .map(|w| Rational::pow2_neg(w.len()))
            .sum()
    }

    pub fn shortest_len(&self) -> Option<usize> {
        self.witnesses.first().map(BitString::len)
    }

    pub fn is_prefix_free(&self) -> bool {
        self.witnesses.iter().enumerate().all(|(i, a)| {
            self.witnesses
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.is_prefix_of(b))
        })
    }
}

/// A budgeted lower bound on the algorithmic prior of `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PriorEstimateWire", try_from = "PriorEstimateWire")]
pub struct PriorEstimate {
    pub target: BitString,
    pub machine: MachineId,
    pub budget: Budget,
    pub witness_set: WitnessSet,
    /// Exactly the Kraft sum of `witness_set`.
    pub lower_bound: Rational,
}

#[derive(Serialize, Deserialize)]
struct PriorEstimateWire {
    machine: MachineId,
    target: BitString,
    budget: Budget,
    witnesses: Vec<Witness>,
    lower_bound: Rational,
    semantics: alloc::string::String,
}

impl From<PriorEstimate> for PriorEstimateWire {
    fn from(e: PriorEstimate) -> Self {
        PriorEstimateWire {
            machine: e.machine,
            target: e.target,
            budget: e.budget,
            witnesses: e
                .witness_set
                .witnesses
                .into_iter()
                .map(|bits| Witness {
                    len: bits.len(),
                    bits,
                })
                .collect(),
            lower_bound: e.lower_bound,
            semantics: SEMANTICS_VERSION.into(),
        }
    }
}

impl TryFrom<PriorEstimateWire> for PriorEstimate {
    type Error = Error;

    fn try_from(w: PriorEstimateWire) -> Result<Self, Error> {
        if w.semantics != SEMANTICS_VERSION {
            return Err(Error::Parse(alloc::format!(
                "semantics {:?} does not match {SEMANTICS_VERSION}",
                w.semantics
            )));
        }
        if w.witnesses.iter().any(|x| x.len != x.bits.len()) {
            return Err(Error::Parse(
                "witness length does not match its bits".into(),
            ));
        }
        let witness_set =
            WitnessSet::from_unordered(w.witnesses.into_iter().map(|x| x.bits).collect());
        if witness_set.kraft_sum() != w.lower_bound {
            return Err(Error::Parse(
                "lower_bound is not the Kraft sum of the witnesses".into(),
            ));
        }
        Ok(PriorEstimate {
            target: w.target,
            machine: w.machine,
            budget: w.budget,
            witness_set,
            lower_bound: w.lower_bound,
        })
    }
}

impl PriorEstimate {
    fn assemble(
        machine: MachineId,
        target: &BitString,
        budget: Budget,
        witnesses: Vec<BitString>,
    ) -> Self {
        let witness_set = WitnessSet::from_unordered(witnesses);
        let lower_bound = witness_set.kraft_sum();
        PriorEstimate {
            target: target.clone(),
            machine,
            budget,
            witness_set,
            lower_bound,
        }
    }
}

/// A source of prior estimates. Implementations must return exactly what
/// [`estimate_prior`] returns; they may differ only in how the work is scheduled.
pub trait Estimator: Send + Sync {
    fn estimate(&self, machine: MachineId, target: &BitString, budget: Budget) -> PriorEstimate;
}

/// Single-threaded tree search.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Estimator for Sequential {
    fn estimate(&self, machine: MachineId, target: &BitString, budget: Budget) -> PriorEstimate {
        estimate_prior(machine, target, budget)
    }
}

/// An unexplored input prefix together with the machine state after running on it.
#[derive(Clone, Debug)]
pub struct SearchNode {
    state: MachineState,
    input: BitString,
}

impl SearchNode {
    pub fn input(&self) -> &BitString {
        &self.input
    }
}

enum Outcome {
    Witness(BitString),
    Dead,
    Branch(SearchNode),
}

/// The search tree for one `(machine, target, budget)`.
///
/// [`Search::split`] and [`Search::explore`] let callers partition the tree
/// across workers; the union of the partial results, canonically ordered, is
/// independent of how the tree was partitioned.
#[derive(Clone, Debug)]
pub struct Search<'a> {
    machine: MachineId,
    target: &'a BitString,
    budget: Budget,
    known: Option<&'a WitnessSet>,
}

impl<'a> Search<'a> {
    pub fn new(machine: MachineId, target: &'a BitString, budget: Budget) -> Self {
        Search {
            machine,
            target,
            budget,
            known: None,
        }
    }

    /// Inputs in `known` are accepted as witnesses without simulation.
    pub fn with_known(mut self, known: &'a WitnessSet) -> Self {
        self.known = Some(known);
        self
    }

    pub fn root(&self) -> SearchNode {
        SearchNode {
            state: MachineState::new(),
            input: BitString::empty(),
        }
    }

    fn advance(&self, mut node: SearchNode) -> Outcome {
        if self.known.is_some_and(|k| k.contains(&node.input)) {
            return Outcome::Witness(node.input);
        }
        let target = self.target;
        loop {
            if node.state.output().len() >= target.len() {
                return Outcome::Witness(node.input);
            }
            if node.state.steps() >= self.budget.max_steps {
                return Outcome::Dead;
            }
            if let Some(bit) = node.state.step(self.machine, node.input.bits()) {
                let pos = node.state.output().len() - 1;
                if target.get(pos) != Some(bit) {
                    return Outcome::Dead;
                }
            }
            match node.state.status() {
                Status::Running => {}
                Status::Halted => return Outcome::Dead,
                Status::BlockedOnInput => {
                    return if node.input.len() + 2 <= self.budget.max_input_bits {
                        Outcome::Branch(node)
                    } else {
                        Outcome::Dead
                    };
                }
            }
        }
    }

    fn children(node: &SearchNode) -> impl Iterator<Item = SearchNode> + '_ {
        [
            (Bit::Zero, Bit::Zero),
            (Bit::Zero, Bit::One),
            (Bit::One, Bit::Zero),
            (Bit::One, Bit::One),
        ]
        .into_iter()
        .map(move |(hi, lo)| {
            let mut input = node.input.with(hi);
            input.push(lo);
            SearchNode {
                state: node.state.clone(),
                input,
            }
        })
    }

    /// Expands the tree breadth-first until at least `min_nodes` unexplored
    /// nodes exist (or the tree is exhausted). Returns witnesses found on the
    /// way and the frontier.
    pub fn split(&self, min_nodes: usize) -> (Vec<BitString>, Vec<SearchNode>) {
        let mut witnesses = Vec::new();
        let mut frontier = VecDeque::from([self.root()]);
        while frontier.len() < min_nodes.max(1) {
            let Some(node) = frontier.pop_front() else {
                break;
            };
            match self.advance(node) {
                Outcome::Witness(w) => witnesses.push(w),
                Outcome::Dead => {}
                Outcome::Branch(n) => frontier.extend(Self::children(&n)),
            }
        }
        (witnesses, frontier.into_iter().collect())
    }

    /// All witnesses in the subtree rooted at `node`.
    pub fn explore(&self, node: SearchNode) -> Vec<BitString> {
        let mut witnesses = Vec::new();
        let mut stack = alloc::vec![node];
        while let Some(node) = stack.pop() {
            match self.advance(node) {
                Outcome::Witness(w) => witnesses.push(w),
                Outcome::Dead => {}
                Outcome::Branch(n) => {
                    let mut kids: Vec<_> = Self::children(&n).collect();
                    kids.reverse();
                    stack.extend(kids);
                }
            }
        }
        witnesses
    }

    /// Canonical estimate from a collection of partial witness lists.
    pub fn finish<I: IntoIterator<Item = Vec<BitString>>>(&self, parts: I) -> PriorEstimate {
        let witnesses = parts.into_iter().flatten().collect();
        PriorEstimate::assemble(self.machine, self.target, self.budget, witnesses)
    }
}

/// Lower bound on the algorithmic prior of `target`: the Kraft sum of every
/// minimal witness of at most `L` bits found within `T` steps.
pub fn estimate_prior(machine: MachineId, target: &BitString, budget: Budget) -> PriorEstimate {
    let search = Search::new(machine, target, budget);
    let witnesses = search.explore(search.root());
    search.finish([witnesses])
}

/// Length of the shortest witness within budget.
pub fn bounded_complexity(machine: MachineId, target: &BitString, budget: Budget) -> Option<usize> {
    estimate_prior(machine, target, budget)
        .witness_set
        .shortest_len()
}

/// Re-estimates `previous` at a larger budget. Previous witnesses stay
/// witnesses, so the lower bound can only grow.
pub fn refine(
    machine: MachineId,
    previous: &PriorEstimate,
    budget: Budget,
) -> Result<PriorEstimate, Error> {
    if machine != previous.machine {
        return Err(Error::EstimateMismatch);
    }
    if !previous.budget.is_within(&budget) {
        return Err(Error::BudgetRegression {
            previous: previous.budget,
            requested: budget,
        });
    }
    if budget == previous.budget {
        return Ok(previous.clone());
    }
    let search = Search::new(machine, &previous.target, budget).with_known(&previous.witness_set);
    let witnesses = search.explore(search.root());
    Ok(search.finish([witnesses]))
}

/// Every witness of a subtree belongs to exactly one frontier node; used by
/// tests that check partitioned searches against the sequential one.
pub fn estimate_partitioned(
    machine: MachineId,
    target: &BitString,
    budget: Budget,
    parts: usize,
) -> PriorEstimate {
    let search = Search::new(machine, target, budget);
    let (early, frontier) = search.split(parts);
    let mut all: BTreeSet<BitString> = early.into_iter().collect();
    for node in frontier {
        all.extend(search.explore(node));
    }
    search.finish([all.into_iter().collect()])
}
