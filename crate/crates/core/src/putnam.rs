//! Diagonal sequences against computable predictors.
//!
//! Given a predictor `p`, the diagonal starts with `0` and then always takes
//! the bit `p` considers less likely: `1` when `p(1 | E_i) < 1/2`, otherwise
//! `0`. The comparison is exact, and a tie yields `0`. Every realized
//! conditional is therefore at most one half and `p(E_n) <= 2^(1-n)`.

use alloc::vec::Vec;

use serde::Serialize;

use crate::bits::{Bit, BitString};
use crate::error::Error;
use crate::measure::{Predictor, PredictorSpec};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalResult {
    pub predictor: PredictorSpec,
    pub n: usize,
    /// The first `n` bits of the diagonal.
    pub diagonal: BitString,
    /// `p(E_i)` for `i = 1..=n`.
    pub mass_trace: Vec<Rational>,
    /// `p(D_{i+1} | E_i)` for `i = 1..n`.
    pub conditional_trace: Vec<Rational>,
}

impl DiagonalResult {
    /// `2^(1-i)` for `i = 1..=n`, the bound on `mass_trace`.
    pub fn envelope(&self) -> Vec<Rational> {
        (1..=self.n).map(|i| Rational::pow2_neg(i - 1)).collect()
    }
}

/// The first `n >= 1` bits of `p`'s diagonal with their mass and conditional traces.
///
/// Fails with `OffSupport` as soon as a constructed prefix gets measure zero,
/// which happens exactly when `p` is not open-minded along the diagonal.
pub fn diagonal_sequence(p: &Predictor, n: usize) -> Result<DiagonalResult, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "diagonal length must be at least 1".into(),
        ));
    }
    let mut diagonal = BitString::empty();
    let mut mass = Rational::one();
    let mut mass_trace = Vec::with_capacity(n);
    let mut conditional_trace = Vec::with_capacity(n - 1);

    for i in 0..n {
        let one = p.conditional_one(&diagonal)?;
        let (bit, realized) = if i == 0 {
            (Bit::Zero, one.complement())
        } else if one < Rational::half() {
            (Bit::One, one)
        } else {
            (Bit::Zero, one.complement())
        };
        diagonal.push(bit);
        if realized.is_zero() {
            return Err(Error::OffSupport { prefix: diagonal });
        }
        mass *= &realized;
        mass_trace.push(mass.clone());
        if i > 0 {
            conditional_trace.push(realized);
        }
    }

    Ok(DiagonalResult {
        predictor: p.spec().clone(),
        n,
        diagonal,
        mass_trace,
        conditional_trace,
    })
}

/// Each predictor's mass on the other's diagonal. Either side may fail
/// independently: a predictor with no diagonal can still weigh another's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossDiagonal {
    /// `p(diag(q, n))`.
    pub p_on_q_diagonal: Result<Rational, Error>,
    /// `q(diag(p, n))`.
    pub q_on_p_diagonal: Result<Rational, Error>,
}

pub fn cross_diagonal(p: &Predictor, q: &Predictor, n: usize) -> CrossDiagonal {
    let weigh = |weigher: &Predictor, target: &Predictor| {
        let d = diagonal_sequence(target, n)?;
        weigher.measure_of(&d.diagonal)
    };
    CrossDiagonal {
        p_on_q_diagonal: weigh(p, q),
        q_on_p_diagonal: weigh(q, p),
    }
}

/// `(p(diag(q, n)), q(diag(p, n)))`; fails if either diagonal is undefined.
pub fn cross_diagonal_report(
    p: &Predictor,
    q: &Predictor,
    n: usize,
) -> Result<(Rational, Rational), Error> {
    let cross = cross_diagonal(p, q, n);
    Ok((cross.p_on_q_diagonal?, cross.q_on_p_diagonal?))
}
