//! Finite-depth total variation and merging experiments.
//!
//! The total variation between two conditioned predictors is taken over the
//! algebra generated by the depth-`k` cylinders below the shared prefix. That
//! algebra is finite, so the supremum over its events equals half the L1
//! distance between the two depth-`k` conditional distributions.

use alloc::boxed::Box;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::bits::{strings_of_length, Bit, BitString};
use crate::error::Error;
use crate::measure::{make_predictor, Predictor, PredictorSpec, SequenceGenerator};
use crate::rational::Rational;

/// Largest depth accepted by [`tv_depth`] (2^16 leaf terms).
pub const MAX_TV_DEPTH: usize = 16;

/// Where the shared evidence comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DataSource {
    Fixed {
        sequence: SequenceGenerator,
    },
    /// Bits drawn one at a time from the generator's conditionals. The `n`-th
    /// draw `u` is the `n`-th 64-bit output of ChaCha20 keyed by `seed`, read
    /// as `u / 2^64`; the bit is `1` iff that is below `p(1 | E_{n-1})`.
    Sampled {
        generator: PredictorSpec,
        seed: u64,
    },
}

/// Lazily produced evidence bits.
pub struct DataStream {
    inner: StreamKind,
    prefix: BitString,
}

enum StreamKind {
    Fixed(SequenceGenerator),
    Sampled {
        generator: Predictor,
        rng: Box<ChaCha20Rng>,
    },
}

impl DataSource {
    pub fn stream(&self) -> Result<DataStream, Error> {
        let inner = match self {
            DataSource::Fixed { sequence } => StreamKind::Fixed(sequence.clone()),
            DataSource::Sampled { generator, seed } => StreamKind::Sampled {
                generator: make_predictor(generator)?,
                rng: Box::new(ChaCha20Rng::seed_from_u64(*seed)),
            },
        };
        Ok(DataStream {
            inner,
            prefix: BitString::empty(),
        })
    }
}

impl DataStream {
    /// Everything produced so far.
    pub fn prefix(&self) -> &BitString {
        &self.prefix
    }

    pub fn next_bit(&mut self) -> Result<Bit, Error> {
        let bit = match &mut self.inner {
            StreamKind::Fixed(seq) => seq.bit(self.prefix.len()),
            StreamKind::Sampled { generator, rng } => {
                let threshold = generator.conditional_one(&self.prefix)?;
                let draw = Rational::from_u64_fraction(rng.next_u64());
                Bit::from(draw < threshold)
            }
        };
        self.prefix.push(bit);
        Ok(bit)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    /// Number of evidence bits seen.
    pub n: usize,
    pub prefix: BitString,
    pub tv: Rational,
}

/// Half the L1 distance between `p(· | prefix)` and `q(· | prefix)` on the
/// `2^k` continuations of length `k`.
pub fn tv_depth(
    p: &Predictor,
    q: &Predictor,
    prefix: &BitString,
    k: usize,
) -> Result<Rational, Error> {
    if k > MAX_TV_DEPTH {
        return Err(Error::InvalidArgument(alloc::format!(
            "total-variation depth {k} exceeds {MAX_TV_DEPTH}"
        )));
    }
    for predictor in [p, q] {
        if !predictor.supports(prefix)? {
            return Err(Error::OffSupport {
                prefix: prefix.clone(),
            });
        }
    }
    let mut y = prefix.clone();
    let l1 = l1_below(p, q, &mut y, Rational::one(), Rational::one(), k)?;
    Ok(l1 * Rational::half())
}

/// Σ |p(z) - q(z)| over depth-`remaining` extensions z of `y`, given the
/// conditional masses already accumulated. A subtree one side gives zero mass
/// contributes the other side's mass, so that side is never conditioned there.
fn l1_below(
    p: &Predictor,
    q: &Predictor,
    y: &mut BitString,
    mass_p: Rational,
    mass_q: Rational,
    remaining: usize,
) -> Result<Rational, Error> {
    if mass_p.is_zero() {
        return Ok(mass_q);
    }
    if mass_q.is_zero() || remaining == 0 {
        return Ok((mass_p - mass_q).abs());
    }
    let p_one = p.conditional_one(y)?;
    let q_one = q.conditional_one(y)?;
    let mut total = Rational::zero();
    for bit in [Bit::Zero, Bit::One] {
        let (fp, fq) = match bit {
            Bit::One => (p_one.clone(), q_one.clone()),
            Bit::Zero => (p_one.complement(), q_one.complement()),
        };
        y.push(bit);
        let part = l1_below(p, q, y, &mass_p * &fp, &mass_q * &fq, remaining - 1);
        y.pop_bit();
        total += &part?;
    }
    Ok(total)
}

/// Reads `horizon >= 1` evidence bits from `source`, recording the depth-`k`
/// total variation between the conditioned predictors after each one.
pub fn merging_trajectory(
    p: &Predictor,
    q: &Predictor,
    source: &DataSource,
    horizon: usize,
    k: usize,
) -> Result<Vec<TrajectoryPoint>, Error> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    let mut stream = source.stream()?;
    let mut points = Vec::with_capacity(horizon);
    for n in 1..=horizon {
        stream.next_bit()?;
        let prefix = stream.prefix().clone();
        let tv = tv_depth(p, q, &prefix, k)?;
        points.push(TrajectoryPoint { n, prefix, tv });
    }
    Ok(points)
}

/// Length-`k` strings exactly one of `p`, `q` assigns measure zero: finite
/// witnesses that the two are not mutually absolutely continuous.
pub fn zero_set_divergence(
    p: &Predictor,
    q: &Predictor,
    k: usize,
) -> Result<Vec<BitString>, Error> {
    let mut out = Vec::new();
    for x in strings_of_length(k) {
        if p.supports(&x)? != q.supports(&x)? {
            out.push(x);
        }
    }
    Ok(out)
}
