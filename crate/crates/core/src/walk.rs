//! The trinomial random walk on pyramid layers.
//!
//! Time `t` corresponds to pyramid layer `3t + 1`, i.e. `3t` elementary
//! steps. Each step picks one of three directions uniformly; after `3t`
//! steps the direction tallies `(u, v, w)` determine the layer coordinate
//! `x = w - u`, `y = v - t`, and the number of paths ending there is the
//! extended binomial coefficient `(3t)! / (u! v! w!)`. Dividing by the layer
//! sum `3^(3t)` gives the exact probability of every endpoint.
//!
//! The coordinate convention is pinned by two facts checked in the tests:
//! the center `(0, 0)` carries the coefficient with index
//! `(a, b, c) = (2t, t, t)`, and the whole map agrees with brute-force
//! enumeration of all `3^(3t)` step sequences.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::extbinom::{ext_binom_closed, CoeffIndex};
use crate::ratio::ratio_to_f64;

/// Walks drawn from one RNG stream.
///
/// The simulator seeds a [`ChaCha8Rng`] per batch with the run seed and sets
/// the batch index as the ChaCha stream id, so the sample depends only on
/// `(seed, num_walks)` and never on thread count or scheduling. Changing this
/// constant changes the deterministic output and invalidates pinned results.
const WALKS_PER_STREAM: u64 = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("num_walks must be >= 1")]
    ZeroWalks,
    #[error("num_walks {0} exceeds the 2^63 - 1 cap for 64-bit counts")]
    TooManyWalks(u64),
    #[error("time mismatch: empirical has t={empirical}, exact has t={exact}")]
    TimeMismatch { empirical: u64, exact: u64 },
    #[error("coordinate with t={coord_t} cannot enter a distribution at t={dist_t}")]
    CoordTimeMismatch { coord_t: u64, dist_t: u64 },
    #[error("probability {0} is outside [0, 1]")]
    OutOfUnitRange(String),
}

/// Position on the layer reached at time `t` (layer `3t + 1`).
///
/// `x` runs along the middle row, `y` across it; only points with `x - y`
/// even are lattice points of the layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LayerCoord {
    pub x: i64,
    pub y: i64,
    pub t: u64,
}

impl LayerCoord {
    pub fn new(x: i64, y: i64, t: u64) -> Self {
        Self { x, y, t }
    }

    /// Direction tallies reaching this coordinate, or `None` when the point
    /// is off-lattice (`x - y` odd) or outside the layer.
    pub fn step_counts(&self) -> Option<StepCounts> {
        if (self.x - self.y).rem_euclid(2) != 0 {
            return None;
        }
        let t = i64::try_from(self.t).ok()?;
        let u = t - (self.x + self.y) / 2;
        let v = self.y + t;
        let w = t + (self.x - self.y) / 2;
        if u < 0 || v < 0 || w < 0 {
            return None;
        }
        Some(StepCounts {
            u: u as u64,
            v: v as u64,
            w: w as u64,
        })
    }
}

/// Tallies of the three step directions after `3t` steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StepCounts {
    pub u: u64,
    pub v: u64,
    pub w: u64,
}

impl StepCounts {
    pub fn total(&self) -> u64 {
        self.u + self.v + self.w
    }

    /// Layer coordinate these tallies end at; `None` unless the total is a
    /// multiple of three (a whole number of time units).
    pub fn to_coord(&self) -> Option<LayerCoord> {
        let total = self.total();
        if !total.is_multiple_of(3) {
            return None;
        }
        let t = total / 3;
        Some(LayerCoord {
            x: self.w as i64 - self.u as i64,
            y: self.v as i64 - t as i64,
            t,
        })
    }
}

/// Exact rational probability in `[0, 1]`, kept in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactProb(BigRational);

impl ExactProb {
    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    /// Checked constructor; the ratio is reduced automatically.
    pub fn from_ratio(ratio: BigRational) -> Result<Self, WalkError> {
        if ratio.is_negative() || ratio > BigRational::one() {
            return Err(WalkError::OutOfUnitRange(ratio.to_string()));
        }
        Ok(Self(ratio))
    }

    /// `count / 3^exponent`, the shape every layer mass takes.
    fn count_over_power_of_three(count: BigUint, exponent: u64) -> Self {
        let exp = u32::try_from(exponent).expect("power-of-three exponent too large");
        let den = BigInt::from(3u32).pow(exp);
        let ratio = BigRational::new(BigInt::from(count), den);
        debug_assert!(!ratio.is_negative() && ratio <= BigRational::one());
        Self(ratio)
    }

    pub fn ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    /// Numerator in lowest terms.
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Denominator in lowest terms.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.0)
    }
}

impl std::fmt::Display for ExactProb {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Exact endpoint distribution on the layer at time `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactDistribution {
    t: u64,
    masses: BTreeMap<LayerCoord, ExactProb>,
}

impl ExactDistribution {
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn masses(&self) -> &BTreeMap<LayerCoord, ExactProb> {
        &self.masses
    }

    /// Mass at `coord`; zero off the support.
    pub fn mass_at(&self, coord: &LayerCoord) -> ExactProb {
        self.masses
            .get(coord)
            .cloned()
            .unwrap_or_else(ExactProb::zero)
    }

    pub fn support_len(&self) -> usize {
        self.masses.len()
    }

    /// Exact sum of all masses.
    pub fn total(&self) -> BigRational {
        self.masses
            .values()
            .fold(BigRational::zero(), |acc, p| acc + p.ratio())
    }
}

/// Empirical endpoint histogram from a Monte Carlo run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalDistribution {
    t: u64,
    num_walks: u64,
    counts: BTreeMap<LayerCoord, u64>,
}

impl EmpiricalDistribution {
    /// Build a histogram directly; counts must be non-empty, total at most
    /// `2^63 - 1`, and every key must live on the layer at `t`.
    pub fn from_counts(t: u64, counts: BTreeMap<LayerCoord, u64>) -> Result<Self, WalkError> {
        let mut total: u64 = 0;
        for (coord, count) in &counts {
            if coord.t != t {
                return Err(WalkError::CoordTimeMismatch {
                    coord_t: coord.t,
                    dist_t: t,
                });
            }
            total = total
                .checked_add(*count)
                .ok_or(WalkError::TooManyWalks(u64::MAX))?;
        }
        if total == 0 {
            return Err(WalkError::ZeroWalks);
        }
        if total > i64::MAX as u64 {
            return Err(WalkError::TooManyWalks(total));
        }
        Ok(Self {
            t,
            num_walks: total,
            counts,
        })
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn num_walks(&self) -> u64 {
        self.num_walks
    }

    pub fn counts(&self) -> &BTreeMap<LayerCoord, u64> {
        &self.counts
    }

    pub fn count_at(&self, coord: &LayerCoord) -> u64 {
        self.counts.get(coord).copied().unwrap_or(0)
    }

    /// Empirical frequency `count / num_walks` as an exact rational.
    pub fn frequency(&self, coord: &LayerCoord) -> BigRational {
        BigRational::new(
            BigInt::from(self.count_at(coord)),
            BigInt::from(self.num_walks),
        )
    }
}

/// Monte Carlo run parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkConfig {
    pub t: u64,
    pub num_walks: u64,
    pub seed: u64,
}

/// Exact probability of ending at `coord` (Eq.-style index
/// `(a, b, c) = (2t - (x-y)/2, y + t, t + (x-y)/2)` over `3^(3t)`).
///
/// Off-lattice and out-of-layer coordinates have probability zero.
pub fn prob_xy(coord: LayerCoord) -> ExactProb {
    match coord.step_counts() {
        None => ExactProb::zero(),
        Some(counts) => mass_of(&counts),
    }
}

/// Exact probability of the middle-row slice: position `x'` at time `t`,
/// i.e. `(3t)! / ((t+x')! t! (t-x')! 3^(3t))`, and zero outside
/// `-t <= x' <= t`.
///
/// This is `prob_xy` restricted to `y = 0`, `x = 2x'`. The slice is not a
/// normalized distribution for `t >= 1`; it is reported exactly as defined,
/// without renormalization.
pub fn prob_slice(x_prime: i64, t: u64) -> ExactProb {
    let Ok(t_signed) = i64::try_from(t) else {
        return ExactProb::zero();
    };
    if x_prime.abs() > t_signed {
        return ExactProb::zero();
    }
    prob_xy(LayerCoord::new(2 * x_prime, 0, t))
}

fn mass_of(counts: &StepCounts) -> ExactProb {
    let a = i64::try_from(counts.u + counts.v).expect("layer index too large");
    let b = i64::try_from(counts.v).expect("layer index too large");
    let c = i64::try_from(counts.w).expect("layer index too large");
    let coeff = ext_binom_closed(CoeffIndex::new(a, b, c));
    ExactProb::count_over_power_of_three(coeff, counts.total())
}

/// Exhaustive exact distribution at time `t`: every tally `(u, v, w)` with
/// `u + v + w = 3t` mapped to its endpoint.
pub fn exact_distribution(t: u64) -> ExactDistribution {
    let steps = 3 * t;
    let mut masses = BTreeMap::new();
    for u in 0..=steps {
        for v in 0..=(steps - u) {
            let counts = StepCounts {
                u,
                v,
                w: steps - u - v,
            };
            let coord = counts.to_coord().expect("tally total is 3t");
            masses.insert(coord, mass_of(&counts));
        }
    }
    ExactDistribution { t, masses }
}

/// Run `num_walks` independent walks of `3t` uniform steps and histogram the
/// endpoints.
///
/// Batches of [`WALKS_PER_STREAM`] walks each draw from their own ChaCha8
/// stream, so the result is a pure function of `(t, num_walks, seed)` no
/// matter how many threads execute the batches.
pub fn simulate(config: &WalkConfig) -> Result<EmpiricalDistribution, WalkError> {
    if config.num_walks == 0 {
        return Err(WalkError::ZeroWalks);
    }
    if config.num_walks > i64::MAX as u64 {
        return Err(WalkError::TooManyWalks(config.num_walks));
    }
    let steps = 3 * config.t;
    let num_batches = config.num_walks.div_ceil(WALKS_PER_STREAM);
    let counts = (0..num_batches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(batch);
            let walks = (config.num_walks - batch * WALKS_PER_STREAM).min(WALKS_PER_STREAM);
            let mut local: BTreeMap<LayerCoord, u64> = BTreeMap::new();
            for _ in 0..walks {
                let mut tallies = [0u64; 3];
                for _ in 0..steps {
                    tallies[rng.random_range(0..3usize)] += 1;
                }
                let coord = StepCounts {
                    u: tallies[0],
                    v: tallies[1],
                    w: tallies[2],
                }
                .to_coord()
                .expect("walk length is 3t");
                *local.entry(coord).or_insert(0) += 1;
            }
            local
        })
        .reduce(BTreeMap::new, merge_counts);
    Ok(EmpiricalDistribution {
        t: config.t,
        num_walks: config.num_walks,
        counts,
    })
}

fn merge_counts(
    mut into: BTreeMap<LayerCoord, u64>,
    from: BTreeMap<LayerCoord, u64>,
) -> BTreeMap<LayerCoord, u64> {
    for (coord, count) in from {
        *into.entry(coord).or_insert(0) += count;
    }
    into
}

/// Total-variation distance `1/2 * sum |empirical - exact|` over the union
/// of supports, as an exact rational in `[0, 1]`.
pub fn tv_distance(
    empirical: &EmpiricalDistribution,
    exact: &ExactDistribution,
) -> Result<BigRational, WalkError> {
    if empirical.t != exact.t {
        return Err(WalkError::TimeMismatch {
            empirical: empirical.t,
            exact: exact.t,
        });
    }
    let keys: BTreeSet<&LayerCoord> = exact.masses.keys().chain(empirical.counts.keys()).collect();
    let mut acc = BigRational::zero();
    for coord in keys {
        let emp = empirical.frequency(coord);
        let exa = exact.mass_at(coord).into_ratio();
        acc += (emp - exa).abs();
    }
    Ok(acc / BigInt::from(2))
}
