// SPDX-License-Identifier: MIT OR Apache-2.0

//! Synthetic series from a left-to-right Gaussian HMM, and the accuracy
//! score used to grade segmentations of them.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::{Error, Result, StateSequence, TimeSeries};

/// Alternating means of the five-state benchmark model.
pub const BENCHMARK_MEANS: [f64; 5] = [1.0, -1.0, 1.0, -1.0, 1.0];

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub p: f64,
    pub means: Vec<f64>,
    pub sigma: f64,
    pub seed: u64,
}

impl GenSpec {
    /// Five states with means `[1, −1, 1, −1, 1]`.
    pub fn benchmark(p: f64, sigma: f64, seed: u64) -> Self {
        Self {
            p,
            means: BENCHMARK_MEANS.to_vec(),
            sigma,
            seed,
        }
    }

    pub fn order(&self) -> usize {
        self.means.len()
    }

    /// `K / (1 − p)`.
    pub fn expected_len(&self) -> f64 {
        self.order() as f64 / (1.0 - self.p)
    }

    fn validate(&self) -> Result<()> {
        if self.means.is_empty() {
            return Err(Error::param("M", "need at least one state"));
        }
        if self.means.iter().any(|m| !m.is_finite()) {
            return Err(Error::param("M", "means must be finite"));
        }
        if !(self.p >= 0.0 && self.p < 1.0) {
            return Err(Error::param("p", "must lie in [0, 1)"));
        }
        if !(self.sigma >= 0.0 && self.sigma.is_finite()) {
            return Err(Error::param("sigma", "must be nonnegative and finite"));
        }
        Ok(())
    }
}

/// Uniform draw in `(0, 1]`.
fn open_unit(rng: &mut impl RngCore) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 / (1u64 << 53) as f64
}

/// Two independent standard normal draws (Box–Muller).
pub fn normal_pair(rng: &mut impl RngCore) -> (f64, f64) {
    let u1 = open_unit(rng);
    let u2 = open_unit(rng) - 0.5;
    let r = libm::sqrt(-2.0 * libm::log(u1));
    let theta = 2.0 * core::f64::consts::PI * u2;
    (r * libm::cos(theta), r * libm::sin(theta))
}

/// Time spent in a state that is left with probability `1 − p` per step.
fn geometric_duration(rng: &mut impl RngCore, p: f64) -> usize {
    if p == 0.0 {
        return 1;
    }
    let u = open_unit(rng);
    1 + libm::floor(libm::log(u) / libm::log(p)) as usize
}

/// Runs the chain from state 1 through state `K`, each state for an
/// independent geometric duration, and adds `σ`-scaled Gaussian noise to the
/// state means.
pub fn generate(spec: &GenSpec) -> Result<(TimeSeries, StateSequence)> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut states = Vec::new();
    for k in 1..=spec.order() {
        let d = geometric_duration(&mut rng, spec.p);
        states.extend(core::iter::repeat(k).take(d));
    }
    let mut values = Vec::with_capacity(states.len() + 1);
    while values.len() < states.len() {
        let (a, b) = normal_pair(&mut rng);
        values.push(a);
        values.push(b);
    }
    values.truncate(states.len());
    for (v, &k) in values.iter_mut().zip(&states) {
        *v = spec.means[k - 1] + spec.sigma * *v;
    }
    Ok((TimeSeries::new(values)?, StateSequence::new(states, spec.order())?))
}

/// Self-transition probability giving mean series length `len` with `order`
/// states: `1 − K/T`.
pub fn p_for_expected_length(len: f64, order: usize) -> Result<f64> {
    if order == 0 {
        return Err(Error::param("K", "must be at least 1"));
    }
    if !(len > order as f64) {
        return Err(Error::param("T", "must exceed K"));
    }
    Ok(1.0 - order as f64 / len)
}

/// Fraction of indices where the two state paths agree.
pub fn accuracy(z: &StateSequence, z_hat: &StateSequence) -> Result<f64> {
    if z.len() != z_hat.len() {
        return Err(Error::LengthMismatch {
            left: z.len(),
            right: z_hat.len(),
        });
    }
    let hits = z.states().iter().zip(z_hat.states()).filter(|(a, b)| a == b).count();
    Ok(hits as f64 / z.len() as f64)
}

/// Seed of replicate `i` in a benchmark seeded with `seed`.
pub fn replicate_seed(seed: u64, i: u64) -> u64 {
    seed ^ i
}

/// One cell of a benchmark grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchCell {
    /// Target expected series length.
    pub length: f64,
    pub sigma: f64,
    pub mean_accuracy: f64,
    /// Mean wall-clock segmentation time, or 0 when timing is disabled.
    pub mean_time_ms: f64,
    pub replicates: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchTable {
    /// Row-major over lengths, then sigmas.
    pub cells: Vec<BenchCell>,
}

impl BenchTable {
    pub fn cell(&self, length: f64, sigma: f64) -> Option<&BenchCell> {
        self.cells.iter().find(|c| c.length == length && c.sigma == sigma)
    }
}
