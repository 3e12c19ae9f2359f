// SPDX-License-Identifier: MIT OR Apache-2.0

//! The estimate/decode segmentation loop.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::transition::transition_matrix;
use super::viterbi::{decode, neg_log_likelihood, Residuals};
use crate::costs::{fit_window, predict, CostModel};
use crate::series::{segmentation_from_states, states_from_segmentation};
use crate::{global_sigma, hubert_cost, Error, Result, Segmentation, StateSequence, TimeSeries};

/// Default self-transition probability.
pub const DEFAULT_P: f64 = 0.9;
pub const DEFAULT_EPSILON: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 100;
pub const DEFAULT_RESTARTS: usize = 10;
/// Replaces a zero noise estimate before it is used as a divisor.
pub const DEFAULT_SIGMA_FLOOR: f64 = 1e-12;
/// Ridge used when a state's segment is too short for an exact regression fit.
pub const DEFAULT_RIDGE: f64 = 1e-8;
/// Exponent applied to relative cut gains when seeding restarts.
pub const SEED_SHARPNESS: f64 = 32.0;

/// How the first state sequence is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitPolicy {
    /// One run from the equal-length `K`-way split.
    EqualSplit,
    /// `restarts` runs: the equal split first, then random splits drawn from
    /// `seed` that favour cuts which improve the fit. The best final
    /// likelihood wins.
    Random { restarts: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct HmmConfig {
    /// Number of states `K`.
    pub order: usize,
    pub p: f64,
    pub epsilon: f64,
    pub max_iter: usize,
    pub init: InitPolicy,
    pub model: CostModel,
    pub sigma_floor: f64,
    pub ridge: f64,
}

impl HmmConfig {
    pub fn new(order: usize) -> Self {
        Self {
            order,
            p: DEFAULT_P,
            epsilon: DEFAULT_EPSILON,
            max_iter: DEFAULT_MAX_ITER,
            init: InitPolicy::EqualSplit,
            model: CostModel::Means,
            sigma_floor: DEFAULT_SIGMA_FLOOR,
            ridge: DEFAULT_RIDGE,
        }
    }

    fn validate(&self, len: usize) -> Result<()> {
        transition_matrix(self.order, self.p)?;
        self.model.validate()?;
        if self.order > len {
            return Err(Error::param("K", "cannot exceed the series length"));
        }
        if len < 2 {
            return Err(Error::TooShort { needed: 2, len });
        }
        if !(self.epsilon >= 0.0) {
            return Err(Error::param("epsilon", "must be nonnegative"));
        }
        if self.max_iter == 0 {
            return Err(Error::param("max_iter", "must be at least 1"));
        }
        if !(self.sigma_floor > 0.0) {
            return Err(Error::param("sigma_floor", "must be positive"));
        }
        if !(self.ridge > 0.0) {
            return Err(Error::param("ridge", "must be positive"));
        }
        if let InitPolicy::Random { restarts: 0, .. } = self.init {
            return Err(Error::param("restarts", "must be at least 1"));
        }
        Ok(())
    }
}

/// Regression coefficients of one state. For the polynomial model the
/// abscissa counts from `origin`, the first index of the segment the fit was
/// made on.
#[derive(Debug, Clone, PartialEq)]
pub struct StateFit {
    pub coefficients: Vec<f64>,
    pub origin: usize,
}

/// One pass of the loop: parameters re-estimated from the segmentation of
/// the previous state sequence, then a fresh Viterbi decode.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    /// Segmentation the parameters were estimated from.
    pub segmentation: Segmentation,
    /// Coefficients per state (the mean, for the means model).
    pub coefficients: Vec<Vec<f64>>,
    /// Joint log-likelihood of the new decode under the new parameters.
    pub log_likelihood: f64,
    /// Hubert cost of `segmentation`.
    pub cost: f64,
    /// Residual sum of squares of `segmentation` under the new parameters.
    /// Equals `cost` for the means model.
    pub fit_cost: f64,
    /// Distinct states in the new decode.
    pub states_used: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EmTrace {
    pub records: Vec<IterationRecord>,
}

impl EmTrace {
    /// Whether every decode and every estimation segmentation used all
    /// `order` states.
    pub fn all_in_phi_k(&self, order: usize) -> bool {
        self.records
            .iter()
            .all(|r| r.states_used == order && r.segmentation.order() == order)
    }

    /// Steps where the log-likelihood dropped by more than `slack`.
    pub fn likelihood_decreases(&self, slack: f64) -> usize {
        self.records
            .windows(2)
            .filter(|w| w[1].log_likelihood < w[0].log_likelihood - slack)
            .count()
    }

    /// Steps where the fit cost rose by more than `slack`.
    pub fn cost_increases(&self, slack: f64) -> usize {
        self.records
            .windows(2)
            .filter(|w| w[1].fit_cost > w[0].fit_cost + slack)
            .count()
    }
}

/// Result of [`hmm_segment`].
#[derive(Debug, Clone, PartialEq)]
pub struct HmmRun {
    /// Final segmentation; its order is the number of states used.
    pub segmentation: Segmentation,
    pub states: StateSequence,
    /// Per-state fits re-estimated on the final segmentation.
    pub fits: Vec<StateFit>,
    /// Joint log-likelihood of `states` under `fits`.
    pub log_likelihood: f64,
    /// Noise level, held fixed across iterations.
    pub sigma: f64,
    pub trace: EmTrace,
    pub converged: bool,
    pub iterations: usize,
    /// Fewer than `K` states survived.
    pub collapsed: bool,
    /// Which start produced this run (0 is the equal split).
    pub restart: usize,
}

/// Segments `x` into `config.order` blocks, trying every start the init
/// policy asks for.
pub fn hmm_segment(x: &TimeSeries, config: &HmmConfig) -> Result<HmmRun> {
    config.validate(x.len())?;
    let equal = Segmentation::equal_split(x.len(), config.order)?;
    let (restarts, seed) = match config.init {
        InitPolicy::EqualSplit => (1, 0),
        InitPolicy::Random { restarts, seed } => (restarts, seed),
    };
    let mut best = run(x, config, &equal, 0)?;
    for r in 1..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        let init = weighted_split(&mut rng, x, config.order)?;
        let cand = run(x, config, &init, r)?;
        let better = match (best.collapsed, cand.collapsed) {
            (true, false) => true,
            (false, true) => false,
            _ => cand.log_likelihood > best.log_likelihood,
        };
        if better {
            best = cand;
        }
    }
    Ok(best)
}

/// A single run from a given initial segmentation of order `config.order`.
pub fn hmm_segment_from(x: &TimeSeries, config: &HmmConfig, init: &Segmentation) -> Result<HmmRun> {
    config.validate(x.len())?;
    init.check_len(x.len())?;
    if init.order() != config.order {
        return Err(Error::param("init", "order differs from K"));
    }
    run(x, config, init, 0)
}

fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// `K − 1` cuts drawn one after another. Each candidate cut is weighted by
/// the drop in within-segment squared deviation it brings, relative to the
/// best candidate, raised to [`SEED_SHARPNESS`]. Falls back to uniform draws
/// once no cut improves the fit.
fn weighted_split(rng: &mut ChaCha8Rng, x: &TimeSeries, order: usize) -> Result<Segmentation> {
    let len = x.len();
    let mean = x.values().iter().sum::<f64>() / len as f64;
    let mut s1 = vec![0.0; len + 1];
    let mut s2 = vec![0.0; len + 1];
    for (i, v) in x.values().iter().enumerate() {
        let c = v - mean;
        s1[i + 1] = s1[i] + c;
        s2[i + 1] = s2[i] + c * c;
    }
    let block = |a: usize, b: usize| {
        let sum = s1[b] - s1[a];
        s2[b] - s2[a] - sum * sum / (b - a) as f64
    };
    let mut cuts = vec![0, len];
    let mut gain = vec![0.0; len];
    for _ in 1..order {
        gain.iter_mut().for_each(|g| *g = 0.0);
        let mut top = 0.0f64;
        for w in cuts.windows(2) {
            let whole = block(w[0], w[1]);
            for c in w[0] + 1..w[1] {
                let g = (whole - block(w[0], c) - block(c, w[1])).max(0.0);
                gain[c] = g;
                top = top.max(g);
            }
        }
        let mut total = 0.0;
        if top > 0.0 {
            for g in gain.iter_mut() {
                *g = libm::pow(*g / top, SEED_SHARPNESS);
                total += *g;
            }
        }
        let pick = if total > 0.0 {
            let target = unit(rng) * total;
            let mut acc = 0.0;
            let mut pick = 0;
            for (c, g) in gain.iter().enumerate().skip(1) {
                if *g > 0.0 {
                    acc += g;
                    pick = c;
                    if acc > target {
                        break;
                    }
                }
            }
            pick
        } else {
            let free: Vec<usize> = (1..len).filter(|c| !cuts.contains(c)).collect();
            free[(rng.next_u64() % free.len() as u64) as usize]
        };
        let at = cuts.partition_point(|&c| c < pick);
        cuts.insert(at, pick);
    }
    Segmentation::new(cuts)
}

fn fit_state(x: &TimeSeries, s: usize, t: usize, config: &HmmConfig) -> Result<StateFit> {
    let fit = match fit_window(x, s, t, config.model, 0.0) {
        Ok(f) => f,
        Err(Error::UnderDetermined { .. } | Error::Singular { .. }) => {
            fit_window(x, s, t, config.model, config.ridge)?
        }
        Err(e) => return Err(e),
    };
    Ok(StateFit {
        coefficients: fit.coefficients,
        origin: s,
    })
}

/// Re-estimates each used state on its block; unused states keep `fits`.
fn estimate(x: &TimeSeries, z: &[usize], fits: &mut [StateFit], config: &HmmConfig) -> Result<()> {
    let mut start = 0;
    while start < z.len() {
        let k = z[start];
        let mut end = start + 1;
        while end < z.len() && z[end] == k {
            end += 1;
        }
        fits[k] = fit_state(x, start + 1, end, config)?;
        start = end;
    }
    Ok(())
}

fn residuals(x: &TimeSeries, fits: &[StateFit], model: CostModel, out: &mut Vec<f64>) {
    out.clear();
    for fit in fits {
        match model {
            CostModel::Means => {
                let mu = fit.coefficients[0];
                out.extend(x.values().iter().map(|v| (v - mu) * (v - mu)));
            }
            _ => out.extend((1..=x.len()).map(|tau| {
                let r = x.values()[tau - 1] - predict(model, x, fit.origin, tau, &fit.coefficients);
                r * r
            })),
        }
    }
}

fn fit_cost(z: &[usize], sq: &[f64], len: usize) -> f64 {
    z.iter().enumerate().map(|(t, &k)| sq[k * len + t]).sum()
}

fn run(x: &TimeSeries, config: &HmmConfig, init: &Segmentation, restart: usize) -> Result<HmmRun> {
    let len = x.len();
    let order = config.order;
    let trans = transition_matrix(order, config.p)?;
    let sigma = global_sigma(x)?.max(config.sigma_floor);

    let whole = fit_state(x, 1, len, config)?;
    let mut fits = vec![whole; order];
    let mut z: Vec<usize> = states_from_segmentation(init)
        .states()
        .iter()
        .map(|s| s - 1)
        .collect();

    let mut sq = Vec::with_capacity(order * len);
    let mut trace = EmTrace::default();
    let mut prev_ll = f64::NAN;
    let mut converged = false;

    for iteration in 1..=config.max_iter {
        let segmentation = segmentation_from_states(&to_sequence(&z, order)?);
        estimate(x, &z, &mut fits, config)?;
        residuals(x, &fits, config.model, &mut sq);
        let res = Residuals { len, sq: &sq };
        if iteration == 1 {
            prev_ll = -neg_log_likelihood(&z, &trans, sigma, &res);
        }
        let j = fit_cost(&z, &sq, len);
        let (path, ll) = decode(&trans, sigma, &res);
        let states_used = 1 + path[len - 1] - path[0];
        trace.records.push(IterationRecord {
            iteration,
            cost: hubert_cost(x, &segmentation)?,
            segmentation,
            coefficients: fits.iter().map(|f| f.coefficients.clone()).collect(),
            log_likelihood: ll,
            fit_cost: j,
            states_used,
        });
        z = path;
        let delta = ll - prev_ll;
        prev_ll = ll;
        if libm::fabs(delta) < config.epsilon {
            converged = true;
            break;
        }
    }

    estimate(x, &z, &mut fits, config)?;
    residuals(x, &fits, config.model, &mut sq);
    let log_likelihood = -neg_log_likelihood(&z, &trans, sigma, &Residuals { len, sq: &sq });
    let states = to_sequence(&z, order)?;
    let segmentation = segmentation_from_states(&states);
    let collapsed = segmentation.order() < order;
    let iterations = trace.records.len();
    Ok(HmmRun {
        segmentation,
        states,
        fits,
        log_likelihood,
        sigma,
        trace,
        converged,
        iterations,
        collapsed,
        restart,
    })
}

fn to_sequence(z: &[usize], order: usize) -> Result<StateSequence> {
    StateSequence::new(z.iter().map(|s| s + 1).collect(), order)
}
