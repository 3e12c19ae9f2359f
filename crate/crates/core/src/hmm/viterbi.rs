// SPDX-License-Identifier: MIT OR Apache-2.0

//! Log-domain Viterbi decoding.

use alloc::vec;
use alloc::vec::Vec;

use super::transition::{HmmParams, TransitionMatrix};
use crate::{Error, Result, StateSequence, TimeSeries};

/// Squared residuals laid out state-major: `sq[k * len + t]` is the squared
/// misfit of observation `t` (zero-based) under state `k`.
pub(crate) struct Residuals<'a> {
    pub(crate) len: usize,
    pub(crate) sq: &'a [f64],
}

impl Residuals<'_> {
    #[inline]
    fn get(&self, state: usize, t: usize) -> f64 {
        self.sq[state * self.len + t]
    }
}

/// Most likely zero-based state path and its joint log-likelihood.
///
/// The recursion starts from `log q_{·,0} = [0, −∞, …]` (the chain sits in
/// state 1 before the first observation). Ties go to the lowest state index,
/// both in the per-step argmax and in the final one.
pub(crate) fn decode(trans: &TransitionMatrix, sigma: f64, res: &Residuals<'_>) -> (Vec<usize>, f64) {
    let k = trans.order();
    let len = res.len;
    let scale = 1.0 / (2.0 * sigma * sigma);

    // Nonzero predecessors of each state, ascending, with their log weights.
    let preds: Vec<Vec<(usize, f64)>> = (0..k)
        .map(|to| {
            (0..k)
                .filter(|&from| trans.get(from, to) > 0.0)
                .map(|from| (from, libm::log(trans.get(from, to))))
                .collect()
        })
        .collect();

    let mut prev = vec![f64::NEG_INFINITY; k];
    prev[0] = 0.0;
    let mut cur = vec![f64::NEG_INFINITY; k];
    let mut back = vec![0u32; len * k];

    for t in 0..len {
        for (to, from_list) in preds.iter().enumerate() {
            let mut best = f64::NEG_INFINITY;
            let mut arg = from_list.first().map_or(to, |p| p.0);
            for &(from, log_p) in from_list {
                let cand = prev[from] + log_p;
                if cand > best {
                    best = cand;
                    arg = from;
                }
            }
            cur[to] = best - res.get(to, t) * scale;
            back[t * k + to] = arg as u32;
        }
        core::mem::swap(&mut prev, &mut cur);
    }

    let mut last = 0;
    for s in 1..k {
        if prev[s] > prev[last] {
            last = s;
        }
    }
    let best = prev[last];
    let mut path = vec![0usize; len];
    path[len - 1] = last;
    for t in (1..len).rev() {
        path[t - 1] = back[t * k + path[t]] as usize;
    }
    (path, best)
}

/// `−Σ log P_{z_{t−1},z_t} + Σ r_t²/(2σ²)` with `z₀ = 1`, for a zero-based
/// path. Infinite when the path uses a forbidden transition.
pub(crate) fn neg_log_likelihood(
    path: &[usize],
    trans: &TransitionMatrix,
    sigma: f64,
    res: &Residuals<'_>,
) -> f64 {
    let scale = 1.0 / (2.0 * sigma * sigma);
    let mut prev = 0;
    let mut total = 0.0;
    for (t, &z) in path.iter().enumerate() {
        let p = trans.get(prev, z);
        if p == 0.0 {
            return f64::INFINITY;
        }
        total += -libm::log(p) + res.get(z, t) * scale;
        prev = z;
    }
    total
}

fn mean_residuals(x: &TimeSeries, means: &[f64]) -> Vec<f64> {
    let len = x.len();
    let mut sq = Vec::with_capacity(means.len() * len);
    for &mu in means {
        sq.extend(x.values().iter().map(|v| (v - mu) * (v - mu)));
    }
    sq
}

/// Maximum-likelihood state path for the mean-switching HMM and the maximal
/// joint log-likelihood `log L²`.
pub fn viterbi(x: &TimeSeries, params: &HmmParams) -> Result<(StateSequence, f64)> {
    let sq = mean_residuals(x, &params.means);
    let res = Residuals { len: x.len(), sq: &sq };
    let (path, ll) = decode(&params.transitions(), params.sigma, &res);
    let states = StateSequence::new(path.into_iter().map(|s| s + 1).collect(), params.order())?;
    Ok((states, ll))
}

/// `−log L²(z, x)` for the mean-switching HMM.
pub fn joint_neg_log_likelihood(z: &StateSequence, x: &TimeSeries, params: &HmmParams) -> Result<f64> {
    if z.len() != x.len() {
        return Err(Error::LengthMismatch {
            left: z.len(),
            right: x.len(),
        });
    }
    if z.num_states() > params.order() {
        return Err(Error::param("z", "uses more states than the model has"));
    }
    let sq = mean_residuals(x, &params.means);
    let res = Residuals { len: x.len(), sq: &sq };
    let path: Vec<usize> = z.states().iter().map(|s| s - 1).collect();
    Ok(neg_log_likelihood(&path, &params.transitions(), params.sigma, &res))
}
