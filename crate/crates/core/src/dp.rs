// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact minimum-cost segmentation by dynamic programming.
//!
//! `c_{t,k}` is the least cost of cutting the prefix `x₁..x_t` into `k`
//! blocks, with `c_{t,1} = d_{1,t}` and
//! `c_{t,k} = min_s c_{s,k−1} + d_{s+1,t}`. One pass over `t` fills every
//! order up to `K_max`, so each cost column is needed exactly once.

use alloc::vec;
use alloc::vec::Vec;

use crate::costs::{ColumnCosts, CostMatrix};
use crate::{Error, Result, Segmentation};

/// Largest series [`brute_force_segment`] accepts.
pub const BRUTE_FORCE_MAX_LEN: usize = 25;

/// Filled minimisation table.
#[derive(Debug, Clone, PartialEq)]
pub struct DpTable {
    len: usize,
    k_max: usize,
    cost: Vec<f64>,
    split: Vec<usize>,
}

impl DpTable {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    #[inline]
    fn idx(&self, t: usize, k: usize) -> usize {
        t * self.k_max + (k - 1)
    }

    /// `c_{t,k}`; infinite when the prefix cannot hold `k` blocks.
    pub fn cost(&self, t: usize, k: usize) -> f64 {
        self.cost[self.idx(t, k)]
    }

    /// End of block `k − 1` in the best `k`-block cut of `x₁..x_t`.
    pub fn split(&self, t: usize, k: usize) -> usize {
        self.split[self.idx(t, k)]
    }

    /// Backtracks the optimal order-`k` segmentation of the whole series.
    pub fn segmentation(&self, k: usize) -> Result<Segmentation> {
        if k == 0 || k > self.k_max {
            return Err(Error::param("k", "outside the table"));
        }
        if !self.cost(self.len, k).is_finite() {
            return Err(Error::param("k", "no feasible segmentation of this order"));
        }
        let mut cps = vec![0; k + 1];
        cps[k] = self.len;
        let mut t = self.len;
        for j in (1..=k).rev() {
            t = self.split(t, j);
            cps[j - 1] = t;
        }
        Segmentation::new(cps)
    }
}

/// Optimal segmentation of one order.
#[derive(Debug, Clone, PartialEq)]
pub struct DpSolution {
    pub order: usize,
    pub segmentation: Segmentation,
    pub cost: f64,
}

/// Fills the table from any column source with blocks of at least
/// `min_seg_len` points. Ties go to the earliest change point.
pub fn dp_table<C: ColumnCosts + ?Sized>(costs: &mut C, k_max: usize, min_seg_len: usize) -> Result<DpTable> {
    let len = costs.len();
    if k_max == 0 {
        return Err(Error::param("K_max", "must be at least 1"));
    }
    if min_seg_len == 0 {
        return Err(Error::param("min_seg_len", "must be at least 1"));
    }
    if k_max > len {
        return Err(Error::param("K_max", "cannot exceed the series length"));
    }
    if k_max * min_seg_len > len {
        return Err(Error::Infeasible {
            order: k_max,
            min_len: min_seg_len,
            len,
        });
    }
    let mut table = DpTable {
        len,
        k_max,
        cost: vec![f64::INFINITY; (len + 1) * k_max],
        split: vec![0; (len + 1) * k_max],
    };
    for t in 1..=len {
        let col = costs.column(t);
        if t >= min_seg_len {
            let i = table.idx(t, 1);
            table.cost[i] = col[0];
        }
        for k in 2..=k_max.min(t / min_seg_len) {
            let mut best = f64::INFINITY;
            let mut arg = 0;
            // s is the end of block k − 1; block k is x_{s+1}..x_t.
            for s in (k - 1) * min_seg_len..=t - min_seg_len {
                let e = table.cost[table.idx(s, k - 1)] + col[s];
                if e < best {
                    best = e;
                    arg = s;
                }
            }
            let i = table.idx(t, k);
            table.cost[i] = best;
            table.split[i] = arg;
        }
    }
    Ok(table)
}

/// Optimal segmentations of every order `1..=k_max` over a column source.
pub fn dp_segment_with<C: ColumnCosts + ?Sized>(
    costs: &mut C,
    k_max: usize,
    min_seg_len: usize,
) -> Result<Vec<DpSolution>> {
    let table = dp_table(costs, k_max, min_seg_len)?;
    (1..=k_max)
        .map(|k| {
            Ok(DpSolution {
                order: k,
                segmentation: table.segmentation(k)?,
                cost: table.cost(table.len, k),
            })
        })
        .collect()
}

/// Optimal segmentations of every order `1..=k_max`, using the model's
/// default minimum block length.
pub fn dp_segment(costs: &CostMatrix, k_max: usize) -> Result<Vec<DpSolution>> {
    let min_len = costs.model().default_min_seg_len();
    dp_segment_with(&mut &*costs, k_max, min_len)
}

/// Minimum cost at each order `1..=k_max`.
pub fn min_cost_curve(costs: &CostMatrix, k_max: usize) -> Result<Vec<f64>> {
    Ok(dp_segment(costs, k_max)?.into_iter().map(|s| s.cost).collect())
}

/// Exhaustive search over all `C(T−1, k−1)` segmentations, for testing.
///
/// Block costs are summed left to right, as in the dynamic program, so equal
/// optima compare exactly. Ties keep the lexicographically first cut.
pub fn brute_force_segment(costs: &CostMatrix, k: usize) -> Result<(Segmentation, f64)> {
    let len = costs.len();
    if len > BRUTE_FORCE_MAX_LEN {
        return Err(Error::TooLongForBruteForce {
            len,
            max: BRUTE_FORCE_MAX_LEN,
        });
    }
    if k == 0 || k > len {
        return Err(Error::param("k", "must lie in 1..=T"));
    }
    let mut cps: Vec<usize> = (0..k).collect();
    cps.push(len);
    let mut best = f64::INFINITY;
    let mut best_cps = cps.clone();
    loop {
        let mut total = 0.0;
        for w in cps.windows(2) {
            total += costs.get(w[0] + 1, w[1]);
        }
        if total < best {
            best = total;
            best_cps.clone_from(&cps);
        }
        // Next combination of interior cuts 1 ≤ c₁ < … < c_{k−1} ≤ T − 1.
        let mut i = k - 1;
        while i >= 1 && cps[i] == len - k + i {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        cps[i] += 1;
        for j in i + 1..k {
            cps[j] = cps[j - 1] + 1;
        }
    }
    Ok((Segmentation::new(best_cps)?, best))
}
