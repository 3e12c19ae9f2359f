// SPDX-License-Identifier: MIT OR Apache-2.0

//! Choosing the number of segments.
//!
//! Orders `K = 2, 3, …` are segmented in turn and the loop halts at the first
//! order that fails its test. For the means model the test is a Scheffé
//! bound on the adjacent mean contrasts. For the regression models an order
//! is accepted while the residuals of the previous order still show lag
//! correlation, so the search stops at the first order whose residuals look
//! white.

mod distributions;

use alloc::vec;
use alloc::vec::Vec;

pub use distributions::{f_cdf, f_quantile, incomplete_beta, normal_cdf, normal_quantile};

use crate::costs::{fit_window, precompute_regression_cost, predict, CostModel, WindowFit, DEFAULT_DELTA};
use crate::dp::dp_segment_with;
use crate::hmm::{hmm_segment, HmmConfig, InitPolicy, DEFAULT_EPSILON, DEFAULT_MAX_ITER, DEFAULT_P, DEFAULT_RIDGE};
use crate::{segment_stats, Error, Result, Segmentation, TimeSeries};

pub const DEFAULT_ALPHA: f64 = 0.05;

/// Shortest residual series the whiteness test accepts.
pub const MIN_WHITENESS_LEN: usize = 10;

/// Scheffé statistic of one adjacent pair of segments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contrast {
    /// `μ̂_k − μ̂_{k+1}`.
    pub psi: f64,
    /// `ψ² / (s²_w (1/T_k + 1/T_{k+1}))`.
    pub statistic: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScheffeTest {
    pub significant: bool,
    /// `(K − 1) · F_{1−α; K−1, T−K}`.
    pub threshold: f64,
    /// Pooled within-segment variance `Σ d_k / (T − K)`.
    pub pooled_variance: f64,
    pub contrasts: Vec<Contrast>,
    /// No within-segment spread and a singleton segment; never significant.
    pub degenerate: bool,
}

impl ScheffeTest {
    /// Weakest adjacent contrast.
    pub fn min_statistic(&self) -> f64 {
        self.contrasts
            .iter()
            .map(|c| c.statistic)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Scheffé test that every adjacent pair of segment means differs.
pub fn scheffe_significant(x: &TimeSeries, t: &Segmentation, alpha: f64) -> Result<ScheffeTest> {
    check_alpha(alpha)?;
    let order = t.order();
    let len = x.len();
    if order < 2 {
        return Err(Error::param("K", "the test needs at least two segments"));
    }
    if len <= order {
        return Err(Error::TooShort {
            needed: order + 1,
            len,
        });
    }
    let stats = segment_stats(x, t)?;
    let within: f64 = stats.iter().map(|s| s.deviation).sum();
    let pooled = within / (len - order) as f64;
    let threshold = (order - 1) as f64 * f_quantile(1.0 - alpha, (order - 1) as f64, (len - order) as f64);
    let degenerate = pooled == 0.0 && stats.iter().any(|s| s.len == 1);

    let contrasts: Vec<Contrast> = stats
        .windows(2)
        .map(|w| {
            let psi = w[0].mean - w[1].mean;
            let weight = 1.0 / w[0].len as f64 + 1.0 / w[1].len as f64;
            let statistic = if pooled > 0.0 {
                psi * psi / (pooled * weight)
            } else if psi != 0.0 {
                f64::INFINITY
            } else {
                0.0
            };
            Contrast { psi, statistic }
        })
        .collect();
    let significant = !degenerate && contrasts.iter().all(|c| c.statistic > threshold);
    Ok(ScheffeTest {
        significant,
        threshold,
        pooled_variance: pooled,
        contrasts,
        degenerate,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct WhitenessTest {
    pub white: bool,
    /// Sample autocorrelations at lags `1..=lags`.
    pub autocorrelations: Vec<f64>,
    /// Half-width `z_{1−α/2} / √n` of the acceptance band.
    pub band: f64,
}

impl WhitenessTest {
    /// Largest absolute autocorrelation.
    pub fn max_abs(&self) -> f64 {
        self.autocorrelations.iter().fold(0.0, |a, r| a.max(r.abs()))
    }
}

/// Lag-1 autocorrelation band test.
pub fn residual_whiteness(residuals: &[f64], alpha: f64) -> Result<WhitenessTest> {
    residual_whiteness_lags(residuals, alpha, 1)
}

/// White when every autocorrelation at lags `1..=lags` lies inside
/// `±z_{1−α/2}/√n`. Constant residuals count as white.
pub fn residual_whiteness_lags(residuals: &[f64], alpha: f64, lags: usize) -> Result<WhitenessTest> {
    check_alpha(alpha)?;
    let n = residuals.len();
    if n < MIN_WHITENESS_LEN {
        return Err(Error::TooShort {
            needed: MIN_WHITENESS_LEN,
            len: n,
        });
    }
    if lags == 0 || lags >= n {
        return Err(Error::param("lags", "must lie in 1..n"));
    }
    let band = normal_quantile(1.0 - alpha / 2.0) / libm::sqrt(n as f64);
    let mean = residuals.iter().sum::<f64>() / n as f64;
    let denom: f64 = residuals.iter().map(|e| (e - mean) * (e - mean)).sum();
    if denom == 0.0 {
        return Ok(WhitenessTest {
            white: true,
            autocorrelations: vec![0.0; lags],
            band,
        });
    }
    let autocorrelations: Vec<f64> = (1..=lags)
        .map(|h| {
            residuals
                .windows(h + 1)
                .map(|w| (w[0] - mean) * (w[h] - mean))
                .sum::<f64>()
                / denom
        })
        .collect();
    let white = autocorrelations.iter().all(|r| r.abs() <= band);
    Ok(WhitenessTest {
        white,
        autocorrelations,
        band,
    })
}

/// Exact least-squares fit of every segment, falling back to a ridge solve
/// when a segment is too short or degenerate.
pub fn segment_fits(x: &TimeSeries, t: &Segmentation, model: CostModel, ridge: f64) -> Result<Vec<WindowFit>> {
    t.check_len(x.len())?;
    t.change_points()
        .windows(2)
        .map(|w| match fit_window(x, w[0] + 1, w[1], model, 0.0) {
            Err(Error::UnderDetermined { .. } | Error::Singular { .. }) => {
                fit_window(x, w[0] + 1, w[1], model, ridge)
            }
            other => other,
        })
        .collect()
}

/// Residuals of the per-segment fits, in series order.
pub fn segment_residuals(x: &TimeSeries, t: &Segmentation, fits: &[WindowFit], model: CostModel) -> Vec<f64> {
    let mut out = Vec::with_capacity(x.len());
    for (w, fit) in t.change_points().windows(2).zip(fits) {
        let s = w[0] + 1;
        for tau in s..=w[1] {
            out.push(x.values()[tau - 1] - predict(model, x, s, tau, &fit.coefficients));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Hmm,
    Dp,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionConfig {
    pub algorithm: Algorithm,
    pub model: CostModel,
    /// Largest order tried.
    pub k_max: usize,
    pub alpha: f64,
    pub p: f64,
    pub epsilon: f64,
    pub max_iter: usize,
    pub init: InitPolicy,
    /// RLS seed for the regression cost tables.
    pub delta: f64,
    pub ridge: f64,
    /// Shortest block the dynamic program may use; the model default when
    /// `None`.
    pub min_seg_len: Option<usize>,
    pub whiteness_lags: usize,
}

impl SelectionConfig {
    pub fn new(algorithm: Algorithm, model: CostModel, k_max: usize) -> Self {
        Self {
            algorithm,
            model,
            k_max,
            alpha: DEFAULT_ALPHA,
            p: DEFAULT_P,
            epsilon: DEFAULT_EPSILON,
            max_iter: DEFAULT_MAX_ITER,
            init: InitPolicy::EqualSplit,
            delta: DEFAULT_DELTA,
            ridge: DEFAULT_RIDGE,
            min_seg_len: None,
            whiteness_lags: 1,
        }
    }

    pub fn hmm_config(&self, order: usize) -> HmmConfig {
        HmmConfig {
            order,
            p: self.p,
            epsilon: self.epsilon,
            max_iter: self.max_iter,
            init: self.init,
            model: self.model,
            ridge: self.ridge,
            ..HmmConfig::new(order)
        }
    }
}

/// Which test produced a verdict.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Scheffe(ScheffeTest),
    /// Whiteness of the previous order's residuals; the order is accepted
    /// when they are not white.
    Whiteness(WhitenessTest),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderRecord {
    pub order: usize,
    pub segmentation: Segmentation,
    /// Residual sum of squares of exact per-segment fits.
    pub cost: f64,
    pub significant: bool,
    /// Weakest contrast statistic, or the largest residual autocorrelation.
    pub statistic: f64,
    /// Scheffé threshold, or the whiteness band.
    pub threshold: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionReport {
    /// One record per attempted order, starting at 2.
    pub records: Vec<OrderRecord>,
    /// Chosen order: the last significant one, or 1.
    pub chosen: usize,
    /// Segmentation of the chosen order.
    pub segmentation: Segmentation,
}

/// Segments for `K = 2, 3, …, k_max` and stops at the first order that fails.
pub fn select_order(x: &TimeSeries, config: &SelectionConfig) -> Result<SelectionReport> {
    check_alpha(config.alpha)?;
    config.model.validate()?;
    let len = x.len();
    if config.k_max == 0 || config.k_max > len {
        return Err(Error::param("K_max", "must lie in 1..=T"));
    }

    let dp = match config.algorithm {
        Algorithm::Dp if config.k_max >= 2 => {
            let costs = precompute_regression_cost(x, config.model, config.delta)?;
            let min_len = config.min_seg_len.unwrap_or(config.model.default_min_seg_len());
            Some(dp_segment_with(&mut &costs, config.k_max, min_len)?)
        }
        _ => None,
    };

    let single = Segmentation::single(len)?;
    let mut previous = single.clone();
    let mut records = Vec::new();
    let mut chosen = 1;
    let mut chosen_seg = single;

    for order in 2..=config.k_max {
        let segmentation = match &dp {
            Some(sols) => sols[order - 1].segmentation.clone(),
            None => hmm_segment(x, &config.hmm_config(order))?.segmentation,
        };
        let fits = segment_fits(x, &segmentation, config.model, config.ridge)?;
        let cost = fits.iter().map(|f| f.cost).sum();

        let (significant, statistic, threshold, verdict) = if config.model == CostModel::Means {
            if segmentation.order() < 2 || len <= segmentation.order() {
                let test = ScheffeTest {
                    significant: false,
                    threshold: f64::NAN,
                    pooled_variance: f64::NAN,
                    contrasts: Vec::new(),
                    degenerate: true,
                };
                (false, f64::NAN, f64::NAN, Verdict::Scheffe(test))
            } else {
                let test = scheffe_significant(x, &segmentation, config.alpha)?;
                (test.significant, test.min_statistic(), test.threshold, Verdict::Scheffe(test))
            }
        } else {
            let prev_fits = segment_fits(x, &previous, config.model, config.ridge)?;
            let res = segment_residuals(x, &previous, &prev_fits, config.model);
            let test = residual_whiteness_lags(&res, config.alpha, config.whiteness_lags)?;
            // A collapsed decode adds nothing over the previous order.
            let grew = segmentation.order() > previous.order();
            (grew && !test.white, test.max_abs(), test.band, Verdict::Whiteness(test))
        };

        records.push(OrderRecord {
            order,
            segmentation: segmentation.clone(),
            cost,
            significant,
            statistic,
            threshold,
            verdict,
        });
        if !significant {
            break;
        }
        chosen = order;
        chosen_seg = segmentation.clone();
        previous = segmentation;
    }

    Ok(SelectionReport {
        records,
        chosen,
        segmentation: chosen_seg,
    })
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::param("alpha", "must lie strictly between 0 and 1"));
    }
    Ok(())
}
