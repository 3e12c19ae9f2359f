// SPDX-License-Identifier: MIT OR Apache-2.0

//! The JSON segmentation report.
//!
//! Keys appear in declaration order, so equal runs give byte-identical
//! output. Non-finite statistics are written as `null`.

use serde::{Deserialize, Serialize};

use hmmseg_core::costs::CostModel;
use hmmseg_core::hmm::{HmmConfig, HmmRun};
use hmmseg_core::selection::{segment_fits, SelectionReport, Verdict};
use hmmseg_core::{hubert_cost, segment_stats, Result, Segmentation, TimeSeries};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub algorithm: String,
    pub cost_model: String,
    pub length: usize,
    pub order: usize,
    /// `0 = t₀ < … < t_K = T`.
    pub change_points: Vec<usize>,
    /// Label of each change point; `t₀` maps to the first label minus one.
    pub change_point_labels: Option<Vec<i64>>,
    /// Total squared deviation from segment means.
    pub cost: f64,
    /// Residual sum of squares of the per-segment model fits.
    pub model_cost: f64,
    pub segments: Vec<SegmentReport>,
    pub hmm: Option<HmmReport>,
    pub selection: Option<SelectionSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentReport {
    /// One-based, inclusive.
    pub start: usize,
    pub end: usize,
    pub start_label: Option<i64>,
    pub end_label: Option<i64>,
    pub length: usize,
    pub mean: f64,
    pub coefficients: Vec<f64>,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HmmReport {
    pub p: f64,
    pub sigma: f64,
    pub log_likelihood: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub collapsed: bool,
    /// Index of the winning start; 0 is the equal split.
    pub restart: usize,
    pub trace: Vec<TraceStep>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub iteration: usize,
    pub change_points: Vec<usize>,
    pub coefficients: Vec<Vec<f64>>,
    pub log_likelihood: Option<f64>,
    pub cost: f64,
    pub fit_cost: f64,
    pub states_used: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionSummary {
    pub alpha: f64,
    pub k_max: usize,
    pub chosen: usize,
    pub orders: Vec<OrderSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderSummary {
    pub order: usize,
    pub change_points: Vec<usize>,
    pub cost: f64,
    pub significant: bool,
    /// `scheffe` or `whiteness`.
    pub test: String,
    pub statistic: Option<f64>,
    pub threshold: Option<f64>,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

impl Report {
    /// Describes `segmentation` of `x` with per-segment fits of `model`.
    pub fn new(
        algorithm: &str,
        x: &TimeSeries,
        segmentation: &Segmentation,
        model: CostModel,
        ridge: f64,
    ) -> Result<Self> {
        let stats = segment_stats(x, segmentation)?;
        let fits = segment_fits(x, segmentation, model, ridge)?;
        let cps = segmentation.change_points();
        let label = |t: usize| x.labels().map(|l| l[t - 1]);
        let segments = cps
            .windows(2)
            .zip(stats.iter().zip(&fits))
            .map(|(w, (st, fit))| SegmentReport {
                start: w[0] + 1,
                end: w[1],
                start_label: label(w[0] + 1),
                end_label: label(w[1]),
                length: st.len,
                mean: st.mean,
                coefficients: fit.coefficients.clone(),
                cost: fit.cost,
            })
            .collect();
        let change_point_labels = x
            .labels()
            .map(|_| cps.iter().filter_map(|&t| x.change_point_label(t)).collect());
        Ok(Report {
            algorithm: algorithm.to_owned(),
            cost_model: model.to_string(),
            length: x.len(),
            order: segmentation.order(),
            change_points: cps.to_vec(),
            change_point_labels,
            cost: hubert_cost(x, segmentation)?,
            model_cost: fits.iter().map(|f| f.cost).sum(),
            segments,
            hmm: None,
            selection: None,
        })
    }

    pub fn segmentation(&self) -> Result<Segmentation> {
        Segmentation::new(self.change_points.clone())
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

impl HmmReport {
    pub fn new(run: &HmmRun, config: &HmmConfig) -> Self {
        HmmReport {
            p: config.p,
            sigma: run.sigma,
            log_likelihood: finite(run.log_likelihood),
            iterations: run.iterations,
            converged: run.converged,
            collapsed: run.collapsed,
            restart: run.restart,
            trace: run
                .trace
                .records
                .iter()
                .map(|r| TraceStep {
                    iteration: r.iteration,
                    change_points: r.segmentation.change_points().to_vec(),
                    coefficients: r.coefficients.clone(),
                    log_likelihood: finite(r.log_likelihood),
                    cost: r.cost,
                    fit_cost: r.fit_cost,
                    states_used: r.states_used,
                })
                .collect(),
        }
    }
}

impl SelectionSummary {
    pub fn new(report: &SelectionReport, alpha: f64, k_max: usize) -> Self {
        SelectionSummary {
            alpha,
            k_max,
            chosen: report.chosen,
            orders: report
                .records
                .iter()
                .map(|r| OrderSummary {
                    order: r.order,
                    change_points: r.segmentation.change_points().to_vec(),
                    cost: r.cost,
                    significant: r.significant,
                    test: match r.verdict {
                        Verdict::Scheffe(_) => "scheffe",
                        Verdict::Whiteness(_) => "whiteness",
                    }
                    .to_owned(),
                    statistic: finite(r.statistic),
                    threshold: finite(r.threshold),
                })
                .collect(),
        }
    }
}
