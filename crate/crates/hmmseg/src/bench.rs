// SPDX-License-Identifier: MIT OR Apache-2.0

//! Accuracy and runtime benchmark over synthetic five-state series.

use std::fmt::Write;
use std::time::Instant;

use rayon::prelude::*;

use hmmseg_core::costs::precompute_means_cost;
use hmmseg_core::dp::dp_segment;
use hmmseg_core::hmm::{hmm_segment, HmmConfig, InitPolicy, DEFAULT_RESTARTS};
use hmmseg_core::selection::Algorithm;
use hmmseg_core::simgen::{
    accuracy, generate, p_for_expected_length, replicate_seed, BenchCell, BenchTable, GenSpec, BENCHMARK_MEANS,
};
use hmmseg_core::{states_from_segmentation, Error, Result, Segmentation, TimeSeries};

pub const DEFAULT_LENGTHS: [f64; 7] = [200.0, 250.0, 500.0, 750.0, 1000.0, 1250.0, 1500.0];
pub const DEFAULT_SIGMAS: [f64; 11] = [0.0, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0];
pub const DEFAULT_REPLICATES: usize = 20;
pub const CSV_HEADER: &str = "T,sigma,mean_accuracy,mean_time_ms";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub lengths: Vec<f64>,
    pub sigmas: Vec<f64>,
    pub replicates: usize,
    pub algorithm: Algorithm,
    pub seed: u64,
    /// HMM starts per series.
    pub restarts: usize,
    pub p: f64,
    /// When false every time is reported as 0, so output depends on the
    /// seed alone.
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            lengths: DEFAULT_LENGTHS.to_vec(),
            sigmas: DEFAULT_SIGMAS.to_vec(),
            replicates: DEFAULT_REPLICATES,
            algorithm: Algorithm::Hmm,
            seed: 1,
            restarts: DEFAULT_RESTARTS,
            p: hmmseg_core::hmm::DEFAULT_P,
            timing: true,
        }
    }
}

/// Segments `x` into `order` blocks; the number of states is known.
pub fn segment_known_order(x: &TimeSeries, order: usize, config: &BenchConfig, seed: u64) -> Result<Segmentation> {
    match config.algorithm {
        Algorithm::Hmm => {
            let mut hmm = HmmConfig::new(order);
            hmm.p = config.p;
            hmm.init = InitPolicy::Random {
                restarts: config.restarts,
                seed,
            };
            Ok(hmm_segment(x, &hmm)?.segmentation)
        }
        Algorithm::Dp => {
            let costs = precompute_means_cost(x);
            Ok(dp_segment(&costs, order)?.pop().expect("k_max ≥ 1").segmentation)
        }
    }
}

struct Replicate {
    accuracy: f64,
    millis: f64,
}

fn replicate(length: f64, sigma: f64, seed: u64, config: &BenchConfig) -> Result<Replicate> {
    let order = BENCHMARK_MEANS.len();
    let p = p_for_expected_length(length, order)?;
    let (x, z) = generate(&GenSpec::benchmark(p, sigma, seed))?;
    let start = Instant::now();
    let seg = segment_known_order(&x, order, config, seed)?;
    let millis = if config.timing {
        start.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    };
    Ok(Replicate {
        accuracy: accuracy(&z, &states_from_segmentation(&seg))?,
        millis,
    })
}

/// Mean accuracy and mean segmentation time for every `(length, σ)` pair.
/// Replicate `i` uses seed `seed ⊕ i`; replicates run in parallel and are
/// summed in index order.
pub fn run_benchmark(config: &BenchConfig) -> Result<BenchTable> {
    if config.replicates == 0 {
        return Err(Error::InvalidParameter {
            name: "replicates",
            reason: "must be at least 1".into(),
        });
    }
    let mut cells = Vec::with_capacity(config.lengths.len() * config.sigmas.len());
    for &length in &config.lengths {
        for &sigma in &config.sigmas {
            let runs: Vec<Replicate> = (0..config.replicates as u64)
                .into_par_iter()
                .map(|i| replicate(length, sigma, replicate_seed(config.seed, i), config))
                .collect::<Result<_>>()?;
            let n = runs.len() as f64;
            cells.push(BenchCell {
                length,
                sigma,
                mean_accuracy: runs.iter().map(|r| r.accuracy).sum::<f64>() / n,
                mean_time_ms: runs.iter().map(|r| r.millis).sum::<f64>() / n,
                replicates: runs.len(),
            });
        }
    }
    Ok(BenchTable { cells })
}

pub fn write_csv<W: std::io::Write>(table: &BenchTable, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for c in &table.cells {
        w.write_record([
            c.length.to_string(),
            c.sigma.to_string(),
            format!("{:.6}", c.mean_accuracy),
            format!("{:.3}", c.mean_time_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn distinct(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for v in values {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Aligned text tables: mean time per length, then accuracy by σ and length.
pub fn text_tables(table: &BenchTable) -> String {
    let lengths = distinct(table.cells.iter().map(|c| c.length));
    let sigmas = distinct(table.cells.iter().map(|c| c.sigma));
    let mut s = String::new();

    let _ = write!(s, "{:>8}", "T");
    for l in &lengths {
        let _ = write!(s, "{l:>10}");
    }
    let _ = write!(s, "\n{:>8}", "T_e ms");
    for &l in &lengths {
        let row: Vec<f64> = table.cells.iter().filter(|c| c.length == l).map(|c| c.mean_time_ms).collect();
        let _ = write!(s, "{:>10.3}", row.iter().sum::<f64>() / row.len() as f64);
    }
    s.push_str("\n\n");

    let _ = write!(s, "{:>8}", "sigma");
    for l in &lengths {
        let _ = write!(s, "{l:>10}");
    }
    s.push('\n');
    for &sg in &sigmas {
        let _ = write!(s, "{sg:>8.2}");
        for &l in &lengths {
            match table.cell(l, sg) {
                Some(c) => {
                    let _ = write!(s, "{:>10.4}", c.mean_accuracy);
                }
                None => {
                    let _ = write!(s, "{:>10}", "-");
                }
            }
        }
        s.push('\n');
    }
    s
}
