// SPDX-License-Identifier: MIT OR Apache-2.0

//! Segmentation of univariate time series into `K` homogeneous contiguous
//! blocks.
//!
//! Two segmenters are provided:
//!
//! * [`hmm::hmm_segment`], an iterative estimate/decode loop over a
//!   left-to-right Gaussian HMM, decoded with a log-domain Viterbi pass. It
//!   runs in `O(T·K²)` per iteration and usually finds the global optimum.
//! * [`dp::dp_segment`], an exact dynamic program over a precomputed
//!   [`costs::CostMatrix`], returning optimal segmentations of every order up
//!   to `K_max` in `O(K·T²)`.
//!
//! Segment costs come in three flavours: deviation from the segment mean,
//! autoregressive prediction error, and polynomial trend residuals.
//! [`selection`] picks the number of segments, and [`simgen`] generates
//! synthetic left-to-right HMM series for benchmarking.
//!
//! Change points follow the convention `0 = t₀ < t₁ < … < t_K = T`, with
//! segment `k` covering the one-based indices `t_{k−1}+1 ..= t_k`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod costs;
pub mod dp;
mod error;
pub mod hmm;
pub(crate) mod linalg;
pub mod selection;
pub mod series;
pub mod simgen;

pub use error::{Error, Result};
pub use series::{
    global_sigma, hubert_cost, segment_stats, segmentation_from_states, states_from_segmentation,
    SegmentStats, Segmentation, StateSequence, TimeSeries,
};
