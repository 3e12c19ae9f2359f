// SPDX-License-Identifier: MIT OR Apache-2.0

//! Left-to-right Gaussian HMM segmentation.
//!
//! State `k` emits `x_t ~ N(μ_k, σ²)` (or, for the regression models, the
//! state's fitted prediction plus noise). The chain starts in state 1 and can
//! only stay put or advance by one, so every state path maps to exactly one
//! segmentation. Likelihoods use the unnormalised emission
//! `exp(−r²/2σ²)`; absolute values are therefore not comparable with fully
//! normalised Gaussian densities, but every argmax and every difference is.

mod em;
mod transition;
mod viterbi;

pub use em::{
    hmm_segment, hmm_segment_from, EmTrace, HmmConfig, HmmRun, InitPolicy, IterationRecord,
    StateFit, DEFAULT_EPSILON, DEFAULT_MAX_ITER, DEFAULT_P, DEFAULT_RESTARTS, DEFAULT_RIDGE,
    DEFAULT_SIGMA_FLOOR, SEED_SHARPNESS,
};
pub use transition::{transition_matrix, HmmParams, TransitionMatrix};
pub use viterbi::{joint_neg_log_likelihood, viterbi};
