// SPDX-License-Identifier: MIT OR Apache-2.0

use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("time series is empty")]
    EmptySeries,
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },
    #[error("label count {labels} does not match series length {len}")]
    LabelLength { labels: usize, len: usize },
    #[error("labels must be strictly increasing (index {index})")]
    LabelsNotIncreasing { index: usize },
    #[error("invalid segmentation: {0}")]
    InvalidSegmentation(&'static str),
    #[error("state sequence decreases at index {index}")]
    DecreasingStates { index: usize },
    #[error("state {state} at index {index} is outside 1..={num_states}")]
    StateOutOfRange {
        index: usize,
        state: usize,
        num_states: usize,
    },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("window [{s}, {t}] is out of range for a series of length {len}")]
    WindowOutOfRange { s: usize, t: usize, len: usize },
    #[error("window [{s}, {t}] has too few points for {params} parameters")]
    UnderDetermined { s: usize, t: usize, params: usize },
    #[error("singular least-squares system on window [{s}, {t}]")]
    Singular { s: usize, t: usize },
    #[error("series needs at least {needed} points, got {len}")]
    TooShort { needed: usize, len: usize },
    #[error("order {order} exceeds series length {len}")]
    OrderTooLarge { order: usize, len: usize },
    #[error("order {order} with minimum segment length {min_len} does not fit {len} points")]
    Infeasible {
        order: usize,
        min_len: usize,
        len: usize,
    },
    #[error("exhaustive search limited to {max} points, got {len}")]
    TooLongForBruteForce { len: usize, max: usize },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// Failures of the numerics rather than of the input or configuration.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Singular { .. })
    }

    /// Errors caused by a bad configuration value rather than by the data.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter { .. }
                | Error::OrderTooLarge { .. }
                | Error::Infeasible { .. }
                | Error::TooLongForBruteForce { .. }
        )
    }
}
