// SPDX-License-Identifier: MIT OR Apache-2.0

//! Shared domain types and direct (non-accelerated) statistics.

use alloc::vec::Vec;
use core::ops::Range;

use crate::{Error, Result};

/// Ordered finite observations `x₁ … x_T`, optionally tagged with integer
/// time labels such as years.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    labels: Option<Vec<i64>>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            values,
            labels: None,
        })
    }

    pub fn with_labels(values: Vec<f64>, labels: Vec<i64>) -> Result<Self> {
        let mut series = Self::new(values)?;
        if labels.len() != series.values.len() {
            return Err(Error::LabelLength {
                labels: labels.len(),
                len: series.values.len(),
            });
        }
        if let Some(index) = labels.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::LabelsNotIncreasing { index: index + 1 });
        }
        series.labels = Some(labels);
        Ok(series)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; a series holds at least one value.
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> Option<&[i64]> {
        self.labels.as_deref()
    }

    /// Label of change point `t` (one-based end index of a segment).
    ///
    /// `t = 0` maps to the first label minus one, so a series starting in
    /// 1903 reports its leading boundary as 1902.
    pub fn change_point_label(&self, t: usize) -> Option<i64> {
        let labels = self.labels.as_ref()?;
        match t {
            0 => Some(labels[0] - 1),
            t if t <= labels.len() => Some(labels[t - 1]),
            _ => None,
        }
    }
}

/// Change points `0 = t₀ < t₁ < … < t_K = T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segmentation {
    change_points: Vec<usize>,
}

impl Segmentation {
    pub fn new(change_points: Vec<usize>) -> Result<Self> {
        if change_points.len() < 2 {
            return Err(Error::InvalidSegmentation(
                "need at least the two boundary change points",
            ));
        }
        if change_points[0] != 0 {
            return Err(Error::InvalidSegmentation("first change point must be 0"));
        }
        if change_points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidSegmentation(
                "change points must be strictly increasing",
            ));
        }
        Ok(Self { change_points })
    }

    /// The order-1 segmentation of a series of length `len`.
    pub fn single(len: usize) -> Result<Self> {
        Self::new(alloc::vec![0, len])
    }

    /// `order` segments of (nearly) equal length; earlier segments absorb the
    /// remainder.
    pub fn equal_split(len: usize, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::param("order", "must be at least 1"));
        }
        if order > len {
            return Err(Error::OrderTooLarge { order, len });
        }
        let base = len / order;
        let extra = len % order;
        let mut cps = Vec::with_capacity(order + 1);
        let mut t = 0;
        cps.push(0);
        for k in 0..order {
            t += base + usize::from(k < extra);
            cps.push(t);
        }
        Self::new(cps)
    }

    pub fn change_points(&self) -> &[usize] {
        &self.change_points
    }

    /// Number of segments `K`.
    pub fn order(&self) -> usize {
        self.change_points.len() - 1
    }

    /// Length `T` of the segmented series.
    pub fn series_len(&self) -> usize {
        *self.change_points.last().expect("validated non-empty")
    }

    /// Zero-based half-open index ranges of the segments. Range `k` is
    /// `t_{k−1} .. t_k`, i.e. the one-based indices `t_{k−1}+1 ..= t_k`.
    pub fn segments(&self) -> impl ExactSizeIterator<Item = Range<usize>> + '_ {
        self.change_points.windows(2).map(|w| w[0]..w[1])
    }

    pub fn segment_lengths(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.change_points.windows(2).map(|w| w[1] - w[0])
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if self.series_len() != len {
            return Err(Error::LengthMismatch {
                left: self.series_len(),
                right: len,
            });
        }
        Ok(())
    }
}

/// Hidden state path `z₁ … z_T` with one-based states in `1..=num_states`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateSequence {
    states: Vec<usize>,
    num_states: usize,
}

impl StateSequence {
    /// Validates range and the left-to-right (nondecreasing) structure.
    pub fn new(states: Vec<usize>, num_states: usize) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::EmptySeries);
        }
        for (index, &state) in states.iter().enumerate() {
            if state == 0 || state > num_states {
                return Err(Error::StateOutOfRange {
                    index,
                    state,
                    num_states,
                });
            }
        }
        if let Some(i) = states.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::DecreasingStates { index: i + 1 });
        }
        Ok(Self { states, num_states })
    }

    pub fn states(&self) -> &[usize] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Size `K` of the state space the path was drawn from.
    pub fn num_states(&self) -> usize {
        self.num_states
    }

    /// Number of distinct states visited, `K′ ≤ K`.
    pub fn states_used(&self) -> usize {
        1 + self.states.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

/// Mean, squared deviation and length of one segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentStats {
    pub mean: f64,
    pub deviation: f64,
    pub len: usize,
}

impl SegmentStats {
    /// Two-pass mean then squared deviation over `values`.
    pub fn of(values: &[f64]) -> Self {
        let len = values.len();
        let mean = values.iter().sum::<f64>() / len as f64;
        let deviation = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        Self {
            mean,
            deviation,
            len,
        }
    }
}

/// Change points at every index where the state changes.
pub fn segmentation_from_states(z: &StateSequence) -> Segmentation {
    let states = z.states();
    let mut cps = Vec::with_capacity(z.states_used() + 1);
    cps.push(0);
    for (i, w) in states.windows(2).enumerate() {
        if w[0] != w[1] {
            cps.push(i + 1);
        }
    }
    cps.push(states.len());
    Segmentation { change_points: cps }
}

/// Labels segment `k` with state `k`; inverse of [`segmentation_from_states`].
pub fn states_from_segmentation(t: &Segmentation) -> StateSequence {
    let mut states = Vec::with_capacity(t.series_len());
    for (k, len) in t.segment_lengths().enumerate() {
        states.extend(core::iter::repeat(k + 1).take(len));
    }
    StateSequence {
        states,
        num_states: t.order(),
    }
}

pub fn segment_stats(x: &TimeSeries, t: &Segmentation) -> Result<Vec<SegmentStats>> {
    t.check_len(x.len())?;
    Ok(t.segments()
        .map(|r| SegmentStats::of(&x.values()[r]))
        .collect())
}

/// Total squared deviation from segment means, `D_K(t) = Σ_k d_k`.
pub fn hubert_cost(x: &TimeSeries, t: &Segmentation) -> Result<f64> {
    Ok(segment_stats(x, t)?.iter().map(|s| s.deviation).sum())
}

/// Segmentation-independent noise estimate `sqrt(Σ(x_t − x̄)²/(T−1))`.
///
/// Returns 0 for a constant series; callers that divide by it must apply a
/// floor first.
pub fn global_sigma(x: &TimeSeries) -> Result<f64> {
    if x.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            len: x.len(),
        });
    }
    let stats = SegmentStats::of(x.values());
    Ok(libm::sqrt(stats.deviation / (x.len() - 1) as f64))
}
