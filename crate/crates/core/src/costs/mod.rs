// SPDX-License-Identifier: MIT OR Apache-2.0

//! Segment cost models and the triangular cost table `d_{s,t}`.
//!
//! All window arguments are one-based and inclusive: `(s, t)` is the block
//! `x_s ..= x_t`, which is the segment between change points `s − 1` and `t`.

mod means;
mod regression;

use alloc::vec::Vec;
use core::fmt;

pub use means::{means_cost_direct, precompute_means_cost, StreamingMeansCost};
pub use regression::{
    ar_cost_exact, fit_window, poly_cost, precompute_ar_cost, precompute_poly_cost,
    precompute_regression_cost, predict, rls_path, Rls, WindowFit,
};

use crate::{Error, Result};

/// Default RLS seed `δ` (`P₀ = I/δ`).
pub const DEFAULT_DELTA: f64 = 1e-6;

/// Which per-segment model a cost measures the misfit of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostModel {
    /// Squared deviation from the segment mean.
    Means,
    /// Prediction error of an AR(`order`) model with intercept.
    Ar { order: usize },
    /// Residuals of a polynomial trend in time since the segment start.
    Poly { degree: usize },
}

impl CostModel {
    /// Number of fitted coefficients per segment.
    pub fn n_params(self) -> usize {
        match self {
            CostModel::Means => 1,
            CostModel::Ar { order } => order + 1,
            CostModel::Poly { degree } => degree + 1,
        }
    }

    /// Shortest segment that is not under-determined: 1 for means, `l + 2`
    /// for the regression models.
    pub fn default_min_seg_len(self) -> usize {
        match self {
            CostModel::Means => 1,
            _ => self.n_params() + 1,
        }
    }

    pub(crate) fn validate(self) -> Result<()> {
        if let CostModel::Ar { order: 0 } = self {
            return Err(Error::param("order", "AR order must be at least 1"));
        }
        Ok(())
    }
}

impl fmt::Display for CostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostModel::Means => f.write_str("means"),
            CostModel::Ar { order } => write!(f, "ar({order})"),
            CostModel::Poly { degree } => write!(f, "poly({degree})"),
        }
    }
}

/// Marks on a window whose cost should not be trusted as-is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WindowFlags(u8);

impl WindowFlags {
    /// Fewer points than coefficients plus one; the cost is pinned to 0.
    pub const UNDER_DETERMINED: WindowFlags = WindowFlags(1);
    /// AR regressors reach before `x₁` and were clamped to `x₁`.
    pub const BOUNDARY: WindowFlags = WindowFlags(2);

    pub fn contains(self, other: WindowFlags) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    fn insert(&mut self, other: WindowFlags) {
        self.0 |= other.0;
    }
}

/// Dense upper-triangular table of `d_{s,t}`, `1 ≤ s ≤ t ≤ T`, stored column
/// by column so `d_{1..=t, t}` is contiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    len: usize,
    model: CostModel,
    delta: Option<f64>,
    data: Vec<f64>,
    flags: Vec<WindowFlags>,
}

#[inline]
fn tri_index(s: usize, t: usize) -> usize {
    t * (t - 1) / 2 + (s - 1)
}

impl CostMatrix {
    pub(crate) fn from_parts(
        len: usize,
        model: CostModel,
        delta: Option<f64>,
        data: Vec<f64>,
        flags: Vec<WindowFlags>,
    ) -> Self {
        debug_assert_eq!(data.len(), len * (len + 1) / 2);
        debug_assert!(flags.is_empty() || flags.len() == data.len());
        Self {
            len,
            model,
            delta,
            data,
            flags,
        }
    }

    /// Series length `T`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn model(&self) -> CostModel {
        self.model
    }

    /// RLS seed the table was built with, for the regression models.
    pub fn delta(&self) -> Option<f64> {
        self.delta
    }

    /// `d_{s,t}`; panics outside `1 ≤ s ≤ t ≤ T`.
    #[inline]
    pub fn get(&self, s: usize, t: usize) -> f64 {
        assert!(1 <= s && s <= t && t <= self.len, "window ({s}, {t}) out of range");
        self.data[tri_index(s, t)]
    }

    /// `d_{1,t} ..= d_{t,t}`.
    #[inline]
    pub fn column(&self, t: usize) -> &[f64] {
        assert!(1 <= t && t <= self.len, "column {t} out of range");
        &self.data[tri_index(1, t)..=tri_index(t, t)]
    }

    pub fn flags(&self, s: usize, t: usize) -> WindowFlags {
        if self.flags.is_empty() {
            return WindowFlags::default();
        }
        assert!(1 <= s && s <= t && t <= self.len, "window ({s}, {t}) out of range");
        self.flags[tri_index(s, t)]
    }

    pub fn is_flagged(&self, s: usize, t: usize) -> bool {
        !self.flags(s, t).is_empty()
    }

    /// Writes the table as tab-separated text, one line per `t` holding
    /// `d_{1,t} … d_{t,t}`.
    pub fn write_tsv<W: fmt::Write>(&self, out: &mut W) -> fmt::Result {
        for t in 1..=self.len {
            for (i, d) in self.column(t).iter().enumerate() {
                if i > 0 {
                    out.write_char('\t')?;
                }
                write!(out, "{d}")?;
            }
            out.write_char('\n')?;
        }
        Ok(())
    }
}

/// Column-wise access to `d_{s,t}` for the dynamic program, which visits
/// `t = 1, 2, …, T` in order.
pub trait ColumnCosts {
    fn len(&self) -> usize;

    /// `d_{s,t}` for `s = 1 ..= t`.
    fn column(&mut self, t: usize) -> &[f64];
}

impl ColumnCosts for &CostMatrix {
    fn len(&self) -> usize {
        self.len
    }

    fn column(&mut self, t: usize) -> &[f64] {
        CostMatrix::column(self, t)
    }
}

pub(crate) fn check_window(len: usize, s: usize, t: usize) -> Result<()> {
    if s == 0 || s > t || t > len {
        return Err(Error::WindowOutOfRange { s, t, len });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;
    use alloc::vec;

    #[test]
    fn triangular_layout_is_column_major_by_t() {
        let data = vec![0.0, 1.0, 0.0, 2.0, 3.0, 0.0];
        let m = CostMatrix::from_parts(3, CostModel::Means, None, data, Vec::new());
        assert_eq!(m.column(1), &[0.0]);
        assert_eq!(m.column(2), &[1.0, 0.0]);
        assert_eq!(m.column(3), &[2.0, 3.0, 0.0]);
        assert_eq!(m.get(2, 3), 3.0);
        assert!(!m.is_flagged(1, 3));

        let mut s = String::new();
        m.write_tsv(&mut s).unwrap();
        assert_eq!(s, "0\n1\t0\n2\t3\t0\n");
    }

    #[test]
    fn model_helpers() {
        assert_eq!(CostModel::Means.default_min_seg_len(), 1);
        assert_eq!(CostModel::Ar { order: 3 }.default_min_seg_len(), 5);
        assert_eq!(CostModel::Poly { degree: 1 }.n_params(), 2);
        assert_eq!(alloc::format!("{}", CostModel::Ar { order: 2 }), "ar(2)");
        assert!(CostModel::Ar { order: 0 }.validate().is_err());
    }

    #[test]
    fn window_flags_combine() {
        let mut f = WindowFlags::default();
        assert!(f.is_empty());
        f.insert(WindowFlags::BOUNDARY);
        assert!(f.contains(WindowFlags::BOUNDARY));
        assert!(!f.contains(WindowFlags::UNDER_DETERMINED));
    }
}
