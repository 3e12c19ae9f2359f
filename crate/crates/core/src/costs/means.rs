// SPDX-License-Identifier: MIT OR Apache-2.0

use alloc::vec;
use alloc::vec::Vec;

use super::{check_window, ColumnCosts, CostMatrix, CostModel};
use crate::{Result, TimeSeries};

/// `Σ_{τ=s}^{t} (x_τ − mean(x_s..x_t))²`, evaluated directly in `O(t − s)`.
pub fn means_cost_direct(x: &TimeSeries, s: usize, t: usize) -> Result<f64> {
    check_window(x.len(), s, t)?;
    Ok(crate::series::SegmentStats::of(&x.values()[s - 1..t]).deviation)
}

/// Fills `out[s − 1] = d_{s,t}` for `s = 1 ..= t` by walking `s` downwards
/// with running sums: `d_{s,t} = d_{s+1,t} + (t−s)·(p_{s+1,t} − p_{s,t})² +
/// (x_s − p_{s,t})²`, where `p` is the window mean.
fn means_column(x: &[f64], t: usize, out: &mut [f64]) {
    debug_assert_eq!(out.len(), t);
    let mut sum = x[t - 1];
    let mut mean_next = sum;
    let mut d_next = 0.0;
    out[t - 1] = 0.0;
    for s in (1..t).rev() {
        let xs = x[s - 1];
        sum += xs;
        let mean = sum / (t - s + 1) as f64;
        let q = mean_next - mean;
        let d = d_next + (t - s) as f64 * q * q + (xs - mean) * (xs - mean);
        out[s - 1] = d;
        d_next = d;
        mean_next = mean;
    }
}

/// Full `O(T²)` table of mean-deviation costs.
pub fn precompute_means_cost(x: &TimeSeries) -> CostMatrix {
    let len = x.len();
    let mut data = vec![0.0; len * (len + 1) / 2];
    let mut start = 0;
    for t in 1..=len {
        means_column(x.values(), t, &mut data[start..start + t]);
        start += t;
    }
    CostMatrix::from_parts(len, CostModel::Means, None, data, Vec::new())
}

/// Mean-deviation costs produced one column at a time in `O(T)` memory.
///
/// Columns are bit-identical to those of [`precompute_means_cost`].
#[derive(Debug, Clone)]
pub struct StreamingMeansCost<'a> {
    values: &'a [f64],
    buf: Vec<f64>,
}

impl<'a> StreamingMeansCost<'a> {
    pub fn new(x: &'a TimeSeries) -> Self {
        Self {
            values: x.values(),
            buf: Vec::with_capacity(x.len()),
        }
    }
}

impl ColumnCosts for StreamingMeansCost<'_> {
    fn len(&self) -> usize {
        self.values.len()
    }

    fn column(&mut self, t: usize) -> &[f64] {
        assert!(1 <= t && t <= self.values.len(), "column {t} out of range");
        self.buf.clear();
        self.buf.resize(t, 0.0);
        means_column(self.values, t, &mut self.buf);
        &self.buf
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;
    use proptest::prelude::*;

    fn ts(v: &[f64]) -> TimeSeries {
        TimeSeries::new(v.to_vec()).unwrap()
    }

    #[test]
    fn direct_examples() {
        let x = ts(&[1.0, 1.0, 2.0, 2.0]);
        assert_eq!(means_cost_direct(&x, 1, 2).unwrap(), 0.0);
        assert_eq!(means_cost_direct(&x, 1, 4).unwrap(), 1.0);
        let y = ts(&[0.0, 0.0, 10.0, 10.0]);
        assert!((means_cost_direct(&y, 2, 4).unwrap() - 200.0 / 3.0).abs() < 1e-12);
        assert!(matches!(
            means_cost_direct(&x, 3, 2),
            Err(Error::WindowOutOfRange { .. })
        ));
        assert!(means_cost_direct(&x, 0, 2).is_err());
        assert!(means_cost_direct(&x, 1, 5).is_err());
    }

    #[test]
    fn recursive_examples() {
        let m = precompute_means_cost(&ts(&[4.2]));
        assert_eq!(m.len(), 1);
        assert_eq!(m.get(1, 1), 0.0);

        let m = precompute_means_cost(&ts(&[1.0, 1.0, 2.0, 2.0]));
        assert_eq!(m.get(1, 4), 1.0);
        assert_eq!(m.get(1, 2), 0.0);
        assert_eq!(m.get(3, 4), 0.0);
        for t in 1..=4 {
            assert_eq!(m.get(t, t), 0.0);
        }
    }

    #[test]
    fn streaming_columns_match_dense_bitwise() {
        let x = ts(&[0.3, -1.2, 5.5, 2.0, 2.1, -0.7, 9.9]);
        let dense = precompute_means_cost(&x);
        let mut stream = StreamingMeansCost::new(&x);
        for t in 1..=x.len() {
            let a: Vec<u64> = dense.column(t).iter().map(|v| v.to_bits()).collect();
            let b: Vec<u64> = stream.column(t).iter().map(|v| v.to_bits()).collect();
            assert_eq!(a, b);
        }
    }

    proptest! {
        #[test]
        fn recursion_matches_direct(v in prop::collection::vec(-100.0f64..100.0, 1..60)) {
            let x = ts(&v);
            let m = precompute_means_cost(&x);
            for t in 1..=x.len() {
                for s in 1..=t {
                    let direct = means_cost_direct(&x, s, t).unwrap();
                    prop_assert!((m.get(s, t) - direct).abs() <= 1e-9 * (1.0 + direct));
                }
            }
        }

        #[test]
        fn costs_nest(v in prop::collection::vec(-50.0f64..50.0, 2..40)) {
            let x = ts(&v);
            let m = precompute_means_cost(&x);
            for t in 1..=x.len() {
                for s in 1..=t {
                    let d = m.get(s, t);
                    prop_assert!(d >= 0.0);
                    let slack = 1e-9 * (1.0 + d);
                    if s < t {
                        prop_assert!(d + slack >= m.get(s + 1, t));
                        prop_assert!(d + slack >= m.get(s, t - 1));
                    }
                }
            }
        }
    }
}
