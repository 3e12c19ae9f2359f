// SPDX-License-Identifier: MIT OR Apache-2.0

//! Small dense least-squares kernels.

use alloc::vec;
use alloc::vec::Vec;

/// Relative threshold on the equilibrated `R` diagonal below which a design
/// is treated as rank deficient.
const RANK_TOL: f64 = 1e-10;

/// Row-major design matrix built one observation at a time.
#[derive(Debug, Clone)]
pub(crate) struct Design {
    cols: usize,
    rows: Vec<f64>,
    target: Vec<f64>,
}

impl Design {
    pub(crate) fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            target: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, row: &[f64], y: f64) {
        debug_assert_eq!(row.len(), self.cols);
        self.rows.extend_from_slice(row);
        self.target.push(y);
    }

    pub(crate) fn n_rows(&self) -> usize {
        self.target.len()
    }

    /// Least-squares coefficients minimising `‖Ua − y‖² + ridge·‖a‖²`.
    ///
    /// Returns `None` when `ridge == 0` and the design is rank deficient.
    pub(crate) fn solve(&self, ridge: f64) -> Option<Vec<f64>> {
        let n = self.cols;
        let extra = if ridge > 0.0 { n } else { 0 };
        let m = self.n_rows() + extra;
        if m < n {
            return None;
        }
        // Column-major copy, ridge rows appended below the data.
        let mut a = vec![0.0; m * n];
        for (i, row) in self.rows.chunks_exact(n).enumerate() {
            for (j, v) in row.iter().enumerate() {
                a[j * m + i] = *v;
            }
        }
        let mut b = self.target.clone();
        if extra > 0 {
            let r = libm::sqrt(ridge);
            for j in 0..n {
                a[j * m + self.n_rows() + j] = r;
            }
            b.resize(m, 0.0);
        }

        // Equilibrate columns so the rank test is scale free.
        let mut scale = vec![1.0; n];
        for j in 0..n {
            let col = &mut a[j * m..(j + 1) * m];
            let norm = libm::sqrt(col.iter().map(|v| v * v).sum::<f64>());
            if norm > 0.0 {
                col.iter_mut().for_each(|v| *v /= norm);
                scale[j] = norm;
            }
        }

        let mut diag = vec![0.0; n];
        for j in 0..n {
            let norm = libm::sqrt(a[j * m + j..(j + 1) * m].iter().map(|v| v * v).sum::<f64>());
            if norm == 0.0 {
                continue;
            }
            let alpha = if a[j * m + j] > 0.0 { -norm } else { norm };
            a[j * m + j] -= alpha;
            let v_norm2: f64 = a[j * m + j..(j + 1) * m].iter().map(|v| v * v).sum();
            if v_norm2 > 0.0 {
                for c in j + 1..n {
                    let dot: f64 = (j..m).map(|i| a[j * m + i] * a[c * m + i]).sum();
                    let f = 2.0 * dot / v_norm2;
                    for i in j..m {
                        a[c * m + i] -= f * a[j * m + i];
                    }
                }
                let dot: f64 = (j..m).map(|i| a[j * m + i] * b[i]).sum();
                let f = 2.0 * dot / v_norm2;
                for i in j..m {
                    b[i] -= f * a[j * m + i];
                }
            }
            diag[j] = alpha;
        }

        let max_diag = diag.iter().fold(0.0f64, |acc, d| acc.max(d.abs()));
        if max_diag == 0.0 || diag.iter().any(|d| d.abs() <= RANK_TOL * max_diag) {
            return None;
        }
        let mut coef = vec![0.0; n];
        for j in (0..n).rev() {
            let mut acc = b[j];
            for c in j + 1..n {
                acc -= a[c * m + j] * coef[c];
            }
            coef[j] = acc / diag[j];
        }
        for (c, s) in coef.iter_mut().zip(&scale) {
            *c /= s;
        }
        Some(coef)
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
