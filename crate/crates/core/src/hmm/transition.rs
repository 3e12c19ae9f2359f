// SPDX-License-Identifier: MIT OR Apache-2.0

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// `K × K` left-to-right transition matrix: `p` on the diagonal, `1 − p` on
/// the superdiagonal, and an absorbing last state.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    order: usize,
    data: Vec<f64>,
}

pub fn transition_matrix(order: usize, p: f64) -> Result<TransitionMatrix> {
    if order == 0 {
        return Err(Error::param("K", "must be at least 1"));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::param("p", "must lie strictly between 0 and 1"));
    }
    let mut data = vec![0.0; order * order];
    for k in 0..order - 1 {
        data[k * order + k] = p;
        data[k * order + k + 1] = 1.0 - p;
    }
    data[order * order - 1] = 1.0;
    Ok(TransitionMatrix { order, data })
}

impl TransitionMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    /// `P_{from,to}` with zero-based state indices.
    #[inline]
    pub fn get(&self, from: usize, to: usize) -> f64 {
        self.data[from * self.order + to]
    }

    pub fn row(&self, from: usize) -> &[f64] {
        &self.data[from * self.order..(from + 1) * self.order]
    }
}

/// Parameters `(K, p, M, σ)` of the mean-switching HMM; `K = means.len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct HmmParams {
    pub p: f64,
    pub means: Vec<f64>,
    pub sigma: f64,
}

impl HmmParams {
    pub fn new(p: f64, means: Vec<f64>, sigma: f64) -> Result<Self> {
        if means.is_empty() {
            return Err(Error::param("M", "need at least one state"));
        }
        if means.iter().any(|m| !m.is_finite()) {
            return Err(Error::param("M", "means must be finite"));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::param("sigma", "must be positive and finite"));
        }
        transition_matrix(means.len(), p)?;
        Ok(Self { p, means, sigma })
    }

    pub fn order(&self) -> usize {
        self.means.len()
    }

    pub fn transitions(&self) -> TransitionMatrix {
        transition_matrix(self.order(), self.p).expect("validated on construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_state_matrix() {
        let m = transition_matrix(2, 0.9).unwrap();
        assert_eq!(m.get(0, 0), 0.9);
        assert!((m.get(0, 1) - 0.1).abs() < 1e-15);
        assert_eq!(m.row(1), &[0.0, 1.0]);
    }

    #[test]
    fn single_state_is_absorbing() {
        for p in [0.1, 0.5, 0.99] {
            assert_eq!(transition_matrix(1, p).unwrap().row(0), &[1.0]);
        }
    }

    #[test]
    fn rows_are_stochastic_and_bidiagonal() {
        let m = transition_matrix(3, 0.5).unwrap();
        for k in 0..3 {
            assert!((m.row(k).iter().sum::<f64>() - 1.0).abs() < 1e-15);
            for j in 0..3 {
                if j != k && j != k + 1 {
                    assert_eq!(m.get(k, j), 0.0);
                }
            }
        }
        assert_eq!(m.get(0, 1), 0.5);
        assert_eq!(m.get(1, 2), 0.5);
        assert_eq!(m.get(2, 2), 1.0);
    }

    #[test]
    fn invalid_arguments() {
        assert!(transition_matrix(0, 0.5).is_err());
        for p in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(transition_matrix(2, p).is_err());
        }
        assert!(HmmParams::new(0.9, vec![], 1.0).is_err());
        assert!(HmmParams::new(0.9, vec![0.0], 0.0).is_err());
        assert!(HmmParams::new(0.9, vec![f64::NAN], 1.0).is_err());
    }
}
