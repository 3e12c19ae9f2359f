// SPDX-License-Identifier: MIT OR Apache-2.0

//! Autoregressive and polynomial-trend segment costs.
//!
//! A window `(s, t)` is fitted by least squares on the regressors
//!
//! * AR(l): `u_τ = [1, x_{τ−1}, …, x_{τ−l}]`, with lags before `x₁` clamped
//!   to `x₁`;
//! * polynomial of degree l: `u_τ = [1, n, n², …, nˡ]`, `n = τ − s + 1`.
//!
//! The exact fits use a Householder QR solve. The cost tables instead run a
//! recursive least-squares (RLS) filter forward from each `s`, giving every
//! `d_{s,t}` for that `s` in one `O(T·l²)` sweep.

use alloc::vec;
use alloc::vec::Vec;

use super::{check_window, precompute_means_cost, CostMatrix, CostModel, WindowFlags};
use crate::linalg::{dot, Design};
use crate::{Error, Result, TimeSeries};

/// Least-squares fit of one window: residual sum of squares and coefficients
/// (intercept first).
#[derive(Debug, Clone, PartialEq)]
pub struct WindowFit {
    pub cost: f64,
    pub coefficients: Vec<f64>,
}

/// Regressor row for observation `tau` (one-based) of a window starting at
/// `s`. `poly_scale` divides the polynomial abscissa.
fn regressors(model: CostModel, x: &[f64], s: usize, tau: usize, poly_scale: f64, out: &mut [f64]) {
    out[0] = 1.0;
    match model {
        CostModel::Means => {}
        CostModel::Ar { order } => {
            for j in 1..=order {
                let idx = if tau > j { tau - j } else { 1 };
                out[j] = x[idx - 1];
            }
        }
        CostModel::Poly { degree } => {
            let n = (tau as f64 - s as f64 + 1.0) / poly_scale;
            for j in 1..=degree {
                out[j] = out[j - 1] * n;
            }
        }
    }
}

/// Fitted value at `tau` for a segment that starts at `s`. For the
/// polynomial model `tau` may lie outside the segment.
pub fn predict(model: CostModel, x: &TimeSeries, s: usize, tau: usize, coefficients: &[f64]) -> f64 {
    let mut u = vec![0.0; model.n_params()];
    regressors(model, x.values(), s, tau, 1.0, &mut u);
    dot(&u, coefficients)
}

/// Least-squares fit of window `(s, t)` under `model`.
///
/// With `ridge == 0` the window must hold more points than coefficients and
/// the design must have full rank. A positive `ridge` adds `ridge·‖a‖²` to
/// the objective, which always has a unique solution.
pub fn fit_window(
    x: &TimeSeries,
    s: usize,
    t: usize,
    model: CostModel,
    ridge: f64,
) -> Result<WindowFit> {
    check_window(x.len(), s, t)?;
    model.validate()?;
    let values = x.values();
    if model == CostModel::Means {
        let stats = crate::series::SegmentStats::of(&values[s - 1..t]);
        return Ok(WindowFit {
            cost: stats.deviation,
            coefficients: vec![stats.mean],
        });
    }
    let n = model.n_params();
    if ridge <= 0.0 && t - s + 1 <= n {
        return Err(Error::UnderDetermined { s, t, params: n });
    }
    let mut design = Design::new(n);
    let mut u = vec![0.0; n];
    for tau in s..=t {
        regressors(model, values, s, tau, 1.0, &mut u);
        design.push(&u, values[tau - 1]);
    }
    let coefficients = design.solve(ridge.max(0.0)).ok_or(Error::Singular { s, t })?;
    let mut cost = 0.0;
    for tau in s..=t {
        regressors(model, values, s, tau, 1.0, &mut u);
        let r = values[tau - 1] - dot(&u, &coefficients);
        cost += r * r;
    }
    Ok(WindowFit { cost, coefficients })
}

/// Exact least-squares AR(`order`) fit of window `(s, t)`.
pub fn ar_cost_exact(x: &TimeSeries, s: usize, t: usize, order: usize) -> Result<WindowFit> {
    fit_window(x, s, t, CostModel::Ar { order }, 0.0)
}

/// Exact least-squares polynomial trend of `degree` on window `(s, t)`.
pub fn poly_cost(x: &TimeSeries, s: usize, t: usize, degree: usize) -> Result<WindowFit> {
    fit_window(x, s, t, CostModel::Poly { degree }, 0.0)
}

/// Recursive least-squares filter seeded with `P₀ = I/δ`, `Â₀ = 0`.
///
/// After each update the coefficients solve the ridge problem
/// `min ‖U a − X‖² + δ‖a‖²` over the rows seen so far. [`Rls::cost`] holds
/// that problem's minimum and [`Rls::rss`] its data-fit part alone.
#[derive(Debug, Clone)]
pub struct Rls {
    p: Vec<f64>,
    coef: Vec<f64>,
    pu: Vec<f64>,
    cost: f64,
    delta: f64,
}

impl Rls {
    pub fn new(dim: usize, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::param("delta", "must be positive and finite"));
        }
        if dim == 0 {
            return Err(Error::param("dim", "must be at least 1"));
        }
        let mut p = vec![0.0; dim * dim];
        for i in 0..dim {
            p[i * dim + i] = 1.0 / delta;
        }
        Ok(Self {
            p,
            coef: vec![0.0; dim],
            pu: vec![0.0; dim],
            cost: 0.0,
            delta,
        })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coef
    }

    pub fn cost(&self) -> f64 {
        self.cost
    }

    /// Residual sum of squares `‖U Â − X‖²` of the current estimate.
    pub fn rss(&self) -> f64 {
        (self.cost - self.delta * dot(&self.coef, &self.coef)).max(0.0)
    }

    /// Absorbs one observation and returns the cost increment
    /// `e²/(1 + u P u′)`, where `e` is the a-priori prediction error.
    pub fn update(&mut self, u: &[f64], y: f64) -> f64 {
        let n = self.coef.len();
        debug_assert_eq!(u.len(), n);
        for i in 0..n {
            self.pu[i] = dot(&self.p[i * n..(i + 1) * n], u);
        }
        let denom = 1.0 + dot(u, &self.pu);
        let err = y - dot(u, &self.coef);
        for i in 0..n {
            self.coef[i] += self.pu[i] * err / denom;
        }
        for i in 0..n {
            for j in i..n {
                let v = self.p[i * n + j] - self.pu[i] * self.pu[j] / denom;
                self.p[i * n + j] = v;
                self.p[j * n + i] = v;
            }
        }
        let inc = err * err / denom;
        self.cost += inc;
        inc
    }
}

fn poly_scale(model: CostModel, len: usize) -> f64 {
    match model {
        CostModel::Poly { .. } => len as f64,
        _ => 1.0,
    }
}

/// Runs the RLS filter from `s` to the end of the series. Entry `i` holds the
/// running cost and coefficient estimate `Â(s, s + i)`.
pub fn rls_path(x: &TimeSeries, s: usize, model: CostModel, delta: f64) -> Result<Vec<WindowFit>> {
    check_window(x.len(), s, x.len())?;
    model.validate()?;
    let n = model.n_params();
    let scale = poly_scale(model, x.len());
    let mut rls = Rls::new(n, delta)?;
    let mut u = vec![0.0; n];
    let mut out = Vec::with_capacity(x.len() - s + 1);
    for tau in s..=x.len() {
        regressors(model, x.values(), s, tau, scale, &mut u);
        rls.update(&u, x.values()[tau - 1]);
        let mut coefficients = rls.coefficients().to_vec();
        let mut f = 1.0;
        for c in coefficients.iter_mut() {
            *c /= f;
            f *= scale;
        }
        out.push(WindowFit {
            cost: rls.rss(),
            coefficients,
        });
    }
    Ok(out)
}

/// Cost table for `model` built by one RLS sweep per start index.
///
/// Windows with no more points than coefficients are pinned to 0 and flagged
/// [`WindowFlags::UNDER_DETERMINED`]; AR windows starting at `s ≤ l` are
/// flagged [`WindowFlags::BOUNDARY`].
pub fn precompute_regression_cost(x: &TimeSeries, model: CostModel, delta: f64) -> Result<CostMatrix> {
    model.validate()?;
    if model == CostModel::Means {
        return Ok(precompute_means_cost(x));
    }
    let len = x.len();
    let n = model.n_params();
    if len <= n {
        return Err(Error::TooShort { needed: n + 1, len });
    }
    let scale = poly_scale(model, len);
    let values = x.values();
    let mut data = vec![0.0; len * (len + 1) / 2];
    let mut flags = vec![WindowFlags::default(); data.len()];
    let mut u = vec![0.0; n];
    for s in 1..=len {
        let mut rls = Rls::new(n, delta)?;
        let boundary = matches!(model, CostModel::Ar { order } if s <= order);
        for t in s..=len {
            regressors(model, values, s, t, scale, &mut u);
            rls.update(&u, values[t - 1]);
            let idx = t * (t - 1) / 2 + (s - 1);
            if boundary {
                flags[idx].insert(WindowFlags::BOUNDARY);
            }
            if t - s + 1 <= n {
                flags[idx].insert(WindowFlags::UNDER_DETERMINED);
            } else {
                data[idx] = rls.rss();
            }
        }
    }
    Ok(CostMatrix::from_parts(len, model, Some(delta), data, flags))
}

/// AR(`order`) cost table via RLS.
pub fn precompute_ar_cost(x: &TimeSeries, order: usize, delta: f64) -> Result<CostMatrix> {
    precompute_regression_cost(x, CostModel::Ar { order }, delta)
}

/// Polynomial-trend cost table via RLS.
pub fn precompute_poly_cost(x: &TimeSeries, degree: usize, delta: f64) -> Result<CostMatrix> {
    precompute_regression_cost(x, CostModel::Poly { degree }, delta)
}
