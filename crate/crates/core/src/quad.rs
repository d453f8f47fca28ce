//! Quadrature weights and the spectral antiderivative matrices `W-`, `W+`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::DMatrix;

use crate::cheb::{node, t_at_node, ChebGrid};
use crate::error::{check_len, Error, Result};

/// Weights `w_j` for `integral_{-1}^{1} f dt ~ sum_j w_j f(t_j)`; exact for degree `<= N-1`.
pub fn weights(n: usize) -> Vec<f64> {
    let m = (n - 1) / 2;
    (1..=n)
        .map(|j| {
            let mut s = 0.5;
            for i in 1..=m {
                s -= t_at_node(n, 2 * i, j) / (4.0 * (i * i) as f64 - 1.0);
            }
            4.0 / n as f64 * s
        })
        .collect()
}

/// `integral_{-1}^{1} f(t) / sqrt(1 - t^2) dt ~ (pi/N) sum f(t_k)`.
pub fn gauss_chebyshev_weighted(f: &[f64]) -> f64 {
    PI / f.len() as f64 * f.iter().sum::<f64>()
}

// integral_{-1}^{t} T_{k-1} and integral_{t}^{1} T_{k-1}, k >= 1, at t = cos(theta).
fn s_minus(k: usize, theta: f64) -> f64 {
    let t = theta.cos();
    match k {
        1 => t + 1.0,
        2 => ((2.0 * theta).cos() - 1.0) / 4.0,
        _ => {
            let kf = k as f64;
            let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
            (kf * theta).cos() / (2.0 * kf) - ((kf - 2.0) * theta).cos() / (2.0 * (kf - 2.0))
                + sign / (kf * (kf - 2.0))
        }
    }
}

fn s_plus(k: usize, theta: f64) -> f64 {
    let t = theta.cos();
    match k {
        1 => 1.0 - t,
        2 => -((2.0 * theta).cos() - 1.0) / 4.0,
        _ => {
            let kf = k as f64;
            -(kf * theta).cos() / (2.0 * kf) + ((kf - 2.0) * theta).cos() / (2.0 * (kf - 2.0))
                - 1.0 / (kf * (kf - 2.0))
        }
    }
}

fn antideriv(n: usize, s: fn(usize, f64) -> f64) -> DMatrix<f64> {
    let nf = n as f64;
    let theta: Vec<f64> = (1..=n).map(|i| PI * (i as f64 - 0.5) / nf).collect();
    let sik = DMatrix::from_fn(n, n, |i, k| s(k + 1, theta[i]));
    let tkj = DMatrix::from_fn(n, n, |k, j| {
        let c = if k == 0 { 1.0 / nf } else { 2.0 / nf };
        c * t_at_node(n, k, j + 1)
    });
    sik * tkj
}

/// `W-`: `integral_{-1}^{t_i} f ~ sum_j W-_ij f_j`.
pub fn w_minus(n: usize) -> DMatrix<f64> {
    antideriv(n, s_minus)
}

/// `W+`: `integral_{t_i}^{1} f ~ sum_j W+_ij f_j`.
pub fn w_plus(n: usize) -> DMatrix<f64> {
    antideriv(n, s_plus)
}

/// Read-only operator bundle for one `N` on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct SpectralOperators {
    pub n: usize,
    pub t: Vec<f64>,
    pub w: Vec<f64>,
    pub w_minus: DMatrix<f64>,
    pub w_plus: DMatrix<f64>,
    /// `M_jk = T_{j}(t_k)`, 0-based `j`.
    pub m: DMatrix<f64>,
}

impl SpectralOperators {
    pub fn build(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput("N must be positive".into()));
        }
        Ok(Self {
            n,
            t: (1..=n).map(|k| node(n, k)).collect(),
            w: weights(n),
            w_minus: w_minus(n),
            w_plus: w_plus(n),
            m: DMatrix::from_fn(n, n, |j, k| t_at_node(n, j, k + 1)),
        })
    }
}

fn cache() -> &'static RwLock<HashMap<usize, Arc<SpectralOperators>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<SpectralOperators>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Shared operators for `N`, built once and reused by every caller.
pub fn operators(n: usize) -> Result<Arc<SpectralOperators>> {
    if let Some(op) = cache().read().expect("operator cache poisoned").get(&n) {
        return Ok(op.clone());
    }
    let built = Arc::new(SpectralOperators::build(n)?);
    let mut guard = cache().write().expect("operator cache poisoned");
    Ok(guard.entry(n).or_insert(built).clone())
}

pub fn integrate(grid: &ChebGrid, f: &[f64]) -> Result<f64> {
    check_len(grid.n, f.len())?;
    let ops = operators(grid.n)?;
    Ok(grid.half_width() * ops.w.iter().zip(f).map(|(w, v)| w * v).sum::<f64>())
}

/// Values of `integral_a^{x_i} f` at every node.
pub fn cumulative_lower(grid: &ChebGrid, f: &[f64]) -> Result<Vec<f64>> {
    check_len(grid.n, f.len())?;
    let ops = operators(grid.n)?;
    let h = grid.half_width();
    Ok((0..grid.n)
        .map(|i| h * (0..grid.n).map(|j| ops.w_minus[(i, j)] * f[j]).sum::<f64>())
        .collect())
}

/// Values of `integral_{x_i}^b f` at every node.
pub fn cumulative_upper(grid: &ChebGrid, f: &[f64]) -> Result<Vec<f64>> {
    check_len(grid.n, f.len())?;
    let ops = operators(grid.n)?;
    let h = grid.half_width();
    Ok((0..grid.n)
        .map(|i| h * (0..grid.n).map(|j| ops.w_plus[(i, j)] * f[j]).sum::<f64>())
        .collect())
}

/// `r = scale (1 + t) / (1 - t)`, taking `[-1, 1)` onto `[0, inf)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalMap {
    pub scale: f64,
}

impl RationalMap {
    pub fn new(scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "map scale must be positive, got {scale}"
            )));
        }
        Ok(Self { scale })
    }

    #[inline]
    pub fn r(&self, t: f64) -> f64 {
        self.scale * (1.0 + t) / (1.0 - t)
    }

    #[inline]
    pub fn dr_dt(&self, t: f64) -> f64 {
        2.0 * self.scale / ((1.0 - t) * (1.0 - t))
    }

    #[inline]
    pub fn t(&self, r: f64) -> f64 {
        (r - self.scale) / (r + self.scale)
    }

    /// `integral_0^inf g(r) dr` on `N` mapped nodes.
    pub fn integrate<F: Fn(f64) -> f64>(&self, n: usize, g: F) -> Result<f64> {
        let ops = operators(n)?;
        Ok(ops
            .t
            .iter()
            .zip(&ops.w)
            .map(|(&t, &w)| w * self.dr_dt(t) * g(self.r(t)))
            .sum())
    }
}
