//! Chebyshev polynomials, Gauss-Chebyshev grids and cardinal interpolation.
//!
//! Nodes are the zeros of `T_N`, `t_k = cos(pi (k - 1/2) / N)` for `k = 1..N`,
//! stored in descending order. A grid on `[a, b]` maps them through
//! `x = (a + b)/2 + (b - a) t / 2`.

use std::f64::consts::PI;

use crate::error::{check_len, Error, Result};

/// `T_n(t)` by the three-term recurrence. Valid for any real `t`.
pub fn cheb_t(n: usize, t: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => t,
        _ => {
            let (mut t0, mut t1) = (1.0, t);
            for _ in 1..n {
                let t2 = 2.0 * t * t1 - t0;
                t0 = t1;
                t1 = t2;
            }
            t1
        }
    }
}

/// `U_n(t)`, second kind. `U_{-1}` is taken as zero.
pub fn cheb_u(n: isize, t: f64) -> f64 {
    match n {
        n if n < 0 => 0.0,
        0 => 1.0,
        1 => 2.0 * t,
        _ => {
            let (mut u0, mut u1) = (1.0, 2.0 * t);
            for _ in 1..n {
                let u2 = 2.0 * t * u1 - u0;
                u0 = u1;
                u1 = u2;
            }
            u1
        }
    }
}

/// `T_0(t) .. T_{n-1}(t)` in one pass.
pub fn cheb_t_all(n: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    if n > 0 {
        out.push(1.0);
    }
    if n > 1 {
        out.push(t);
    }
    for k in 2..n {
        let v = 2.0 * t * out[k - 1] - out[k - 2];
        out.push(v);
    }
    out
}

/// Standard node `t_k` for 1-based `k`.
#[inline]
pub fn node(n: usize, k: usize) -> f64 {
    (PI * (k as f64 - 0.5) / n as f64).cos()
}

/// `T_j(t_k)` at node `k` (1-based), evaluated through the cosine form.
#[inline]
pub fn t_at_node(n: usize, j: usize, k: usize) -> f64 {
    (PI * j as f64 * (k as f64 - 0.5) / n as f64).cos()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChebGrid {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub t: Vec<f64>,
    pub x: Vec<f64>,
}

impl ChebGrid {
    pub fn new(n: usize, a: f64, b: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput("grid needs at least one node".into()));
        }
        if !(a.is_finite() && b.is_finite()) || a >= b {
            return Err(Error::InvalidInput(format!("bad interval [{a}, {b}]")));
        }
        let t: Vec<f64> = (1..=n).map(|k| node(n, k)).collect();
        let x = t
            .iter()
            .map(|&tk| 0.5 * (a + b) + 0.5 * (b - a) * tk)
            .collect();
        Ok(Self { n, a, b, t, x })
    }

    #[inline]
    pub fn half_width(&self) -> f64 {
        0.5 * (self.b - self.a)
    }

    #[inline]
    pub fn to_unit(&self, x: f64) -> f64 {
        (2.0 * x - self.a - self.b) / (self.b - self.a)
    }

    #[inline]
    pub fn from_unit(&self, t: f64) -> f64 {
        0.5 * (self.a + self.b) + 0.5 * (self.b - self.a) * t
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.a && x <= self.b
    }
}

/// Expansion coefficients `c_j`, `j = 0..N-1`. The first one enters sums halved.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoeffs {
    pub c: Vec<f64>,
}

impl SpectralCoeffs {
    pub fn from_values(f: &[f64]) -> Result<Self> {
        let n = f.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty sample vector".into()));
        }
        let scale = 2.0 / n as f64;
        let c = (0..n)
            .map(|j| scale * (1..=n).map(|k| t_at_node(n, j, k) * f[k - 1]).sum::<f64>())
            .collect();
        Ok(Self { c })
    }

    /// Clenshaw summation of `sum' c_j T_j(t)`.
    pub fn eval(&self, t: f64) -> f64 {
        let (mut b1, mut b2) = (0.0, 0.0);
        for &cj in self.c.iter().skip(1).rev() {
            let b0 = 2.0 * t * b1 - b2 + cj;
            b2 = b1;
            b1 = b0;
        }
        t * b1 - b2 + 0.5 * self.c[0]
    }
}

/// Cardinal function `G_j(t)`, 0-based `j`. Equals `delta_jk` at node `t_k`.
pub fn cardinal(n: usize, j: usize, t: f64) -> f64 {
    let tt = cheb_t_all(n, t);
    cardinal_from_t(n, j, &tt)
}

fn cardinal_from_t(n: usize, j: usize, tt: &[f64]) -> f64 {
    let mut s = 0.5 * tt[0];
    for (i, &ti) in tt.iter().enumerate().skip(1) {
        s += t_at_node(n, i, j + 1) * ti;
    }
    2.0 * s / n as f64
}

/// All `G_j(t)` for `j = 0..N-1`.
pub fn cardinal_row(n: usize, t: f64) -> Vec<f64> {
    let tt = cheb_t_all(n, t);
    (0..n).map(|j| cardinal_from_t(n, j, &tt)).collect()
}

pub fn interpolate(grid: &ChebGrid, f: &[f64], x: f64) -> Result<f64> {
    check_len(grid.n, f.len())?;
    let c = SpectralCoeffs::from_values(f)?;
    Ok(c.eval(grid.to_unit(x)))
}

/// Same as [`interpolate`] but reports whether `x` fell outside the grid interval.
pub fn interpolate_flagged(grid: &ChebGrid, f: &[f64], x: f64) -> Result<(f64, bool)> {
    Ok((interpolate(grid, f, x)?, !grid.contains(x)))
}

/// Tensor-product interpolation; `f[j * ny + k]` holds the value at `(x_j, y_k)`.
pub fn interpolate_2d(gx: &ChebGrid, gy: &ChebGrid, f: &[f64], x: f64, y: f64) -> Result<f64> {
    check_len(gx.n * gy.n, f.len())?;
    let rx = cardinal_row(gx.n, gx.to_unit(x));
    let ry = cardinal_row(gy.n, gy.to_unit(y));
    let mut s = 0.0;
    for (j, &gxj) in rx.iter().enumerate() {
        let row = &f[j * gy.n..(j + 1) * gy.n];
        s += gxj * row.iter().zip(&ry).map(|(v, g)| v * g).sum::<f64>();
    }
    Ok(s)
}

/// Differentiation matrix on the grid, `f'(x_i) ~ sum_j D_ij f_j`.
pub fn diff_matrix(grid: &ChebGrid) -> nalgebra::DMatrix<f64> {
    let n = grid.n;
    let scale = 2.0 / n as f64 * 2.0 / (grid.b - grid.a);
    nalgebra::DMatrix::from_fn(n, n, |i, j| {
        let ti = grid.t[i];
        let mut s = 0.0;
        for k in 1..n {
            s += k as f64 * cheb_u(k as isize - 1, ti) * t_at_node(n, k, j + 1);
        }
        scale * s
    })
}
