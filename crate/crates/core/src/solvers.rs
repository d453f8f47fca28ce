//! Linear integral, differential and integro-differential equations on one interval.
//!
//! Every solver assembles a dense `N x N` system from the spectral integration matrices
//! and solves it by LU. Schur products `A o [v]` scale column `j` of `A` by `v_j`.

use nalgebra::DMatrix;

use crate::cheb::ChebGrid;
use crate::error::{check_len, Error, Result};
use crate::linalg::{residual_inf, Lu, SINGULAR_THRESHOLD};
use crate::quad::operators;
use crate::singular::{cauchy_weights, log_weights};

/// Kernel sampled on the grid, `k[(i, j)] = k(x_i, x_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelOnGrid {
    pub k: DMatrix<f64>,
}

impl KernelOnGrid {
    pub fn from_fn<F: Fn(f64, f64) -> f64>(grid: &ChebGrid, f: F) -> Self {
        Self {
            k: DMatrix::from_fn(grid.n, grid.n, |i, j| f(grid.x[i], grid.x[j])),
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            k: DMatrix::zeros(n, n),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearSolveReport {
    pub solution: Vec<f64>,
    /// Infinity norm of `A x - b`.
    pub residual: f64,
    pub condition: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Lower,
    Upper,
}

/// `A o [v]`: column `j` scaled by `v[j]`.
pub fn col_scale(a: &DMatrix<f64>, v: &[f64]) -> DMatrix<f64> {
    let mut out = a.clone();
    for (j, &vj) in v.iter().enumerate() {
        out.column_mut(j).scale_mut(vj);
    }
    out
}

/// Elementwise product.
pub fn schur(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.component_mul(b)
}

pub fn solve_system(a: &DMatrix<f64>, b: &[f64]) -> Result<LinearSolveReport> {
    let lu = Lu::new(a)?;
    let condition = lu.condition_estimate();
    if !(condition <= SINGULAR_THRESHOLD) {
        return Err(Error::Singular { condition });
    }
    let solution = lu.solve(b)?;
    let residual = residual_inf(a, &solution, b);
    Ok(LinearSolveReport {
        solution,
        residual,
        condition,
    })
}

/// Like [`solve_system`] but only an exactly singular matrix is an error.
///
/// For problems whose solutions grow by orders of magnitude across the
/// interval the condition estimate is large by construction; callers read it
/// from the report instead.
pub fn solve_system_unguarded(a: &DMatrix<f64>, b: &[f64]) -> Result<LinearSolveReport> {
    let lu = Lu::new(a)?;
    if lu.is_exactly_singular() {
        return Err(Error::Singular {
            condition: f64::INFINITY,
        });
    }
    let condition = lu.condition_estimate();
    let solution = lu.solve(b)?;
    if solution.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular { condition });
    }
    let residual = residual_inf(a, &solution, b);
    Ok(LinearSolveReport {
        solution,
        residual,
        condition,
    })
}

fn identity_minus(m: DMatrix<f64>) -> DMatrix<f64> {
    DMatrix::identity(m.nrows(), m.ncols()) - m
}

fn matvec(a: &DMatrix<f64>, v: &[f64]) -> Vec<f64> {
    (0..a.nrows())
        .map(|i| (0..a.ncols()).map(|j| a[(i, j)] * v[j]).sum())
        .collect()
}

fn need_second_order(grid: &ChebGrid) -> Result<()> {
    if grid.n < 3 {
        return Err(Error::InvalidInput(
            "second-order problems need N >= 3".into(),
        ));
    }
    Ok(())
}

/// `y'' + p y = q` with `y(a)`, `y'(a)`. Returns the solve report and `y'` at the nodes.
pub fn solve_ode_ivp(
    p: &[f64],
    q: &[f64],
    y_a: f64,
    dy_a: f64,
    grid: &ChebGrid,
) -> Result<(LinearSolveReport, Vec<f64>)> {
    need_second_order(grid)?;
    check_len(grid.n, p.len())?;
    check_len(grid.n, q.len())?;
    let ops = operators(grid.n)?;
    let h = grid.half_width();
    let wm = &ops.w_minus;
    let a = DMatrix::identity(grid.n, grid.n) + (wm * col_scale(wm, p)) * (h * h);
    let wwq = matvec(&(wm * wm), q);
    let rhs: Vec<f64> = (0..grid.n)
        .map(|i| y_a + dy_a * (grid.x[i] - grid.a) + h * h * wwq[i])
        .collect();
    let rep = solve_system(&a, &rhs)?;
    let src: Vec<f64> = (0..grid.n).map(|j| q[j] - p[j] * rep.solution[j]).collect();
    let dy = matvec(wm, &src).into_iter().map(|v| dy_a + h * v).collect();
    Ok((rep, dy))
}

/// `y'' + p y = q` with `y(a)` and `y'(b)`.
pub fn solve_ode_mixed(
    p: &[f64],
    q: &[f64],
    y_a: f64,
    dy_b: f64,
    grid: &ChebGrid,
) -> Result<LinearSolveReport> {
    need_second_order(grid)?;
    check_len(grid.n, p.len())?;
    check_len(grid.n, q.len())?;
    let ops = operators(grid.n)?;
    let h = grid.half_width();
    let (wm, wp) = (&ops.w_minus, &ops.w_plus);
    let a = identity_minus((wm * col_scale(wp, p)) * (h * h));
    let wwq = matvec(&(wm * wp), q);
    let rhs: Vec<f64> = (0..grid.n)
        .map(|i| y_a + dy_b * (grid.x[i] - grid.a) - h * h * wwq[i])
        .collect();
    solve_system(&a, &rhs)
}

/// `y(x) = f(x) + lambda integral k(x,s) y(s) ds` over `[a, x]` (lower) or `[x, b]` (upper).
pub fn solve_volterra(
    kernel: &KernelOnGrid,
    f: &[f64],
    lambda: f64,
    direction: Direction,
    grid: &ChebGrid,
) -> Result<LinearSolveReport> {
    check_len(grid.n, f.len())?;
    let ops = operators(grid.n)?;
    let w = match direction {
        Direction::Lower => &ops.w_minus,
        Direction::Upper => &ops.w_plus,
    };
    let a = identity_minus(schur(&kernel.k, w) * (lambda * grid.half_width()));
    solve_system(&a, f)
}

/// Nystrom solve of `y = f + lambda integral_a^b k y`.
pub fn solve_fredholm(
    kernel: &KernelOnGrid,
    f: &[f64],
    lambda: f64,
    grid: &ChebGrid,
) -> Result<LinearSolveReport> {
    check_len(grid.n, f.len())?;
    let ops = operators(grid.n)?;
    let a = identity_minus(col_scale(&kernel.k, &ops.w) * (lambda * grid.half_width()));
    solve_system(&a, f)
}

/// Kernel `k1` on `s <= x` and `k2` on `s >= x`.
pub fn solve_semicontinuous(
    k1: &KernelOnGrid,
    k2: &KernelOnGrid,
    f: &[f64],
    lambda: f64,
    grid: &ChebGrid,
) -> Result<LinearSolveReport> {
    check_len(grid.n, f.len())?;
    let ops = operators(grid.n)?;
    let m = schur(&k1.k, &ops.w_minus) + schur(&k2.k, &ops.w_plus);
    let a = identity_minus(m * (lambda * grid.half_width()));
    solve_system(&a, f)
}

/// `y(x) = f(x) + lambda PV integral k(x,s) y(s) / (s - z) ds`, `a < z < b`.
pub fn solve_cauchy_singular(
    kernel: &KernelOnGrid,
    f: &[f64],
    lambda: f64,
    z: f64,
    grid: &ChebGrid,
) -> Result<LinearSolveReport> {
    check_len(grid.n, f.len())?;
    if !(z > grid.a && z < grid.b) {
        return Err(Error::Domain(format!(
            "singular point {z} must lie strictly inside the interval"
        )));
    }
    let (omega, _) = cauchy_weights(grid.n, grid.to_unit(z))?;
    let a = identity_minus(col_scale(&kernel.k, &omega) * lambda);
    solve_system(&a, f)
}

/// `y(x) = f(x) + lambda integral k(x,s) log|s - z| y(s) ds`, `a <= z <= b`.
pub fn solve_log_singular(
    kernel: &KernelOnGrid,
    f: &[f64],
    lambda: f64,
    z: f64,
    grid: &ChebGrid,
) -> Result<LinearSolveReport> {
    check_len(grid.n, f.len())?;
    if !(z >= grid.a && z <= grid.b) {
        return Err(Error::Domain(format!(
            "singular point {z} outside the interval"
        )));
    }
    let ops = operators(grid.n)?;
    let h = grid.half_width();
    let big_omega = log_weights(grid.n, grid.to_unit(z).clamp(-1.0, 1.0))?;
    let wts: Vec<f64> = (0..grid.n)
        .map(|j| ops.w[j] * h.ln() + big_omega[j])
        .collect();
    let a = identity_minus(col_scale(&kernel.k, &wts) * (lambda * h));
    solve_system(&a, f)
}

/// `y' + p y = q + integral_a^b k(x,s) y(s) ds` with `y(a)` given.
pub fn solve_integrodiff_1(
    p: &[f64],
    q: &[f64],
    kernel: &KernelOnGrid,
    y_a: f64,
    grid: &ChebGrid,
) -> Result<LinearSolveReport> {
    check_len(grid.n, p.len())?;
    check_len(grid.n, q.len())?;
    let ops = operators(grid.n)?;
    let h = grid.half_width();
    let wm = &ops.w_minus;
    let a = DMatrix::identity(grid.n, grid.n) + col_scale(wm, p) * h
        - (wm * col_scale(&kernel.k, &ops.w)) * (h * h);
    let wq = matvec(wm, q);
    let rhs: Vec<f64> = wq.iter().map(|v| y_a + h * v).collect();
    solve_system(&a, &rhs)
}

/// `y'' + p y = integral_a^b k(x,s) y(s) ds` with `y(a)`, `y'(a)`.
pub fn solve_integrodiff_2(
    p: &[f64],
    kernel: &KernelOnGrid,
    y_a: f64,
    dy_a: f64,
    grid: &ChebGrid,
) -> Result<LinearSolveReport> {
    need_second_order(grid)?;
    check_len(grid.n, p.len())?;
    let ops = operators(grid.n)?;
    let h = grid.half_width();
    let wm = &ops.w_minus;
    let a = DMatrix::identity(grid.n, grid.n) + (wm * col_scale(wm, p)) * (h * h)
        - (wm * wm * col_scale(&kernel.k, &ops.w)) * (h * h * h);
    let rhs: Vec<f64> = grid.x.iter().map(|x| y_a + dy_a * (x - grid.a)).collect();
    solve_system(&a, &rhs)
}
