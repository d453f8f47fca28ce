//! Volterra form of the Lippmann-Schwinger equation on `[0, R]`.

use nalgebra::DMatrix;

use super::basis::Basis;
use super::composite::{matched_determinant, refined};
use super::{
    check_cutoff, BoundState, Diagnostics, ScatteringLength, ScatteringOutput, SolveConfig,
    ROOT_RTOL,
};
use crate::cheb::ChebGrid;
use crate::error::{Error, Result};
use crate::potential::PotentialModel;
use crate::quad::operators;
use crate::roots::brent;
use crate::solvers::{schur, solve_system_unguarded, LinearSolveReport};
use crate::special::zero_energy_coulomb;

/// Basis functions and the short-range potential at the nodes of one interval.
pub(crate) struct Sampled {
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub df: Vec<f64>,
    pub dg: Vec<f64>,
    pub u: Vec<f64>,
}

pub(crate) fn sample(model: &PotentialModel, basis: &Basis, grid: &ChebGrid) -> Result<Sampled> {
    let n = grid.n;
    let mut s = Sampled {
        f: Vec::with_capacity(n),
        g: Vec::with_capacity(n),
        df: Vec::with_capacity(n),
        dg: Vec::with_capacity(n),
        u: Vec::with_capacity(n),
    };
    for &x in &grid.x {
        let p = basis.pair(x)?;
        s.f.push(p.f);
        s.g.push(p.g);
        s.df.push(p.df);
        s.dg.push(p.dg);
        s.u.push(model.short_u(x));
    }
    Ok(s)
}

/// `(1/k)(f_i g_j - g_i f_j) u_j`, or with `f', g'` in the row index.
pub(crate) fn kernel(s: &Sampled, k: f64, derivative: bool) -> DMatrix<f64> {
    let (fi, gi) = if derivative {
        (&s.df, &s.dg)
    } else {
        (&s.f, &s.g)
    };
    let n = s.f.len();
    DMatrix::from_fn(n, n, |i, j| (fi[i] * s.g[j] - gi[i] * s.f[j]) * s.u[j] / k)
}

/// Solves `A x = b` through `D^{-1} A D y = D^{-1} b`, `x = D y`.
pub(crate) fn solve_scaled(a: &DMatrix<f64>, b: &[f64], d: &[f64]) -> Result<LinearSolveReport> {
    let n = b.len();
    let scaled = DMatrix::from_fn(n, n, |i, j| a[(i, j)] * d[j] / d[i]);
    let rhs: Vec<f64> = b.iter().zip(d).map(|(v, di)| v / di).collect();
    let mut rep = solve_system_unguarded(&scaled, &rhs)?;
    for (y, di) in rep.solution.iter_mut().zip(d) {
        *y *= di;
    }
    Ok(rep)
}

fn weighted_sum(w: &[f64], a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    (0..w.len()).map(|j| w[j] * a[j] * b[j] * c[j]).sum()
}

/// `tan delta = -C (1/p) integral f u_s u`, `1/C = 1 + (1/p) integral g u_s u`.
pub fn volterra_phase_shift(
    model: &PotentialModel,
    p: f64,
    cfg: &SolveConfig,
) -> Result<ScatteringOutput> {
    cfg.validate(model)?;
    let basis = Basis::scattering(model, cfg.l, p)?;
    let grid = ChebGrid::new(cfg.n, 0.0, cfg.r_max)?;
    let ops = operators(cfg.n)?;
    let h = grid.half_width();
    let s = sample(model, &basis, &grid)?;
    let k = kernel(&s, p, false);
    let a = DMatrix::identity(cfg.n, cfg.n) - schur(&k, &ops.w_minus) * h;
    let rep = solve_system_unguarded(&a, &s.f)?;
    let u = &rep.solution;
    let inv_c = 1.0 + h / p * weighted_sum(&ops.w, &s.g, &s.u, u);
    let num = h / p * weighted_sum(&ops.w, &s.f, &s.u, u);
    let mut diag = Diagnostics::default();
    diag.absorb(rep.condition, rep.residual);
    if inv_c.abs() < 1e-12 {
        diag.warnings
            .push(format!("1/C = {inv_c:.3e}: resonance condition"));
    }
    check_cutoff(model, cfg.r_max, p * p, &mut diag);
    Ok(ScatteringOutput::from_tan(-num / inv_c, diag))
}

/// Coulomb-corrected scattering length; the plain one when there is no charge.
pub fn volterra_scattering_length(
    model: &PotentialModel,
    cfg: &SolveConfig,
) -> Result<ScatteringLength> {
    cfg.validate(model)?;
    if cfg.l != 0 {
        return Err(Error::InvalidInput(
            "the scattering length is defined for l = 0".into(),
        ));
    }
    let grid = ChebGrid::new(cfg.n, 0.0, cfg.r_max)?;
    let ops = operators(cfg.n)?;
    let h = grid.half_width();
    let zeta = model.coulomb_zeta();
    let sign = if zeta > 0.0 {
        1
    } else if zeta < 0.0 {
        -1
    } else {
        0
    };
    let mut phi0 = Vec::with_capacity(cfg.n);
    let mut theta0 = Vec::with_capacity(cfg.n);
    for &x in &grid.x {
        let (a, b, _, _) = zero_energy_coulomb(0, 2.0 * zeta.abs(), x, sign)?;
        phi0.push(a);
        theta0.push(b);
    }
    let u: Vec<f64> = grid.x.iter().map(|&x| model.short_u(x)).collect();
    let k = DMatrix::from_fn(cfg.n, cfg.n, |i, j| {
        (phi0[i] * theta0[j] - theta0[i] * phi0[j]) * u[j]
    });
    let a = DMatrix::identity(cfg.n, cfg.n) - schur(&k, &ops.w_minus) * h;
    let rep = solve_system_unguarded(&a, &phi0)?;
    let phi = &rep.solution;
    let num = -h * weighted_sum(&ops.w, &phi0, &u, phi);
    let den = 1.0 + h * weighted_sum(&ops.w, &theta0, &u, phi);
    let mut diag = Diagnostics::default();
    diag.absorb(rep.condition, rep.residual);
    check_cutoff(model, cfg.r_max, 0.0, &mut diag);
    Ok(ScatteringLength::new(num, den, model.a, diag))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Determinant {
    pub value: f64,
    pub diagnostics: Diagnostics,
}

/// `Delta(kappa) = 1 + (1/kappa) integral h~ u_s u~`; its zeros are bound states.
///
/// When `kappa R` exceeds `n / 4` the growing solution is not resolved on one
/// interval; `[0, R]` is then split and `Delta` read off as the coefficient of
/// `f~` in the matched regular solution at `R`.
pub fn fredholm_determinant(
    model: &PotentialModel,
    kappa: f64,
    cfg: &SolveConfig,
) -> Result<Determinant> {
    cfg.validate(model)?;
    let basis = Basis::bound(model, cfg.l, kappa)?;
    let parts = refined(&[0.0, cfg.r_max], kappa, cfg.n);
    if parts.len() > 2 {
        let (value, diagnostics) = matched_determinant(model, &basis, &parts, cfg.n)?;
        return Ok(Determinant { value, diagnostics });
    }
    let grid = ChebGrid::new(cfg.n, 0.0, cfg.r_max)?;
    let ops = operators(cfg.n)?;
    let h = grid.half_width();
    let s = sample(model, &basis, &grid)?;
    let k = kernel(&s, kappa, false);
    let a = DMatrix::identity(cfg.n, cfg.n) - schur(&k, &ops.w_minus) * h;
    // u~ grows like exp(kappa r); balance rows against columns
    let d: Vec<f64> = grid.x.iter().map(|&x| (kappa * x).exp()).collect();
    let rep = solve_scaled(&a, &s.f, &d)?;
    let value = 1.0 + h / kappa * weighted_sum(&ops.w, &s.g, &s.u, &rep.solution);
    let mut diagnostics = Diagnostics::default();
    diagnostics.absorb(rep.condition, rep.residual);
    Ok(Determinant { value, diagnostics })
}

pub fn bound_state_from_determinant(
    model: &PotentialModel,
    cfg: &SolveConfig,
    bracket: (f64, f64),
) -> Result<BoundState> {
    let kappa = brent(
        |k| fredholm_determinant(model, k, cfg).map(|d| d.value),
        bracket.0,
        bracket.1,
        ROOT_RTOL,
    )?;
    let mut diag = fredholm_determinant(model, kappa, cfg)?.diagnostics;
    check_cutoff(model, cfg.r_max, kappa * kappa, &mut diag);
    Ok(BoundState::new(model, kappa, diag))
}
