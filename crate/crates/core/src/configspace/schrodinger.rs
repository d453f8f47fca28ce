//! The first-order system for `phi = psi / r^{l+1}` and `chi = phi'` on `[0, R]`.

use nalgebra::DMatrix;

use super::basis::Basis;
use super::composite::refined;
use super::{
    check_cutoff, BoundState, Diagnostics, ScatteringLength, ScatteringOutput, SolveConfig,
    ROOT_RTOL,
};
use crate::cheb::{interpolate, ChebGrid};
use crate::error::{Error, Result};
use crate::potential::PotentialModel;
use crate::quad::operators;
use crate::roots::brent;
use crate::solvers::solve_system_unguarded;
use crate::special::{coulomb_h_logderiv, coulomb_h_tilde, modified_riccati, zero_energy_coulomb};

struct Endpoint {
    phi: f64,
    chi: f64,
    diag: Diagnostics,
}

// e = p^2 for scattering, -kappa^2 for bound states
fn solve_block(model: &PotentialModel, l: usize, e: f64, n: usize, r: f64) -> Result<Endpoint> {
    solve_span(model, l, e, n, (0.0, r), (1.0, model.c_constant(l)))
}

// initial-value solve on [lo, hi] from (phi, chi)(lo); lo = 0 takes the regular start (1, c)
fn solve_span(
    model: &PotentialModel,
    l: usize,
    e: f64,
    n: usize,
    (lo, hi): (f64, f64),
    (phi0, chi0): (f64, f64),
) -> Result<Endpoint> {
    let grid = ChebGrid::new(n, lo, hi)?;
    let ops = operators(n)?;
    let h = grid.half_width();
    let pv: Vec<f64> = grid.x.iter().map(|&x| e - model.total_u(x)).collect();
    let qv: Vec<f64> = grid.x.iter().map(|&x| 2.0 * (l as f64 + 1.0) / x).collect();
    let wm = &ops.w_minus;
    let mut a = DMatrix::<f64>::identity(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let w = h * wm[(i, j)];
            a[(i, n + j)] = -w;
            a[(n + i, j)] = w * pv[j];
            a[(n + i, n + j)] += w * qv[j];
        }
    }
    let rhs: Vec<f64> = (0..2 * n)
        .map(|i| if i < n { phi0 } else { chi0 })
        .collect();
    let rep = solve_system_unguarded(&a, &rhs)?;
    let (phi_n, chi_n) = rep.solution.split_at(n);
    let mut diag = Diagnostics::default();
    diag.absorb(rep.condition, rep.residual);
    Ok(Endpoint {
        phi: interpolate(&grid, phi_n, hi)?,
        chi: interpolate(&grid, chi_n, hi)?,
        diag,
    })
}

// chained blocks no wider than N / (4 kappa), renormalized after each
fn solve_bound(model: &PotentialModel, l: usize, kappa: f64, n: usize, r: f64) -> Result<Endpoint> {
    let parts = refined(&[0.0, r], kappa, n);
    let e = -kappa * kappa;
    let mut end = solve_block(model, l, e, n, parts[1])?;
    for w in parts[1..].windows(2) {
        let scale = end.phi.abs().max(end.chi.abs());
        let next = solve_span(
            model,
            l,
            e,
            n,
            (w[0], w[1]),
            (end.phi / scale, end.chi / scale),
        )?;
        let mut diag = end.diag;
        diag.absorb(next.diag.condition, next.diag.residual);
        end = Endpoint { diag, ..next };
    }
    Ok(end)
}

/// `tan delta` from the logarithmic derivative of `phi` at `R`.
pub fn schrod_phase_shift(
    model: &PotentialModel,
    p: f64,
    cfg: &SolveConfig,
) -> Result<ScatteringOutput> {
    cfg.validate(model)?;
    let basis = Basis::scattering(model, cfg.l, p)?;
    let r = cfg.r_max;
    let end = solve_block(model, cfg.l, p * p, cfg.n, r)?;
    let log_d = (cfg.l as f64 + 1.0) / r + end.chi / end.phi;
    let fg = basis.pair(r)?;
    let tan = -(fg.f * log_d - fg.df) / (fg.g * log_d - fg.dg);
    let mut diag = end.diag;
    check_cutoff(model, r, p * p, &mut diag);
    Ok(ScatteringOutput::from_tan(tan, diag))
}

/// S-wave scattering length from the zero-energy solve.
pub fn schrod_scattering_length(
    model: &PotentialModel,
    cfg: &SolveConfig,
) -> Result<ScatteringLength> {
    cfg.validate(model)?;
    if cfg.l != 0 {
        return Err(Error::InvalidInput(
            "the scattering length is defined for l = 0".into(),
        ));
    }
    let r = cfg.r_max;
    let end = solve_block(model, 0, 0.0, cfg.n, r)?;
    // scaled by phi(R) so that numerator and denominator stay finite through nodes of phi
    let (phi, r_chi) = (end.phi, r * end.chi);
    let mut diag = end.diag;
    check_cutoff(model, r, 0.0, &mut diag);
    let zeta = model.coulomb_zeta();
    if zeta == 0.0 {
        return Ok(ScatteringLength::new(
            -r * r_chi,
            phi + r_chi,
            model.a,
            diag,
        ));
    }
    let sign = if zeta > 0.0 { 1 } else { -1 };
    let (phi0, theta0, dphi0, dtheta0) = zero_energy_coulomb(0, 2.0 * zeta.abs(), r, sign)?;
    let num = -(r * dphi0 * phi - (phi + r_chi) * phi0);
    let den = r * dtheta0 * phi - (phi + r_chi) * theta0;
    Ok(ScatteringLength::new(num, den, model.a, diag))
}

// decaying solution h~ and dh~/dx at x = kappa r
fn decaying(l: usize, eta: f64, x: f64) -> Result<(f64, f64)> {
    if eta == 0.0 {
        let m = modified_riccati(l, x)?;
        Ok((m.g, m.dg))
    } else {
        let h = coulomb_h_tilde(l, eta, x)?;
        Ok((h, h * coulomb_h_logderiv(l, eta, x)?))
    }
}

/// Normalized matching function; zero when the solution decays beyond `R`.
///
/// Above `kappa R = N / 4` the system is integrated block by block, as one interval
/// cannot resolve the growth `e^{kappa r}`.
///
/// `phi [(l+1) h~ - kappa R h~'] + R chi h~`, divided by the norms of
/// `(phi, R chi)` and `(h~, kappa R h~')` so that it stays in `[-1, 1]`.
pub fn schrod_bound_condition(
    model: &PotentialModel,
    kappa: f64,
    cfg: &SolveConfig,
) -> Result<f64> {
    cfg.validate(model)?;
    if !(kappa > 0.0) {
        return Err(Error::Domain(format!(
            "kappa must be positive, got {kappa}"
        )));
    }
    let r = cfg.r_max;
    let end = solve_bound(model, cfg.l, kappa, cfg.n, r)?;
    let x = kappa * r;
    let (h, dh) = decaying(cfg.l, model.coulomb_zeta() / kappa, x)?;
    let lp1 = cfg.l as f64 + 1.0;
    let num = end.phi * (lp1 * h - x * dh) + r * end.chi * h;
    let norm = end.phi.hypot(r * end.chi) * h.hypot(x * dh);
    Ok(num / norm)
}

pub fn schrod_bound_state(
    model: &PotentialModel,
    cfg: &SolveConfig,
    bracket: (f64, f64),
) -> Result<BoundState> {
    let kappa = brent(
        |k| schrod_bound_condition(model, k, cfg),
        bracket.0,
        bracket.1,
        ROOT_RTOL,
    )?;
    let mut diag = solve_bound(model, cfg.l, kappa, cfg.n, cfg.r_max)?.diag;
    check_cutoff(model, cfg.r_max, kappa * kappa, &mut diag);
    Ok(BoundState::new(model, kappa, diag))
}
