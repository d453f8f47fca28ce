//! Momentum-space scattering and bound states on rationally mapped Chebyshev meshes.
//!
//! Momenta are `k = scale (1 + t) / (1 - t)`, with `scale = p sigma` for
//! scattering at on-shell momentum `p` and `scale = sigma / a` for bound states.
//! The on-shell point `k = p` sits at `t = tau = (1 - sigma) / (1 + sigma)`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::analytic::exact_momentum_potential;
use crate::cheb::cardinal_row;
use crate::configspace::{Diagnostics, ScatteringLength};
use crate::error::{Error, Result};
use crate::linalg::{Lu, SINGULAR_THRESHOLD};
use crate::potential::{PotentialKind, PotentialModel};
use crate::quad::{operators, weights};
use crate::roots::{brent, log_grid, sign_changes};
use crate::singular::{cauchy_weights, log_weights};
use crate::special::legendre::legendre_pq;
use crate::special::riccati_free;

pub const DEFAULT_SIGMA: f64 = 1.0;
/// Bound-state mesh parameter; spreads more nodes over large momenta than the scattering default.
pub const BOUND_SIGMA: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub struct MomentumMesh {
    pub n: usize,
    pub sigma: f64,
    pub t: Vec<f64>,
    /// Weights of `integral_{-1}^{1} f dt`.
    pub w: Vec<f64>,
    pub tau: f64,
}

impl MomentumMesh {
    pub fn new(n: usize, sigma: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!(
                "N must be at least 2, got {n}"
            )));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "sigma must be positive, got {sigma}"
            )));
        }
        let ops = operators(n)?;
        Ok(Self {
            n,
            sigma,
            t: ops.t.clone(),
            w: weights(n),
            tau: (1.0 - sigma) / (1.0 + sigma),
        })
    }

    pub fn momenta(&self, scale: f64) -> Vec<f64> {
        self.t
            .iter()
            .map(|&t| scale * (1.0 + t) / (1.0 - t))
            .collect()
    }

    pub fn scattering_momenta(&self, p: f64) -> Vec<f64> {
        self.momenta(p * self.sigma)
    }

    pub fn bound_momenta(&self, a: f64) -> Vec<f64> {
        self.momenta(self.sigma / a)
    }
}

fn short_range_only(model: &PotentialModel) -> Result<()> {
    if model.kind == PotentialKind::CoulombPoint || model.has_coulomb() {
        return Err(Error::InvalidInput(
            "momentum-space scattering covers short-range potentials; use hydrogen_bound_states for the point charge".into(),
        ));
    }
    Ok(())
}

/// `U_l(k, k') = integral j_l(k r) u(r) j_l(k' r) r^2 dr`.
///
/// Closed forms for `l = 0` and for the point charge; otherwise [`numeric_projection`].
pub fn potential_projection(model: &PotentialModel, l: usize, k: f64, kp: f64) -> Result<f64> {
    if l == 0 || model.kind == PotentialKind::CoulombPoint {
        exact_momentum_potential(model, l, k, kp)
    } else {
        numeric_projection(model, l, k, kp)
    }
}

/// Radial quadrature of the projection on panels no wider than `a` or a quarter wave.
pub fn numeric_projection(model: &PotentialModel, l: usize, k: f64, kp: f64) -> Result<f64> {
    if !(k > 0.0 && kp > 0.0) {
        return Err(Error::Domain(format!(
            "momenta must be positive, got {k}, {kp}"
        )));
    }
    short_range_only(model)?;
    let a = model.a;
    let r_cut = model.d.max(0.0) + 60.0 * a;
    let width = a.min(0.5 * PI / (k + kp));
    let panels = (r_cut / width).ceil() as usize;
    let h = r_cut / panels as f64;
    const M: usize = 24;
    let ops = operators(M)?;
    let w = weights(M);
    let mut sum = 0.0;
    for p in 0..panels {
        let lo = p as f64 * h;
        for (t, wj) in ops.t.iter().zip(&w) {
            let r = lo + 0.5 * h * (t + 1.0);
            let f1 = riccati_free(l, k * r)?.f;
            let f2 = riccati_free(l, kp * r)?.f;
            sum += 0.5 * h * wj * f1 * f2 * model.short_u(r);
        }
    }
    Ok(sum / (k * kp))
}

fn projection_matrix(model: &PotentialModel, l: usize, k: &[f64]) -> Result<DMatrix<f64>> {
    let n = k.len();
    let mut u = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = potential_projection(model, l, k[i], k[j])?;
            u[(i, j)] = v;
            u[(j, i)] = v;
        }
    }
    Ok(u)
}

/// Off-shell K-matrix on the mesh with its half-shell and on-shell values.
#[derive(Debug, Clone, PartialEq)]
pub struct KMatrixGrid {
    pub p: f64,
    pub momenta: Vec<f64>,
    /// `K_ij = <k_i|K|k_j>`.
    pub k: DMatrix<f64>,
    /// `<k_j|K|p>`.
    pub half_shell: Vec<f64>,
    pub on_shell: f64,
    pub tan_delta: f64,
    pub diagnostics: Diagnostics,
}

/// Solves `(1 + U Gamma) K = U` with the diagonal principal-value `Gamma(p)`.
pub fn kmatrix_solve(
    model: &PotentialModel,
    l: usize,
    p: f64,
    mesh: &MomentumMesh,
) -> Result<KMatrixGrid> {
    if !(p > 0.0) {
        return Err(Error::Domain(format!("p must be positive, got {p}")));
    }
    short_range_only(model)?;
    let n = mesh.n;
    let sigma = mesh.sigma;
    let tau = mesh.tau;
    let momenta = mesh.scattering_momenta(p);
    let u = projection_matrix(model, l, &momenta)?;
    let (omega, _) = cauchy_weights(n, tau)?;
    let pre = 4.0 * p * sigma.powi(3) / (PI * (1.0 + sigma).powi(2));
    let gamma: Vec<f64> = (0..n)
        .map(|i| {
            let t = mesh.t[i];
            pre * omega[i] / (1.0 - t * tau) * ((1.0 + t) / (1.0 - t)).powi(2)
        })
        .collect();
    let a = DMatrix::identity(n, n) + DMatrix::from_fn(n, n, |i, j| u[(i, j)] * gamma[j]);
    let lu = Lu::new(&a)?;
    let condition = lu.condition_estimate();
    if lu.is_exactly_singular() || !(condition <= SINGULAR_THRESHOLD) {
        return Err(Error::Singular { condition });
    }
    let k = lu.solve_matrix(&u)?;
    let u_p = momenta
        .iter()
        .map(|&ki| potential_projection(model, l, ki, p))
        .collect::<Result<Vec<_>>>()?;
    let half_shell = lu.solve(&u_p)?;
    let g_tau = cardinal_row(n, tau);
    let on_shell: f64 = g_tau.iter().zip(&half_shell).map(|(g, v)| g * v).sum();
    let mut diagnostics = Diagnostics::default();
    diagnostics.absorb(condition, 0.0);
    Ok(KMatrixGrid {
        p,
        momenta,
        k,
        half_shell,
        on_shell,
        tan_delta: -p * on_shell,
        diagnostics,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TMatrix {
    /// `<p|T|p> = -exp(i delta) sin(delta) / p`.
    pub on_shell: Complex64,
    /// `<k_j|T|p>`.
    pub half_shell: Vec<Complex64>,
    pub delta: f64,
    /// `|Im(1/t) + 1|` for `t = -p <p|T|p>`.
    pub unitarity_residual: f64,
}

/// Outgoing-wave T-matrix from the K-matrix through the off-shell unitarity relation.
pub fn tmatrix_from_k(kg: &KMatrixGrid) -> Result<TMatrix> {
    let i = Complex64::i();
    let den = Complex64::new(1.0, 0.0) + i * kg.p * kg.on_shell;
    if den.norm() < 1e-14 {
        return Err(Error::Singular {
            condition: f64::INFINITY,
        });
    }
    let on_shell = kg.on_shell - i * kg.p * kg.on_shell * kg.on_shell / den;
    let half_shell = kg
        .half_shell
        .iter()
        .map(|&v| v - i * kg.p * v * kg.on_shell / den)
        .collect();
    let t = -kg.p * on_shell;
    let unitarity_residual = if t.norm() == 0.0 {
        0.0
    } else {
        ((1.0 / t).im + 1.0).abs()
    };
    Ok(TMatrix {
        on_shell,
        half_shell,
        delta: kg.tan_delta.atan(),
        unitarity_residual,
    })
}

/// Diagonal `Gamma_jj(kappa^2) = (4 sigma / pi a) w_j k_j^2 / ((1 - t_j)^2 (k_j^2 + kappa^2))`.
pub fn bound_gamma(a: f64, kappa: f64, mesh: &MomentumMesh) -> Result<Vec<f64>> {
    if !(kappa > 0.0) {
        return Err(Error::Domain(format!(
            "kappa must be positive, got {kappa}"
        )));
    }
    let pre = 4.0 * mesh.sigma / (PI * a);
    Ok(mesh
        .bound_momenta(a)
        .iter()
        .zip(mesh.t.iter().zip(&mesh.w))
        .map(|(&k, (&t, &w))| pre * w / (1.0 - t).powi(2) * k * k / (k * k + kappa * kappa))
        .collect())
}

/// Symmetric `M(kappa^2) = -Gamma^{1/2} U Gamma^{1/2}` on the bound-state mesh.
pub fn bound_matrix(
    model: &PotentialModel,
    l: usize,
    kappa: f64,
    mesh: &MomentumMesh,
) -> Result<DMatrix<f64>> {
    short_range_only(model)?;
    let s: Vec<f64> = bound_gamma(model.a, kappa, mesh)?
        .iter()
        .map(|g| g.sqrt())
        .collect();
    let u = projection_matrix(model, l, &mesh.bound_momenta(model.a))?;
    Ok(DMatrix::from_fn(mesh.n, mesh.n, |i, j| {
        -s[i] * u[(i, j)] * s[j]
    }))
}

/// Eigenvalues of `M(kappa^2)`, largest first; a bound state has one of them equal to 1.
pub fn bound_state_eigen(
    model: &PotentialModel,
    l: usize,
    kappa: f64,
    mesh: &MomentumMesh,
) -> Result<Vec<f64>> {
    let m = bound_matrix(model, l, kappa, mesh)?;
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::NoConvergence("symmetric eigensolver".into()))?;
    let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    Ok(ev)
}

/// `det(1 - M(kappa^2))`.
pub fn secular_determinant(
    model: &PotentialModel,
    l: usize,
    kappa: f64,
    mesh: &MomentumMesh,
) -> Result<f64> {
    let m = bound_matrix(model, l, kappa, mesh)?;
    Ok(Lu::new(&(DMatrix::identity(mesh.n, mesh.n) - m))?.determinant())
}

/// `kappa` where the `index`-th largest eigenvalue of `M` equals 1.
pub fn momentum_bound_state(
    model: &PotentialModel,
    l: usize,
    mesh: &MomentumMesh,
    index: usize,
    bracket: (f64, f64),
) -> Result<f64> {
    let f = |kappa: f64| -> Result<f64> {
        let ev = bound_state_eigen(model, l, kappa, mesh)?;
        ev.get(index)
            .map(|v| v - 1.0)
            .ok_or_else(|| Error::InvalidInput(format!("no eigenvalue {index}")))
    };
    brent(f, bracket.0, bracket.1, 1e-13)
}

/// All bound states with `kappa` in `[kappa_min, kappa_max]`, deepest first.
pub fn momentum_bound_states(
    model: &PotentialModel,
    l: usize,
    mesh: &MomentumMesh,
    kappa_min: f64,
    kappa_max: f64,
    scan: usize,
) -> Result<Vec<f64>> {
    // eigenvalues fall with kappa, so the m-th state belongs to the m-th eigenvalue
    let count = bound_state_eigen(model, l, kappa_min, mesh)?
        .iter()
        .filter(|&&v| v > 1.0)
        .count();
    let xs = log_grid(kappa_min, kappa_max, scan);
    let mut out = Vec::with_capacity(count);
    for index in 0..count {
        let f = |kappa: f64| bound_state_eigen(model, l, kappa, mesh).map(|ev| ev[index] - 1.0);
        if let Some(&br) = sign_changes(f, &xs)?.first() {
            out.push(momentum_bound_state(model, l, mesh, index, br)?);
        }
    }
    Ok(out)
}

/// Hydrogen-like matrix in `xi = k a_B` with the logarithm of `|xi' - xi|` on dedicated weights.
///
/// `M_ij = Z (4 sigma / pi) [w_j (P_l log|1 - t_i t_j| - W_{l-1}) - P_l Omega_j(t_i)]
///        / [(1 - t_j)^2 sqrt((xi_i^2 + x^2)(xi_j^2 + x^2))]` with `P_l`, `W_{l-1}` at
/// `z_ij = (xi_i^2 + xi_j^2) / (2 xi_i xi_j)`.
pub fn hydrogen_matrix(l: usize, x: f64, charge: f64, mesh: &MomentumMesh) -> Result<DMatrix<f64>> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    let n = mesh.n;
    let xi = mesh.momenta(mesh.sigma);
    let omega = mesh
        .t
        .iter()
        .map(|&ti| log_weights(n, ti))
        .collect::<Result<Vec<_>>>()?;
    let pre = charge * 4.0 * mesh.sigma / PI;
    let root: Vec<f64> = xi.iter().map(|v| (v * v + x * x).sqrt()).collect();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let z = (xi[i] * xi[i] + xi[j] * xi[j]) / (2.0 * xi[i] * xi[j]);
            let (p, w) = if i == j {
                (1.0, legendre_w_at_one(l))
            } else {
                let pq = legendre_pq(l, z)?;
                (pq.p, pq.w)
            };
            let (ti, tj) = (mesh.t[i], mesh.t[j]);
            let num = mesh.w[j] * (p * (1.0 - ti * tj).abs().ln() - w) - p * omega[i][j];
            m[(i, j)] = pre * num / ((1.0 - tj).powi(2) * root[i] * root[j]);
        }
    }
    Ok(m)
}

// W_{l-1}(1) = sum_{n=1}^{l} 1/n
fn legendre_w_at_one(l: usize) -> f64 {
    (1..=l).map(|n| 1.0 / n as f64).sum()
}

/// `det(1 - M(x^2))` for the hydrogen-like problem.
pub fn hydrogen_determinant(l: usize, x: f64, charge: f64, mesh: &MomentumMesh) -> Result<f64> {
    let m = hydrogen_matrix(l, x, charge, mesh)?;
    Ok(Lu::new(&(DMatrix::identity(mesh.n, mesh.n) - m))?.determinant())
}

/// Roots `x = kappa a_B` of the secular determinant in `[x_min, x_max]`, deepest first.
pub fn hydrogen_bound_states(
    l: usize,
    charge: f64,
    mesh: &MomentumMesh,
    x_min: f64,
    x_max: f64,
    scan: usize,
) -> Result<Vec<f64>> {
    if l > 3 {
        return Err(Error::InvalidInput(format!(
            "hydrogen states are supported for l <= 3, got {l}"
        )));
    }
    let f = |x: f64| hydrogen_determinant(l, x, charge, mesh);
    let xs = log_grid(x_min, x_max, scan);
    let brackets = sign_changes(f, &xs)?;
    if brackets.is_empty() {
        return Err(Error::NoBracket(format!(
            "no hydrogen state for l = {l} in [{x_min}, {x_max}]"
        )));
    }
    let mut out = brackets
        .into_iter()
        .map(|(lo, hi)| brent(f, lo, hi, 1e-14))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

/// S-wave scattering length `A = -[G(-1)] . [X]`, `(1 + U Gamma(0)) X = U G(-1)`.
pub fn scattering_length_momentum(
    model: &PotentialModel,
    mesh: &MomentumMesh,
) -> Result<ScatteringLength> {
    short_range_only(model)?;
    let n = mesh.n;
    let momenta = mesh.bound_momenta(model.a);
    let u = projection_matrix(model, 0, &momenta)?;
    let pre = 4.0 * mesh.sigma / (PI * model.a);
    let gamma: Vec<f64> = (0..n)
        .map(|j| pre * mesh.w[j] / (1.0 - mesh.t[j]).powi(2))
        .collect();
    let a = DMatrix::identity(n, n) + DMatrix::from_fn(n, n, |i, j| u[(i, j)] * gamma[j]);
    let g = cardinal_row(n, -1.0);
    // U(k_i, 0) directly, as U(k_i, p) is on the half shell
    let rhs = momenta
        .iter()
        .map(|&k| exact_momentum_potential(model, 0, k, 0.0))
        .collect::<Result<Vec<_>>>()?;
    let lu = Lu::new(&a)?;
    let condition = lu.condition_estimate();
    let denominator = lu.determinant();
    let x = lu.solve(&rhs)?;
    let value = -g.iter().zip(&x).map(|(gi, xi)| gi * xi).sum::<f64>();
    let mut diagnostics = Diagnostics::default();
    diagnostics.absorb(condition, 0.0);
    let near_pole = !(condition <= SINGULAR_THRESHOLD)
        || !(value.abs() <= crate::analytic::POLE_THRESHOLD * model.a);
    Ok(ScatteringLength {
        value,
        denominator,
        near_pole,
        diagnostics,
    })
}
