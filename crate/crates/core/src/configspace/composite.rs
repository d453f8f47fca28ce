//! Composite integration: local regular/irregular pairs on each partition,
//! joined by two-term recurrences for their coefficients.

use nalgebra::DMatrix;

use super::basis::Basis;
use super::volterra::{kernel, sample, solve_scaled, Sampled};
use super::{check_cutoff, BoundState, Diagnostics, ScatteringOutput, SolveConfig, ROOT_RTOL};
use crate::cheb::{interpolate, ChebGrid};
use crate::error::{Error, Result};
use crate::potential::PotentialModel;
use crate::quad::operators;
use crate::roots::brent;
use crate::solvers::schur;

/// Local solutions on `[R_{lambda-1}, R_lambda]` and their coefficients `A_lambda`, `B_lambda`.
///
/// `u` starts as the regular free function at the lower end, `w` ends as
/// the irregular one at the upper end. End values are `(value, r-derivative)`;
/// the lower end of the first partition (the origin) is not evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalPair {
    pub grid: ChebGrid,
    pub u: Vec<f64>,
    pub w: Vec<f64>,
    pub du: Vec<f64>,
    pub dw: Vec<f64>,
    pub u_lo: Option<(f64, f64)>,
    pub w_lo: Option<(f64, f64)>,
    pub u_hi: (f64, f64),
    pub w_hi: (f64, f64),
    pub a: f64,
    pub b: f64,
}

impl LocalPair {
    fn rescale(&mut self, su: f64, sw: f64) {
        let mul = |v: &mut Vec<f64>, c: f64| v.iter_mut().for_each(|x| *x *= c);
        let end = |e: (f64, f64), c: f64| (e.0 * c, e.1 * c);
        mul(&mut self.u, su);
        mul(&mut self.du, su);
        mul(&mut self.w, sw);
        mul(&mut self.dw, sw);
        self.u_lo = self.u_lo.map(|e| end(e, su));
        self.w_lo = self.w_lo.map(|e| end(e, sw));
        self.u_hi = end(self.u_hi, su);
        self.w_hi = end(self.w_hi, sw);
    }

    fn combine(&self, u: (f64, f64), w: (f64, f64)) -> (f64, f64) {
        (self.a * u.0 + self.b * w.0, self.a * u.1 + self.b * w.1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompositeSolution {
    pub basis: Basis,
    pub pieces: Vec<LocalPair>,
    pub output: ScatteringOutput,
}

impl CompositeSolution {
    /// Global wave function `A_lambda u_lambda + B_lambda w_lambda` at `r`.
    pub fn psi(&self, r: f64) -> Result<f64> {
        let piece = self
            .pieces
            .iter()
            .find(|p| r <= p.grid.b)
            .ok_or_else(|| Error::Domain(format!("r = {r} lies beyond the last partition")))?;
        Ok(piece.a * interpolate(&piece.grid, &piece.u, r)?
            + piece.b * interpolate(&piece.grid, &piece.w, r)?)
    }

    /// `w u' - u w'` of every local pair at its partition midpoint.
    pub fn wronskians_at_midpoints(&self) -> Result<Vec<f64>> {
        self.pieces
            .iter()
            .map(|p| {
                let m = 0.5 * (p.grid.a + p.grid.b);
                let at = |v: &[f64]| interpolate(&p.grid, v, m);
                Ok(at(&p.w)? * at(&p.du)? - at(&p.u)? * at(&p.dw)?)
            })
            .collect()
    }
}

fn row_at(basis: &Basis, s: &Sampled, r: f64, derivative: bool) -> Result<Vec<f64>> {
    let e = basis.pair(r)?;
    let (fr, gr) = if derivative { (e.df, e.dg) } else { (e.f, e.g) };
    let k = basis.k();
    Ok((0..s.f.len())
        .map(|j| (fr * s.g[j] - gr * s.f[j]) * s.u[j] / k)
        .collect())
}

fn quad(w: &[f64], row: &[f64], v: &[f64], h: f64) -> f64 {
    h * (0..w.len()).map(|j| w[j] * row[j] * v[j]).sum::<f64>()
}

fn matvec(a: &DMatrix<f64>, v: &[f64]) -> Vec<f64> {
    (0..a.nrows())
        .map(|i| (0..a.ncols()).map(|j| a[(i, j)] * v[j]).sum())
        .collect()
}

fn local_pair(
    model: &PotentialModel,
    basis: &Basis,
    lo: f64,
    hi: f64,
    n: usize,
    diag: &mut Diagnostics,
) -> Result<LocalPair> {
    let grid = ChebGrid::new(n, lo, hi)?;
    let ops = operators(n)?;
    let h = grid.half_width();
    let s = sample(model, basis, &grid)?;
    let k = kernel(&s, basis.k(), false);
    let kd = kernel(&s, basis.k(), true);
    let id = DMatrix::<f64>::identity(n, n);
    let (du_scale, dw_scale): (Vec<f64>, Vec<f64>) = match basis {
        Basis::Bound { kappa, .. } => grid
            .x
            .iter()
            .map(|&x| ((kappa * (x - lo)).exp(), (kappa * (hi - x)).exp()))
            .unzip(),
        Basis::Scattering { .. } => (vec![1.0; n], vec![1.0; n]),
    };
    let ru = solve_scaled(&(&id - schur(&k, &ops.w_minus) * h), &s.f, &du_scale)?;
    let rw = solve_scaled(&(&id + schur(&k, &ops.w_plus) * h), &s.g, &dw_scale)?;
    diag.absorb(ru.condition, ru.residual);
    diag.absorb(rw.condition, rw.residual);
    let (u, w) = (ru.solution, rw.solution);
    let ku = matvec(&(schur(&kd, &ops.w_minus) * h), &u);
    let kw = matvec(&(schur(&kd, &ops.w_plus) * h), &w);
    let du = (0..n).map(|i| s.df[i] + ku[i]).collect();
    let dw = (0..n).map(|i| s.dg[i] - kw[i]).collect();

    let top = basis.pair(hi)?;
    let u_hi = (
        top.f + quad(&ops.w, &row_at(basis, &s, hi, false)?, &u, h),
        top.df + quad(&ops.w, &row_at(basis, &s, hi, true)?, &u, h),
    );
    let (u_lo, w_lo) = if lo > 0.0 {
        let bot = basis.pair(lo)?;
        let w_lo = (
            bot.g - quad(&ops.w, &row_at(basis, &s, lo, false)?, &w, h),
            bot.dg - quad(&ops.w, &row_at(basis, &s, lo, true)?, &w, h),
        );
        (Some((bot.f, bot.df)), Some(w_lo))
    } else {
        (None, None)
    };
    let mut pair = LocalPair {
        grid,
        u,
        w,
        du,
        dw,
        u_lo,
        w_lo,
        u_hi,
        w_hi: (top.g, top.dg),
        a: 1.0,
        b: 0.0,
    };
    if let Basis::Bound { kappa, .. } = basis {
        // keep u and w of order one so that A and B stay representable
        pair.rescale((-kappa * lo).exp(), (kappa * hi).exp());
    }
    Ok(pair)
}

/// Splits partitions so that `kappa` times each width stays within `n / 4`.
pub(crate) fn refined(partitions: &[f64], kappa: f64, n: usize) -> Vec<f64> {
    let limit = n as f64 / 4.0;
    let mut out = vec![partitions[0]];
    for r in partitions.windows(2) {
        let m = (kappa * (r[1] - r[0]) / limit).ceil().max(1.0) as usize;
        out.extend((1..=m).map(|i| r[0] + (r[1] - r[0]) * i as f64 / m as f64));
    }
    out
}

fn assemble(
    model: &PotentialModel,
    basis: &Basis,
    cfg: &SolveConfig,
) -> Result<(Vec<LocalPair>, Diagnostics)> {
    cfg.validate(model)?;
    assemble_on(model, basis, &cfg.partitions, cfg.n)
}

pub(crate) fn assemble_on(
    model: &PotentialModel,
    basis: &Basis,
    partitions: &[f64],
    n: usize,
) -> Result<(Vec<LocalPair>, Diagnostics)> {
    let mut diag = Diagnostics::default();
    let mut pieces = partitions
        .windows(2)
        .map(|r| local_pair(model, basis, r[0], r[1], n, &mut diag))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..pieces.len() - 1 {
        let (left, right) = pieces.split_at_mut(i + 1);
        let (cur, next) = (&left[i], &mut right[0]);
        let (u, du) = cur.u_hi;
        let (w, dw) = cur.w_hi;
        let (u1, du1) = next
            .u_lo
            .expect("interior partitions start away from the origin");
        let (w1, dw1) = next
            .w_lo
            .expect("interior partitions start away from the origin");
        let d = u1 * dw1 - du1 * w1;
        if !(d.abs() > 1e-10 * basis.k()) {
            return Err(Error::Singular {
                condition: f64::INFINITY,
            });
        }
        let (a, b) = ((u * dw1 - du * w1) / d, (w * dw1 - dw * w1) / d);
        let (alpha, beta) = ((du * u1 - u * du1) / d, (dw * u1 - w * du1) / d);
        next.a = a * cur.a + b * cur.b;
        next.b = alpha * cur.a + beta * cur.b;
    }
    Ok((pieces, diag))
}

/// Phase shift from `psi = A_M u_M + B_M w_M` matched at `R`.
pub fn composite_solve(
    model: &PotentialModel,
    p: f64,
    cfg: &SolveConfig,
) -> Result<CompositeSolution> {
    let basis = Basis::scattering(model, cfg.l, p)?;
    let (pieces, mut diag) = assemble(model, &basis, cfg)?;
    let last = pieces.last().expect("at least one partition");
    let (psi, dpsi) = last.combine(last.u_hi, last.w_hi);
    let e = basis.pair(cfg.r_max)?;
    let tan = -(e.f * dpsi - e.df * psi) / (e.g * dpsi - e.dg * psi);
    check_cutoff(model, cfg.r_max, p * p, &mut diag);
    Ok(CompositeSolution {
        basis,
        pieces,
        output: ScatteringOutput::from_tan(tan, diag),
    })
}

/// `psi' h~ - psi h~'` at `R`: the coefficient of `f~` in the regular solution.
pub(crate) fn matched_determinant(
    model: &PotentialModel,
    basis: &Basis,
    partitions: &[f64],
    n: usize,
) -> Result<(f64, Diagnostics)> {
    let (pieces, diag) = assemble_on(model, basis, partitions, n)?;
    let last = pieces.last().expect("at least one partition");
    let (psi, dpsi) = last.combine(last.u_hi, last.w_hi);
    let e = basis.pair(last.grid.b)?;
    let wronskian = e.df * e.g - e.f * e.dg;
    Ok(((dpsi * e.g - psi * e.dg) / wronskian, diag))
}

/// Normalized `psi h~' - psi' h~` at `R`; zero at a bound state.
///
/// Partitions wider than `n / (4 kappa)` are split first.
pub fn composite_bound_condition(
    model: &PotentialModel,
    kappa: f64,
    cfg: &SolveConfig,
) -> Result<f64> {
    cfg.validate(model)?;
    let basis = Basis::bound(model, cfg.l, kappa)?;
    let (pieces, _) = assemble_on(
        model,
        &basis,
        &refined(&cfg.partitions, kappa, cfg.n),
        cfg.n,
    )?;
    let last = pieces.last().expect("at least one partition");
    let (psi, dpsi) = last.combine(last.u_hi, last.w_hi);
    let e = basis.pair(cfg.r_max)?;
    let num = psi * e.dg - dpsi * e.g;
    Ok(num / (psi.hypot(dpsi / kappa) * e.g.hypot(e.dg / kappa)))
}

pub fn composite_bound_state(
    model: &PotentialModel,
    cfg: &SolveConfig,
    bracket: (f64, f64),
) -> Result<BoundState> {
    let kappa = brent(
        |k| composite_bound_condition(model, k, cfg),
        bracket.0,
        bracket.1,
        ROOT_RTOL,
    )?;
    let basis = Basis::bound(model, cfg.l, kappa)?;
    let (_, mut diag) = assemble_on(
        model,
        &basis,
        &refined(&cfg.partitions, kappa, cfg.n),
        cfg.n,
    )?;
    check_cutoff(model, cfg.r_max, kappa * kappa, &mut diag);
    Ok(BoundState::new(model, kappa, diag))
}
