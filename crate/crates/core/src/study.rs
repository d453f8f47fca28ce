//! Convergence studies, parameter sweeps and benchmark tables.
//!
//! Every table is computed in parallel and returned in input order.

use std::str::FromStr;

use rayon::prelude::*;

use crate::analytic::{exact_bound_states, exact_phase, exact_scattering_length};
use crate::configspace::{
    bound_states, phase_shift, principal_phase, scattering_length, Method, SolveConfig,
};
use crate::error::{Error, Result};
use crate::momentum::{
    hydrogen_bound_states, kmatrix_solve, momentum_bound_states, scattering_length_momentum,
    MomentumMesh, BOUND_SIGMA, DEFAULT_SIGMA,
};
use crate::potential::{PotentialKind, PotentialModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Schrodinger,
    /// Volterra equation for scattering, Fredholm determinant for bound states.
    Volterra,
    Momentum,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Schrodinger, Route::Volterra, Route::Momentum];

    pub fn name(self) -> &'static str {
        match self {
            Route::Schrodinger => "schrodinger",
            Route::Volterra => "volterra",
            Route::Momentum => "momentum",
        }
    }

    /// `all` expands to every route.
    pub fn parse_list(s: &str) -> Result<Vec<Route>> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(Self::ALL.to_vec());
        }
        s.split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse())
            .collect()
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "schrodinger" | "schrod" => Ok(Route::Schrodinger),
            "volterra" | "fredholm" => Ok(Route::Volterra),
            "momentum" => Ok(Route::Momentum),
            other => Err(Error::InvalidInput(format!("unknown method '{other}'"))),
        }
    }
}

/// Cutoff and mesh parameter shared by a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Setup {
    pub l: usize,
    pub r_max: f64,
    /// Momentum-mesh `sigma`; `None` picks the scattering or bound-state default.
    pub sigma: Option<f64>,
}

impl Setup {
    /// `l = 0`, `R = 30 a`.
    pub fn for_model(model: &PotentialModel) -> Self {
        Self {
            l: 0,
            r_max: 30.0 * model.a,
            sigma: None,
        }
    }

    fn config(&self, route: Route, n: usize) -> Result<SolveConfig> {
        let method = match route {
            Route::Schrodinger => Method::Schrodinger,
            _ => Method::Volterra,
        };
        Ok(SolveConfig::new(self.l, n, self.r_max)?.with_method(method))
    }

    fn scattering_mesh(&self, n: usize) -> Result<MomentumMesh> {
        MomentumMesh::new(n, self.sigma.unwrap_or(DEFAULT_SIGMA))
    }

    fn bound_mesh(&self, n: usize) -> Result<MomentumMesh> {
        MomentumMesh::new(n, self.sigma.unwrap_or(BOUND_SIGMA))
    }
}

/// `count` equidistant points from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![min],
        _ => (0..count)
            .map(|i| min + (max - min) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

/// `xi_i = 2 i / 100`, `i = 1..100`.
pub fn default_momenta() -> Vec<f64> {
    (1..=100).map(|i| 0.02 * i as f64).collect()
}

/// `s_i = i s_max / 100` with `s_max` = 2.5, 1.1, 0.3 for exponential, Hulthen, Morse.
pub fn default_strengths(kind: PotentialKind) -> Vec<f64> {
    let s_max = match kind {
        PotentialKind::Exponential => 2.5,
        PotentialKind::Hulthen => 1.1,
        _ => 0.3,
    };
    (1..=100).map(|i| s_max * i as f64 / 100.0).collect()
}

/// `tan delta` at `xi = p a`.
pub fn tan_delta(
    model: &PotentialModel,
    route: Route,
    n: usize,
    xi: f64,
    setup: &Setup,
) -> Result<f64> {
    let p = xi / model.a;
    match route {
        Route::Momentum => {
            Ok(kmatrix_solve(model, setup.l, p, &setup.scattering_mesh(n)?)?.tan_delta)
        }
        _ => Ok(phase_shift(model, p, &setup.config(route, n)?)?.tan_delta),
    }
}

pub fn scattering_length_by(
    model: &PotentialModel,
    route: Route,
    n: usize,
    setup: &Setup,
) -> Result<f64> {
    match route {
        Route::Momentum => Ok(scattering_length_momentum(model, &setup.scattering_mesh(n)?)?.value),
        _ => Ok(scattering_length(model, &setup.config(route, n)?)?.value),
    }
}

/// Phase error `|delta - delta_N| / |delta|`, with the difference taken branch-free from the tangents.
pub fn relative_phase_error(exact: f64, tan_n: f64) -> f64 {
    let t = exact.tan();
    ((tan_n - t) / (1.0 + tan_n * t)).atan().abs() / exact.abs()
}

/// Mean relative phase error over `xis`.
pub fn phase_error(
    model: &PotentialModel,
    route: Route,
    n: usize,
    xis: &[f64],
    setup: &Setup,
) -> Result<f64> {
    let errs = xis
        .par_iter()
        .map(|&xi| {
            let exact = exact_phase(model, setup.l, xi)?.delta;
            Ok(relative_phase_error(
                exact,
                tan_delta(model, route, n, xi, setup)?,
            ))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(mean(&errs))
}

/// Mean relative scattering-length error over `strengths`, skipping points where the exact `|A| > 1e6 a`.
pub fn length_error(
    model: &PotentialModel,
    route: Route,
    n: usize,
    strengths: &[f64],
    setup: &Setup,
) -> Result<f64> {
    let errs = strengths
        .par_iter()
        .map(|&s| {
            let m = model.with_strength(s);
            let exact = exact_scattering_length(&m)?;
            if exact.near_pole {
                return Ok(None);
            }
            let a = scattering_length_by(&m, route, n, setup)?;
            Ok(Some((a - exact.value).abs() / exact.value.abs()))
        })
        .collect::<Result<Vec<Option<f64>>>>()?;
    Ok(mean(&errs.into_iter().flatten().collect::<Vec<_>>()))
}

fn mean(v: &[f64]) -> f64 {
    if v.is_empty() {
        f64::NAN
    } else {
        v.iter().sum::<f64>() / v.len() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Phase,
    Length,
}

impl FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "phase" => Ok(Quantity::Phase),
            "length" | "alen" => Ok(Quantity::Length),
            other => Err(Error::InvalidInput(format!("unknown quantity '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    /// One entry per route, in the order requested.
    pub errors: Vec<f64>,
}

/// `E(N)` for every `N` and route; `sweep` holds momenta or strengths.
pub fn convergence(
    model: &PotentialModel,
    routes: &[Route],
    ns: &[usize],
    quantity: Quantity,
    sweep: &[f64],
    setup: &Setup,
) -> Result<Vec<ConvergenceRow>> {
    ns.par_iter()
        .map(|&n| {
            let errors = routes
                .iter()
                .map(|&r| match quantity {
                    Quantity::Phase => phase_error(model, r, n, sweep, setup),
                    Quantity::Length => length_error(model, r, n, sweep, setup),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ConvergenceRow { n, errors })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// `xi` or `s`.
    pub x: f64,
    /// Closed-form value when one exists.
    pub exact: Option<f64>,
    pub values: Vec<f64>,
}

/// Phase shifts `delta` in `(-pi/2, pi/2]` along `xis`.
pub fn phase_sweep(
    model: &PotentialModel,
    routes: &[Route],
    n: usize,
    xis: &[f64],
    setup: &Setup,
) -> Result<Vec<SweepRow>> {
    xis.par_iter()
        .map(|&xi| {
            let exact = exact_phase(model, setup.l, xi)
                .ok()
                .map(|e| principal_phase(e.tan_delta));
            let values = routes
                .iter()
                .map(|&r| tan_delta(model, r, n, xi, setup).map(principal_phase))
                .collect::<Result<Vec<_>>>()?;
            Ok(SweepRow {
                x: xi,
                exact,
                values,
            })
        })
        .collect()
}

/// Scattering lengths along `strengths`.
pub fn length_sweep(
    model: &PotentialModel,
    routes: &[Route],
    n: usize,
    strengths: &[f64],
    setup: &Setup,
) -> Result<Vec<SweepRow>> {
    strengths
        .par_iter()
        .map(|&s| {
            let m = model.with_strength(s);
            let exact = exact_scattering_length(&m).ok().map(|e| e.value);
            let values = routes
                .iter()
                .map(|&r| scattering_length_by(&m, r, n, setup))
                .collect::<Result<Vec<_>>>()?;
            Ok(SweepRow {
                x: s,
                exact,
                values,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    pub route: Route,
    /// 0 for the deepest state.
    pub index: usize,
    pub x: f64,
    pub exact: Option<f64>,
    pub relative_error: Option<f64>,
}

/// Every bound state `x = kappa a` found by each route, paired with the closed-form roots.
pub fn bound_table(
    model: &PotentialModel,
    routes: &[Route],
    n: usize,
    setup: &Setup,
) -> Result<Vec<BoundRow>> {
    let exact = exact_bound_states(model, setup.l, 16).ok();
    let a = model.a;
    let kappa_max = (model.s.abs().sqrt() + 2.0) / a;
    let kappa_min = 1e-4 / a;
    let per_route = routes
        .par_iter()
        .map(|&route| {
            let xs = match route {
                Route::Momentum => momentum_bound_states(
                    model,
                    setup.l,
                    &setup.bound_mesh(n)?,
                    kappa_min,
                    kappa_max,
                    120,
                )?
                .into_iter()
                .map(|k| k * a)
                .collect::<Vec<_>>(),
                _ => bound_states(model, &setup.config(route, n)?, kappa_min, kappa_max, 120)?
                    .into_iter()
                    .map(|b| b.x)
                    .collect(),
            };
            Ok(xs
                .into_iter()
                .enumerate()
                .map(|(index, x)| {
                    let e = exact.as_ref().and_then(|v| v.get(index).copied());
                    BoundRow {
                        route,
                        index,
                        x,
                        exact: e,
                        relative_error: e.map(|e| (x - e).abs() / e),
                    }
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_route.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct HydrogenRow {
    /// Radial quantum number.
    pub n: usize,
    pub l: usize,
    pub x: f64,
    /// `Z / (n + l + 1)`.
    pub exact: f64,
    pub relative_error: f64,
}

/// Hydrogen-like levels with `x >= x_min` for `l = 0..=l_max`.
pub fn hydrogen_table(
    charge: f64,
    l_max: usize,
    x_min: f64,
    n: usize,
    sigma: f64,
) -> Result<Vec<HydrogenRow>> {
    let mesh = MomentumMesh::new(n, sigma)?;
    let rows = (0..=l_max)
        .into_par_iter()
        .map(|l| {
            let xs = hydrogen_bound_states(l, charge, &mesh, x_min, 1.2 * charge, 80)?;
            Ok(xs
                .into_iter()
                .enumerate()
                .map(|(nr, x)| {
                    let exact = charge / (nr + l + 1) as f64;
                    HydrogenRow {
                        n: nr,
                        l,
                        x,
                        exact,
                        relative_error: (x - exact).abs() / exact,
                    }
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// Runs `f` on a pool of `jobs` threads; 0 uses the global pool.
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}
