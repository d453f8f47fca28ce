//! Configuration-space scattering and bound states.
//!
//! Three routes share one configuration type:
//!
//! * the first-order Schrödinger system for `phi = psi / r^{l+1}` and `chi = phi'`;
//! * the Volterra form of the Lippmann-Schwinger equation, with the Fredholm
//!   determinant for bound states;
//! * composite partitions of `[0, R]` joined through regular/irregular local pairs.
//!
//! All potentials enter as `u(r) = 2 mu V(r)`. Scattering lengths follow
//! `A = lim_{p->0} delta / p`, so weak attraction gives `A > 0`.

mod basis;
mod composite;
mod schrodinger;
mod volterra;

use std::f64::consts::PI;
use std::str::FromStr;

use crate::analytic::POLE_THRESHOLD;
use crate::error::{Error, Result};
use crate::linalg::SINGULAR_THRESHOLD;
use crate::potential::PotentialModel;
use crate::roots::{brent, log_grid, sign_changes};

pub use basis::Basis;
pub use composite::{
    composite_bound_condition, composite_bound_state, composite_solve, CompositeSolution, LocalPair,
};
pub use schrodinger::{
    schrod_bound_condition, schrod_bound_state, schrod_phase_shift, schrod_scattering_length,
};
pub use volterra::{
    bound_state_from_determinant, fredholm_determinant, volterra_phase_shift,
    volterra_scattering_length,
};

/// `|u(R)| / p^2` above which the cutoff is reported as too small.
pub const ASYMPTOTIC_TOLERANCE: f64 = 1e-8;
/// Relative tolerance of every bound-state root search.
pub const ROOT_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Schrodinger,
    Volterra,
    Composite,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "schrodinger" | "schrod" | "ode" => Ok(Self::Schrodinger),
            "volterra" | "ls" => Ok(Self::Volterra),
            "composite" => Ok(Self::Composite),
            other => Err(Error::InvalidInput(format!("unknown method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub l: usize,
    pub n: usize,
    pub r_max: f64,
    /// Breakpoints `0 = R_0 < R_1 < ... < R_M = r_max`.
    pub partitions: Vec<f64>,
    pub method: Method,
    /// Re-solve with `2N` and with `1.5 R` and report the spread.
    pub check_convergence: bool,
    /// Smallest accepted `r_max / a`.
    pub min_cutoff_ranges: f64,
}

impl SolveConfig {
    pub fn new(l: usize, n: usize, r_max: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!(
                "N must be at least 2, got {n}"
            )));
        }
        if !(r_max > 0.0 && r_max.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "cutoff radius must be positive, got {r_max}"
            )));
        }
        Ok(Self {
            l,
            n,
            r_max,
            partitions: vec![0.0, r_max],
            method: Method::Volterra,
            check_convergence: false,
            min_cutoff_ranges: 10.0,
        })
    }

    /// `N = 64`, `R = 30 a`.
    pub fn for_model(model: &PotentialModel, l: usize) -> Self {
        Self::new(l, 64, 30.0 * model.a).expect("default configuration is valid")
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_convergence_check(mut self, on: bool) -> Self {
        self.check_convergence = on;
        self
    }

    /// Replaces the breakpoints; the list must run from 0 to `r_max`.
    pub fn with_partitions(mut self, radii: Vec<f64>) -> Result<Self> {
        let ok = radii.len() >= 2
            && radii[0] == 0.0
            && (radii[radii.len() - 1] - self.r_max).abs() <= 1e-12 * self.r_max
            && radii.windows(2).all(|w| w[1] > w[0]);
        if !ok {
            return Err(Error::InvalidInput(format!(
                "partitions must increase strictly from 0 to {}, got {radii:?}",
                self.r_max
            )));
        }
        self.partitions = radii;
        Ok(self)
    }

    pub fn with_equal_partitions(self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput(
                "at least one partition is needed".into(),
            ));
        }
        let r = self.r_max;
        let radii = (0..=m).map(|k| r * k as f64 / m as f64).collect();
        self.with_partitions(radii)
    }

    pub fn partition_count(&self) -> usize {
        self.partitions.len() - 1
    }

    /// Same layout with `r_max` (and every breakpoint) scaled by `factor`.
    pub fn stretched(&self, factor: f64) -> Self {
        Self {
            r_max: self.r_max * factor,
            partitions: self.partitions.iter().map(|r| r * factor).collect(),
            ..self.clone()
        }
    }

    pub(crate) fn validate(&self, model: &PotentialModel) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidInput(format!(
                "N must be at least 2, got {}",
                self.n
            )));
        }
        if self.r_max < self.min_cutoff_ranges * model.a * (1.0 - 1e-12) {
            return Err(Error::InvalidInput(format!(
                "cutoff R = {} is below {} potential ranges",
                self.r_max, self.min_cutoff_ranges
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceReport {
    /// Change of the reported quantity when `N` doubles.
    pub doubled_n: f64,
    /// Change when the cutoff grows by half.
    pub extended_r: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    /// Largest condition estimate among the linear solves.
    pub condition: f64,
    /// Largest infinity-norm residual.
    pub residual: f64,
    pub warnings: Vec<String>,
    pub convergence: Option<ConvergenceReport>,
}

impl Diagnostics {
    pub(crate) fn absorb(&mut self, condition: f64, residual: f64) {
        if condition > SINGULAR_THRESHOLD && !(self.condition > SINGULAR_THRESHOLD) {
            self.warnings.push(format!(
                "ill-conditioned linear system (estimate {condition:.2e})"
            ));
        }
        self.condition = self.condition.max(condition);
        self.residual = self.residual.max(residual);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringOutput {
    pub tan_delta: f64,
    /// `atan(tan_delta)`, in `(-pi/2, pi/2]`.
    pub delta: f64,
    pub scattering_length: Option<f64>,
    pub bound_kappa: Option<f64>,
    pub diagnostics: Diagnostics,
}

impl ScatteringOutput {
    pub(crate) fn from_tan(tan_delta: f64, diagnostics: Diagnostics) -> Self {
        Self {
            tan_delta,
            delta: principal_phase(tan_delta),
            scattering_length: None,
            bound_kappa: None,
            diagnostics,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringLength {
    pub value: f64,
    /// Denominator whose zero marks the pole (`1 + L` or `1 + integral Theta u phi`).
    pub denominator: f64,
    pub near_pole: bool,
    pub diagnostics: Diagnostics,
}

impl ScatteringLength {
    pub(crate) fn new(numerator: f64, denominator: f64, a: f64, diagnostics: Diagnostics) -> Self {
        let value = numerator / denominator;
        Self {
            value,
            denominator,
            near_pole: !(value.abs() <= POLE_THRESHOLD * a),
            diagnostics,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundState {
    pub kappa: f64,
    /// `kappa a`.
    pub x: f64,
    /// `-kappa^2 / (2 mu)`.
    pub energy: f64,
    pub diagnostics: Diagnostics,
}

impl BoundState {
    pub(crate) fn new(model: &PotentialModel, kappa: f64, diagnostics: Diagnostics) -> Self {
        Self {
            kappa,
            x: kappa * model.a,
            energy: -model.energy(kappa * kappa),
            diagnostics,
        }
    }
}

pub fn principal_phase(tan_delta: f64) -> f64 {
    let d = tan_delta.atan();
    if d == -PI / 2.0 {
        PI / 2.0
    } else {
        d
    }
}

/// Adds multiples of `pi` so that consecutive phases never jump by more than `pi/2`.
pub fn unwrap_phases(deltas: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(deltas.len());
    let mut shift = 0.0;
    for (i, &d) in deltas.iter().enumerate() {
        if i > 0 {
            let prev = out[i - 1];
            while d + shift - prev > PI / 2.0 {
                shift -= PI;
            }
            while d + shift - prev < -PI / 2.0 {
                shift += PI;
            }
        }
        out.push(d + shift);
    }
    out
}

pub(crate) fn check_cutoff(model: &PotentialModel, r: f64, k2: f64, diag: &mut Diagnostics) {
    let u = model.short_u(r).abs();
    let ratio = if k2 > 0.0 { u / k2 } else { u * r * r };
    if ratio > ASYMPTOTIC_TOLERANCE {
        diag.warnings.push(format!(
            "potential not negligible at R = {r}: |u(R)|/k^2 = {ratio:.2e}"
        ));
    }
}

fn spread(base: f64, other: f64) -> f64 {
    (base - other).abs()
}

/// Phase shift by the configured method, with the optional convergence check.
pub fn phase_shift(model: &PotentialModel, p: f64, cfg: &SolveConfig) -> Result<ScatteringOutput> {
    let run = |c: &SolveConfig| match c.method {
        Method::Schrodinger => schrod_phase_shift(model, p, c),
        Method::Volterra if c.partition_count() == 1 => volterra_phase_shift(model, p, c),
        _ => composite_solve(model, p, c).map(|s| s.output),
    };
    let mut out = run(cfg)?;
    if cfg.check_convergence {
        let fine = run(&SolveConfig {
            n: 2 * cfg.n,
            check_convergence: false,
            ..cfg.clone()
        })?;
        let far = run(&cfg.stretched(1.5))?;
        out.diagnostics.convergence = Some(ConvergenceReport {
            doubled_n: spread(out.tan_delta, fine.tan_delta),
            extended_r: spread(out.tan_delta, far.tan_delta),
        });
    }
    Ok(out)
}

/// S-wave scattering length by the configured method.
pub fn scattering_length(model: &PotentialModel, cfg: &SolveConfig) -> Result<ScatteringLength> {
    let run = |c: &SolveConfig| match c.method {
        Method::Schrodinger => schrod_scattering_length(model, c),
        _ => volterra_scattering_length(model, c),
    };
    let mut out = run(cfg)?;
    if cfg.check_convergence {
        let fine = run(&SolveConfig {
            n: 2 * cfg.n,
            check_convergence: false,
            ..cfg.clone()
        })?;
        let far = run(&cfg.stretched(1.5))?;
        out.diagnostics.convergence = Some(ConvergenceReport {
            doubled_n: spread(out.value, fine.value),
            extended_r: spread(out.value, far.value),
        });
    }
    Ok(out)
}

/// Signed bound-state condition of the configured method at `kappa`.
pub fn bound_condition(model: &PotentialModel, kappa: f64, cfg: &SolveConfig) -> Result<f64> {
    match cfg.method {
        Method::Schrodinger => schrod_bound_condition(model, kappa, cfg),
        Method::Volterra if cfg.partition_count() == 1 => {
            fredholm_determinant(model, kappa, cfg).map(|d| d.value)
        }
        _ => composite_bound_condition(model, kappa, cfg),
    }
}

/// Bound state inside `bracket = (kappa_lo, kappa_hi)` by the configured method.
pub fn bound_state(
    model: &PotentialModel,
    cfg: &SolveConfig,
    bracket: (f64, f64),
) -> Result<BoundState> {
    let run = |c: &SolveConfig, br: (f64, f64)| -> Result<BoundState> {
        let kappa = brent(|k| bound_condition(model, k, c), br.0, br.1, ROOT_RTOL)?;
        let mut diag = Diagnostics::default();
        check_cutoff(model, c.r_max, kappa * kappa, &mut diag);
        Ok(BoundState::new(model, kappa, diag))
    };
    let mut out = run(cfg, bracket)?;
    if cfg.check_convergence {
        let near = (out.kappa * 0.9, out.kappa * 1.1);
        let fine = run(
            &SolveConfig {
                n: 2 * cfg.n,
                check_convergence: false,
                ..cfg.clone()
            },
            near,
        );
        let far = run(&cfg.stretched(1.5), near);
        if let (Ok(fine), Ok(far)) = (fine, far) {
            out.diagnostics.convergence = Some(ConvergenceReport {
                doubled_n: spread(out.kappa, fine.kappa),
                extended_r: spread(out.kappa, far.kappa),
            });
        } else {
            out.diagnostics
                .warnings
                .push("convergence re-solve lost the root".into());
        }
    }
    Ok(out)
}

/// Every bound state with `kappa` in `[kappa_min, kappa_max]`, deepest first.
///
/// Sign changes are searched on `scan` log-spaced points.
pub fn bound_states(
    model: &PotentialModel,
    cfg: &SolveConfig,
    kappa_min: f64,
    kappa_max: f64,
    scan: usize,
) -> Result<Vec<BoundState>> {
    let xs = log_grid(kappa_min, kappa_max, scan);
    let brackets = sign_changes(|k| bound_condition(model, k, cfg), &xs)?;
    // every condition is normalized and continuous in kappa, so each flip is a root
    let mut found = brackets
        .into_iter()
        .map(|br| bound_state(model, cfg, br))
        .collect::<Result<Vec<_>>>()?;
    found.sort_by(|a, b| b.kappa.total_cmp(&a.kappa));
    Ok(found)
}

#[cfg(test)]
mod tests;
