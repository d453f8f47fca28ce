//! Closed-form s-wave results for the model potentials, used as reference values.
//!
//! Phase shifts come back both as the raw `Im ln` value and as `tan delta`;
//! comparisons should go through `tan delta`, which is free of branch choices.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::potential::{PotentialKind, PotentialModel};
use crate::roots::{brent, log_grid, sign_changes};
use crate::special::bessel::{bessel_j_real, bessel_jy, complex_order_bessel_j};
use crate::special::gamma::{digamma, digamma_complex, gamma, ln_gamma_complex, EULER_GAMMA};
use crate::special::hyper::{kummer_m, kummer_m_complex, tricomi_u, tricomi_u_int_b_complex};
use crate::special::legendre::legendre_pq;

/// `|A| / a` beyond which a scattering length is reported as sitting on a pole.
pub const POLE_THRESHOLD: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactPhase {
    pub delta: f64,
    pub tan_delta: f64,
    pub formula: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactResult {
    pub value: f64,
    pub formula: &'static str,
    pub near_pole: bool,
}

fn need_s_wave(l: usize) -> Result<()> {
    if l != 0 {
        return Err(Error::InvalidInput(
            "closed forms exist for l = 0 only".into(),
        ));
    }
    Ok(())
}

fn no_overlay(model: &PotentialModel) -> Result<()> {
    if model.kind != PotentialKind::CoulombPoint && model.z != 0.0 {
        return Err(Error::InvalidInput(
            "closed forms exclude a Coulomb tail".into(),
        ));
    }
    Ok(())
}

fn morse_z(model: &PotentialModel) -> f64 {
    2.0 * (model.d / model.a).exp() * model.s.abs().sqrt()
}

fn phase(delta: f64, formula: &'static str) -> ExactPhase {
    ExactPhase {
        delta,
        tan_delta: delta.tan(),
        formula,
    }
}

/// Phase shift at `xi = p a`.
pub fn exact_phase(model: &PotentialModel, l: usize, xi: f64) -> Result<ExactPhase> {
    if !(xi > 0.0) {
        return Err(Error::Domain(format!("xi must be positive, got {xi}")));
    }
    no_overlay(model)?;
    if model.kind == PotentialKind::CoulombPoint {
        let eta = model.coulomb_zeta() * model.a / xi;
        let d = ln_gamma_complex(Complex64::new(l as f64 + 1.0, eta))?.im;
        return Ok(phase(d, "coulomb-arg-gamma"));
    }
    need_s_wave(l)?;
    let s = model.s;
    if s == 0.0 {
        return Ok(phase(0.0, "free"));
    }
    let i = Complex64::new(0.0, 1.0);
    match model.kind {
        PotentialKind::Exponential => {
            if s < 0.0 {
                return Err(Error::Domain(
                    "exponential closed form covers s >= 0 only".into(),
                ));
            }
            let nu = 2.0 * i * xi;
            let j = complex_order_bessel_j(nu, 2.0 * s.sqrt())?;
            let lg = ln_gamma_complex(1.0 + nu)?;
            let d = (j.ln() + lg).im - xi * s.ln();
            Ok(phase(d, "exponential-bessel"))
        }
        PotentialKind::Hulthen => {
            if s < 0.0 {
                return Err(Error::Domain(
                    "Hulthen closed form covers s >= 0 only".into(),
                ));
            }
            let root = Complex64::new(s - xi * xi, 0.0).sqrt();
            let d = (ln_gamma_complex(Complex64::new(1.0, 2.0 * xi))?
                + ln_gamma_complex(root - i * xi)?
                + ln_gamma_complex(-root - i * xi)?)
            .im;
            Ok(phase(d, "hulthen-log-gamma"))
        }
        PotentialKind::Morse => {
            let z = morse_z(model);
            let b = Complex64::new(1.0, 2.0 * xi);
            if s > 0.0 {
                let a = Complex64::new(0.5 - s.sqrt(), xi);
                Ok(phase(
                    kummer_m_complex(a, b, Complex64::new(z, 0.0))?.arg(),
                    "morse-kummer",
                ))
            } else {
                let a = Complex64::new(0.5, xi - (-s).sqrt());
                let m = kummer_m_complex(a, b, Complex64::new(0.0, z))?;
                Ok(phase(m.arg() - 0.5 * z, "morse-barrier-kummer"))
            }
        }
        PotentialKind::CoulombPoint => unreachable!(),
    }
}

fn length(value_over_a: f64, a: f64, formula: &'static str) -> ExactResult {
    ExactResult {
        value: value_over_a * a,
        formula,
        near_pole: !(value_over_a.abs() <= POLE_THRESHOLD),
    }
}

/// Scattering length `A = lim delta / p`, positive for weak attraction.
pub fn exact_scattering_length(model: &PotentialModel) -> Result<ExactResult> {
    no_overlay(model)?;
    let s = model.s;
    if s == 0.0 {
        return Ok(length(0.0, model.a, "free"));
    }
    match model.kind {
        PotentialKind::Exponential => {
            if s < 0.0 {
                return Err(Error::Domain(
                    "exponential closed form covers s >= 0 only".into(),
                ));
            }
            let jy = bessel_jy(0, 2.0 * s.sqrt())?;
            let v = -2.0 * (EULER_GAMMA + s.sqrt().ln()) + PI * jy.second / jy.first;
            Ok(length(v, model.a, "exponential-bessel"))
        }
        PotentialKind::Hulthen => {
            if s < 0.0 {
                return Err(Error::Domain(
                    "Hulthen closed form covers s >= 0 only".into(),
                ));
            }
            let r = s.sqrt();
            let v = match digamma(1.0 - r) {
                Ok(p) => -2.0 * EULER_GAMMA - digamma(1.0 + r)? - p,
                Err(_) => f64::INFINITY,
            };
            Ok(length(v, model.a, "hulthen-digamma"))
        }
        PotentialKind::Morse => {
            let z = morse_z(model);
            if s > 0.0 {
                let a = 0.5 - s.sqrt();
                let v = -2.0 * EULER_GAMMA
                    - digamma(a)?
                    - z.ln()
                    - gamma(a)? * tricomi_u(a, 1.0, z)? / kummer_m(a, 1.0, z)?;
                Ok(length(v, model.a, "morse-tricomi"))
            } else {
                let a = Complex64::new(0.5, -(-s).sqrt());
                let iz = Complex64::new(0.0, z);
                let g = ln_gamma_complex(a)?.exp();
                let ratio = tricomi_u_int_b_complex(a, 0, iz)?
                    / kummer_m_complex(a, Complex64::new(1.0, 0.0), iz)?;
                let inner = digamma_complex(a)? - iz.ln() + g * ratio;
                Ok(length(
                    -2.0 * EULER_GAMMA - inner.re,
                    model.a,
                    "morse-barrier-tricomi",
                ))
            }
        }
        PotentialKind::CoulombPoint => Err(Error::Domain(
            "no scattering length for a pure Coulomb field".into(),
        )),
    }
}

/// Residual of the bound-state condition at `x = kappa a`; zero at a bound state.
pub fn exact_bound_condition(model: &PotentialModel, l: usize, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    no_overlay(model)?;
    let s = model.s;
    match model.kind {
        PotentialKind::CoulombPoint => {
            let n = model.z / x - l as f64 - 1.0;
            Ok(n - n.round())
        }
        PotentialKind::Exponential => {
            need_s_wave(l)?;
            bessel_j_real(2.0 * x, 2.0 * s.sqrt())
        }
        PotentialKind::Hulthen => {
            need_s_wave(l)?;
            let n = (x * x + s).sqrt() - x;
            Ok(n - n.round())
        }
        PotentialKind::Morse => {
            need_s_wave(l)?;
            let z = morse_z(model);
            if s > 0.0 {
                kummer_m(0.5 + x - s.sqrt(), 1.0 + 2.0 * x, z)
            } else {
                let a = Complex64::new(0.5 + x, -(-s).sqrt());
                Ok(kummer_m_complex(
                    a,
                    Complex64::new(1.0 + 2.0 * x, 0.0),
                    Complex64::new(0.0, z),
                )?
                .re)
            }
        }
    }
}

/// Bound states `x = kappa a`, deepest first.
pub fn exact_bound_states(model: &PotentialModel, l: usize, max_states: usize) -> Result<Vec<f64>> {
    no_overlay(model)?;
    let s = model.s;
    let mut out = Vec::new();
    match model.kind {
        PotentialKind::CoulombPoint => {
            for n in 0..max_states {
                out.push(model.z / (n + l + 1) as f64);
            }
        }
        PotentialKind::Hulthen => {
            need_s_wave(l)?;
            let mut n = 1usize;
            while ((n * n) as f64) < s && out.len() < max_states {
                out.push((s - (n * n) as f64) / (2 * n) as f64);
                n += 1;
            }
        }
        PotentialKind::Exponential | PotentialKind::Morse => {
            need_s_wave(l)?;
            if s <= 0.0 {
                return Ok(out);
            }
            let hi = s.sqrt() + 2.0;
            let grid = log_grid(1e-6, hi, 600);
            let f = |x: f64| exact_bound_condition(model, l, x);
            let mut brackets = sign_changes(f, &grid)?;
            brackets.reverse();
            for (lo, hi) in brackets.into_iter().take(max_states) {
                out.push(brent(f, lo, hi, 1e-15)?);
            }
        }
    }
    Ok(out)
}

fn hulthen_series(x: f64, y: f64) -> f64 {
    let (x2, y2) = (x * x, y * y);
    let f = |t: f64| t / ((t * t + x2) * (t * t + y2));
    let n0 = (8.0 * x.abs().max(y.abs())).max(200.0).ceil() as usize;
    let sum: f64 = (1..=n0).rev().map(|n| f(n as f64)).sum();
    // Euler-Maclaurin tail from n0 with the exact antiderivative
    let t = n0 as f64;
    let (a, b) = (t * t + x2, t * t + y2);
    let integral = if x2 == y2 {
        0.5 / a
    } else {
        0.5 * ((x2 - y2) / b).ln_1p() / (x2 - y2)
    };
    let df = 1.0 / (a * b) - 2.0 * t * t * (a + b) / (a * a * b * b);
    sum + integral - 0.5 * f(t) - df / 12.0
}

/// `sum_n n / ((n^2+x^2)(n^2+y^2))`, with an Euler-Maclaurin tail.
pub fn hulthen_momentum_series(x: f64, y: f64) -> f64 {
    hulthen_series(x, y)
}

/// Digamma representation of the same sum, valid for `x != y` in magnitude.
pub fn hulthen_momentum_digamma(x: f64, y: f64) -> Result<f64> {
    let px = digamma_complex(Complex64::new(1.0, x))?.re;
    let py = digamma_complex(Complex64::new(1.0, y))?.re;
    Ok((px - py) / (x * x - y * y))
}

/// Partial-wave projection `U_l(k, k') = int j_l(k r) 2 mu V(r) j_l(k' r) r^2 dr` in closed form.
///
/// The short-range S-wave forms also accept `k' = 0`.
pub fn exact_momentum_potential(model: &PotentialModel, l: usize, k: f64, kp: f64) -> Result<f64> {
    let zero_ok = l == 0 && model.kind != PotentialKind::CoulombPoint;
    if !(k > 0.0 && (kp > 0.0 || (zero_ok && kp == 0.0))) {
        return Err(Error::Domain(format!(
            "momenta must be positive, got {k}, {kp}"
        )));
    }
    no_overlay(model)?;
    let a = model.a;
    let s = model.s;
    let x = a * (k + kp);
    let y = a * (k - kp);
    match model.kind {
        PotentialKind::CoulombPoint => {
            if k == kp {
                return Err(Error::Domain(
                    "Coulomb projection diverges on the diagonal".into(),
                ));
            }
            let zz = (x * x + y * y) / (x * x - y * y);
            Ok(-4.0 * a * model.z * legendre_pq(l, zz)?.q / (x * x - y * y))
        }
        _ => {
            need_s_wave(l)?;
            let e = |xx: f64, yy: f64| 1.0 / ((1.0 + xx * xx) * (1.0 + yy * yy));
            Ok(match model.kind {
                PotentialKind::Exponential => -2.0 * s * a * e(x, y),
                PotentialKind::Hulthen => -2.0 * s * a * hulthen_series(x, y),
                PotentialKind::Morse => {
                    let ed = (model.d / a).exp();
                    -s * a * 4.0 * ed * e(x, y) + s * a * 0.25 * ed * ed * e(0.5 * x, 0.5 * y)
                }
                PotentialKind::CoulombPoint => unreachable!(),
            })
        }
    }
}
