//! Coulomb wave functions at positive, zero and negative energy.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::bessel::{bessel_ik, bessel_jy, modified_riccati, riccati_free, FreePair};
use super::gamma::{ln_gamma_complex, ln_gamma_signed};
use super::hyper::{kummer_m, tricomi_u, tricomi_u_logderiv};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombParams {
    pub l: usize,
    pub eta: f64,
    pub rho: f64,
}

impl CoulombParams {
    pub fn new(l: usize, eta: f64, rho: f64) -> Result<Self> {
        if !(rho > 0.0) || !eta.is_finite() {
            return Err(Error::Domain(format!(
                "Coulomb functions need rho > 0, got rho = {rho}, eta = {eta}"
            )));
        }
        Ok(Self { l, eta, rho })
    }

    /// Inside `l <= 2`, `|eta| <= 3`, `rho <= 50`, where accuracy is checked to 1e-10.
    pub fn in_tested_box(&self) -> bool {
        self.l <= 2 && self.eta.abs() <= 3.0 && self.rho <= 50.0
    }
}

/// `C_l(eta) = 2^l e^{-pi eta/2} |Gamma(l+1+i eta)| / (2l+1)!`.
pub fn coulomb_c(l: usize, eta: f64) -> Result<f64> {
    let lg = ln_gamma_complex(Complex64::new(l as f64 + 1.0, eta))?.re;
    let (lf, _) = ln_gamma_signed(2.0 * l as f64 + 2.0)?;
    Ok((l as f64 * 2f64.ln() - 0.5 * PI * eta + lg - lf).exp())
}

// F and F' from the ascending series about the origin.
fn f_series(l: usize, eta: f64, rho: f64) -> Result<(f64, f64)> {
    let c = coulomb_c(l, eta)?;
    let lf = l as f64;
    let (mut am2, mut am1) = (0.0, 1.0);
    let mut sum = 1.0;
    let mut dsum = lf + 1.0;
    let mut pw = 1.0;
    for k in 1..5000 {
        let kf = k as f64;
        let ak = (2.0 * eta * am1 - am2) / (kf * (kf + 2.0 * lf + 1.0));
        pw *= rho;
        let t = ak * pw;
        sum += t;
        dsum += (kf + lf + 1.0) * t;
        am2 = am1;
        am1 = ak;
        if t.abs() <= 1e-17 * sum.abs()
            && kf > 2.0 * rho
            && (am2 * pw / rho).abs() <= 1e-17 * sum.abs()
        {
            let pre = c * rho.powi(l as i32 + 1);
            return Ok((pre * sum, pre * dsum / rho));
        }
    }
    Err(Error::NoConvergence(format!(
        "Coulomb F series at rho = {rho}"
    )))
}

// CF1 for F'/F plus the sign of F from a downward recurrence.
fn cf1(l: usize, eta: f64, rho: f64) -> Result<(f64, f64)> {
    const TINY: f64 = 1e-300;
    let s = |k: f64| k / rho + eta / k;
    let r2 = |k: f64| 1.0 + eta * eta / (k * k);
    let lf = l as f64;
    let mut f = s(lf + 1.0);
    if f.abs() < TINY {
        f = TINY;
    }
    let mut c = f;
    let mut d = 0.0;
    let mut used = 0;
    for j in 1..200_000 {
        let k = lf + j as f64;
        let aj = -r2(k);
        let bj = s(k) + s(k + 1.0);
        d = bj + aj * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = bj + aj / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            used = j;
            break;
        }
    }
    if used == 0 {
        return Err(Error::NoConvergence(format!("Coulomb CF1 at rho = {rho}")));
    }
    // u_{k-1} = (u'_k + S_k u_k)/R_k, u'_{k-1} = S_k u_{k-1} - R_k u_k
    let top = l + used + 20;
    let mut u = 1e-200;
    let mut du = s(top as f64 + 1.0) * u;
    for k in ((l + 1)..=top).rev() {
        let kf = k as f64;
        let rk = r2(kf).sqrt();
        let um = (du + s(kf) * u) / rk;
        du = s(kf) * um - rk * u;
        u = um;
        let big = u.abs().max(du.abs());
        if big > 1e200 {
            u /= big;
            du /= big;
        }
    }
    Ok((f, u.signum()))
}

// CF2 for H'/H with H = G + iF.
fn cf2(l: usize, eta: f64, rho: f64) -> Result<Complex64> {
    const TINY: f64 = 1e-150;
    let i = Complex64::new(0.0, 1.0);
    let a = Complex64::new(1.0 + l as f64, eta);
    let b = Complex64::new(-(l as f64), eta);
    let mut f = Complex64::new(TINY, 0.0);
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for k in 1..1_000_000 {
        let kf = k as f64;
        let ak = (a + kf - 1.0) * (b + kf - 1.0);
        let bk = 2.0 * Complex64::new(rho - eta, kf);
        d = bk + ak * d;
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        c = bk + ak / c;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-15 {
            return Ok(i * (1.0 - eta / rho) + i / rho * f);
        }
    }
    Err(Error::NoConvergence(format!(
        "Coulomb CF2 at rho = {rho}, eta = {eta}"
    )))
}

fn steed(l: usize, eta: f64, rho: f64) -> Result<FreePair> {
    let (fr, sign) = cf1(l, eta, rho)?;
    let pq = cf2(l, eta, rho)?;
    let (p, q) = (pq.re, pq.im);
    let f = sign * (q / ((fr - p).powi(2) + q * q)).sqrt();
    let g = (fr - p) * f / q;
    Ok(FreePair {
        f,
        g,
        df: fr * f,
        dg: p * g - q * f,
    })
}

// One Taylor step of u'' = (L/rho^2 + 2 eta/rho - 1) u from rho0 to rho0 + t.
fn taylor_step(l: usize, eta: f64, rho0: f64, u0: f64, du0: f64, t: f64) -> (f64, f64) {
    let ll = (l * (l + 1)) as f64;
    let q0 = ll + 2.0 * eta * rho0 - rho0 * rho0;
    let q1 = 2.0 * eta - 2.0 * rho0;
    let r2 = rho0 * rho0;
    let mut c = vec![u0, du0];
    let mut d: Vec<f64> = Vec::new();
    let mut u = u0 + du0 * t;
    let mut du = du0;
    let mut tp = t;
    for n in 0..400 {
        let cn1 = if n >= 1 { c[n - 1] } else { 0.0 };
        let cn2 = if n >= 2 { c[n - 2] } else { 0.0 };
        let dn1 = if n >= 1 { d[n - 1] } else { 0.0 };
        let dn2 = if n >= 2 { d[n - 2] } else { 0.0 };
        let dn = (q0 * c[n] + q1 * cn1 - cn2 - 2.0 * rho0 * dn1 - dn2) / r2;
        d.push(dn);
        let cnext = dn / ((n + 2) * (n + 1)) as f64;
        c.push(cnext);
        du += (n + 2) as f64 * cnext * tp;
        tp *= t;
        let term = cnext * tp;
        u += term;
        if n > 6
            && term.abs() <= 1e-18 * u.abs()
            && (n + 2) as f64 * (cnext * tp / t).abs() <= 1e-18 * du.abs().max(u.abs())
        {
            break;
        }
    }
    (u, du)
}

fn switch_radius(l: usize, eta: f64) -> f64 {
    (eta + (eta * eta + (l * (l + 1)) as f64).sqrt() + 1.5).max(2.0)
}

/// Regular and irregular Coulomb functions `F_l(eta, rho)`, `G_l(eta, rho)` with `F G' - G F' = -1`.
pub fn coulomb_fg(params: CoulombParams) -> Result<FreePair> {
    let CoulombParams { l, eta, rho } = params;
    if !(rho > 0.0) {
        return Err(Error::Domain(format!("rho must be positive, got {rho}")));
    }
    if eta == 0.0 {
        return riccati_free(l, rho);
    }
    let rs = switch_radius(l, eta);
    if rho >= rs {
        return steed(l, eta, rho);
    }
    let at = steed(l, eta, rs)?;
    let (mut g, mut dg) = (at.g, at.dg);
    let mut cur = rs;
    while cur > rho {
        let next = (0.55 * cur).max(rho);
        let (ng, ndg) = taylor_step(l, eta, cur, g, dg, next - cur);
        g = ng;
        dg = ndg;
        cur = next;
    }
    let (f, df) = f_series(l, eta, rho)?;
    Ok(FreePair { f, g, df, dg })
}

/// `coulomb_fg` plus a flag set when the arguments lie outside the verified box.
pub fn coulomb_fg_flagged(params: CoulombParams) -> Result<(FreePair, bool)> {
    Ok((coulomb_fg(params)?, !params.in_tested_box()))
}

/// Zero-energy regular and irregular Coulomb functions `(Phi, Theta, Phi', Theta')`.
///
/// `beta = 2 mu alpha |Z| >= 0`; `z_sign` is the sign of the charge product.
/// Normalized so that `Theta Phi' - Phi Theta' = 1`.
pub fn zero_energy_coulomb(
    l: usize,
    beta: f64,
    r: f64,
    z_sign: i8,
) -> Result<(f64, f64, f64, f64)> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("r must be positive, got {r}")));
    }
    if beta < 0.0 {
        return Err(Error::InvalidInput(format!(
            "beta must be nonnegative, got {beta}"
        )));
    }
    let lf = l as f64;
    if z_sign == 0 || beta == 0.0 {
        let phi = r.powi(l as i32 + 1);
        let theta = r.powi(-(l as i32)) / (2.0 * lf + 1.0);
        return Ok((phi, theta, (lf + 1.0) * r.powi(l as i32), -lf * theta / r));
    }
    let n = 2 * l + 1;
    let u = 2.0 * (beta * r).sqrt();
    let (lfact, _) = ln_gamma_signed(n as f64 + 1.0)?;
    let a = (lfact - (lf + 1.0) * beta.ln()).exp();
    let b = (lf * beta.ln() - lfact).exp();
    let (z, dz) = if z_sign > 0 {
        let p = bessel_ik(n, u)?;
        ((p.first, p.second), (p.dfirst, p.dsecond))
    } else {
        let p = bessel_jy(n, u)?;
        ((p.first, p.second), (p.dfirst, p.dsecond))
    };
    let tb = if z_sign > 0 { 2.0 * b } else { -PI * b };
    // d/dr [sqrt(beta r) Z(u)] = beta [Z/u + Z'(u)]
    let phi = a * 0.5 * u * z.0;
    let dphi = a * beta * (z.0 / u + dz.0);
    let theta = tb * 0.5 * u * z.1;
    let dtheta = tb * beta * (z.1 / u + dz.1);
    Ok((phi, theta, dphi, dtheta))
}

/// `h~'/h~` at negative energy from the continued fraction for Tricomi ratios.
pub fn coulomb_h_logderiv(l: usize, eta_t: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    let a = l as f64 + 1.0 + eta_t;
    let b = 2.0 * l as f64 + 2.0;
    Ok((l as f64 + 1.0) / x - 1.0 + 2.0 * tricomi_u_logderiv(a, b, 2.0 * x)?)
}

/// Decaying solution `h~` alone; defined even at hydrogenic poles of the regular one.
pub fn coulomb_h_tilde(l: usize, eta_t: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    let a = l as f64 + 1.0 + eta_t;
    let b = 2.0 * l as f64 + 2.0;
    let lf = l as f64;
    let pre = ((lf + 1.0) * (2.0 * x).ln() - x).exp();
    Ok(pre * tricomi_u(a, b, 2.0 * x)?)
}

/// Negative-energy pair `(f~, h~, f~', h~')` with `h~ f~' - f~ h~' = 1`.
///
/// `f~` carries `C = Gamma(l+1+eta)/(2 (2l+1)!)` with its sign, so the
/// pair is undefined where `l+1+eta` is a nonpositive integer.
pub fn neg_energy_coulomb(l: usize, eta_t: f64, x: f64) -> Result<FreePair> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    if eta_t == 0.0 {
        return modified_riccati(l, x);
    }
    let lf = l as f64;
    let a = lf + 1.0 + eta_t;
    let b = 2.0 * lf + 2.0;
    let (lga, sga) = ln_gamma_signed(a)
        .map_err(|_| Error::Domain(format!("regular solution undefined at l+1+eta = {a}")))?;
    let (lfact, _) = ln_gamma_signed(b)?;
    let z = 2.0 * x;
    let m = kummer_m(a, b, z)?;
    let dm = a / b * kummer_m(a + 1.0, b + 1.0, z)?;
    let lpre = (lf + 1.0) * z.ln() - x;
    let cpre = sga * (lga - lfact - 2f64.ln() + lpre).exp();
    let f = cpre * m;
    let df = cpre * (((lf + 1.0) / x - 1.0) * m + 2.0 * dm);
    let h = coulomb_h_tilde(l, eta_t, x)?;
    let dh = h * coulomb_h_logderiv(l, eta_t, x)?;
    Ok(FreePair {
        f,
        g: h,
        df,
        dg: dh,
    })
}
