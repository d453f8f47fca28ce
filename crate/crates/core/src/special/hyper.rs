//! Confluent hypergeometric functions `M(a, b, z)` (Kummer) and `U(a, b, z)` (Tricomi).

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{digamma, digamma_complex, ln_gamma_complex, ln_gamma_signed, rgamma};
use crate::error::{Error, Result};

const MAX_TERMS: usize = 20_000;

fn is_nonpos_int(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

fn m_series(a: f64, b: f64, z: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut big: f64 = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) / ((b + kf) * (kf + 1.0)) * z;
        sum += term;
        big = big.max(term.abs());
        if !sum.is_finite() {
            return Err(Error::Domain(format!("M({a}, {b}, {z}) overflows")));
        }
        if term == 0.0 || (term.abs() <= 1e-17 * sum.abs() && kf > z.abs() - a) {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence(format!(
        "Kummer series M({a}, {b}, {z})"
    )))
}

/// Kummer `M(a, b, z)`; `b` must not be a nonpositive integer.
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<f64> {
    if is_nonpos_int(b) {
        return Err(Error::Domain(format!("M undefined for b = {b}")));
    }
    if z < 0.0 && !is_nonpos_int(a) {
        return Ok(z.exp() * m_series(b - a, b, -z)?);
    }
    m_series(a, b, z)
}

pub fn kummer_m_complex(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    if b.im == 0.0 && is_nonpos_int(b.re) {
        return Err(Error::Domain(format!("M undefined for b = {}", b.re)));
    }
    if z.re < 0.0 && !(a.im == 0.0 && is_nonpos_int(a.re)) {
        return Ok(z.exp() * m_series_c(b - a, b, -z)?);
    }
    m_series_c(a, b, z)
}

fn m_series_c(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) / ((b + kf) * (kf + 1.0)) * z;
        sum += term;
        if !(sum.re.is_finite() && sum.im.is_finite()) {
            return Err(Error::Domain("complex Kummer series overflows".into()));
        }
        if term.norm() <= 1e-17 * sum.norm() && kf > z.norm() {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence("complex Kummer series".into()))
}

// U(-n, b, z) = (-1)^n (b)_n M(-n, b, z), a polynomial.
fn u_polynomial(n: usize, b: f64, z: f64) -> Result<f64> {
    let mut poch = 1.0;
    for k in 0..n {
        poch *= b + k as f64;
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * poch * m_series(-(n as f64), b, z)?)
}

/// `U(a+1, b, z) / U(a, b, z)` from the continued fraction of the contiguous recurrence in `a`.
pub fn tricomi_u_ratio(a: f64, b: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("U ratio needs z > 0, got {z}")));
    }
    const TINY: f64 = 1e-300;
    let beta = |k: usize| 2.0 * (a + k as f64) + z - b;
    let alpha = |k: usize| (a + k as f64) * (a + k as f64 - b + 1.0);
    let mut f = TINY;
    let mut c = f;
    let mut d = 0.0;
    for j in 1..2_000_000 {
        let aj = if j == 1 { 1.0 } else { -alpha(j - 1) };
        let bj = beta(j);
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
        if (delta - 1.0).abs() < 1e-16 || aj == 0.0 {
            return Ok(f);
        }
    }
    Err(Error::NoConvergence(format!(
        "U ratio continued fraction at z = {z}"
    )))
}

/// `U'(a, b, z) / U(a, b, z)`.
pub fn tricomi_u_logderiv(a: f64, b: f64, z: f64) -> Result<f64> {
    if a == 0.0 {
        return Ok(0.0);
    }
    Ok(a * ((a - b + 1.0) * tricomi_u_ratio(a, b, z)? - 1.0) / z)
}

// Wronskian route: U = -Gamma(b) z^{-b} e^z / (Gamma(a) (M U'/U - M')).
fn u_wronskian(a: f64, b: f64, z: f64) -> Result<f64> {
    let m = kummer_m(a, b, z)?;
    let dm = a / b * kummer_m(a + 1.0, b + 1.0, z)?;
    let lu = tricomi_u_logderiv(a, b, z)?;
    let (lgb, sb) = ln_gamma_signed(b)?;
    let (lga, sa) = ln_gamma_signed(a)?;
    let den = m * lu - dm;
    let mag = (lgb - lga - b * z.ln() + z).exp();
    Ok(-sb * sa * mag / den)
}

/// `U(a, n+1, z)` by the logarithmic formula, complex arguments.
pub fn tricomi_u_int_b_complex(a: Complex64, n: usize, z: Complex64) -> Result<Complex64> {
    let nf = n as f64;
    let b = Complex64::new(nf + 1.0, 0.0);
    let rg = |x: Complex64| -> Complex64 {
        match ln_gamma_complex(x) {
            Ok(v) => (-v).exp(),
            Err(_) => Complex64::new(0.0, 0.0),
        }
    };
    let mut nfact = 1.0;
    for k in 1..=n {
        nfact *= k as f64;
    }
    let pref = rg(a - nf) * (if (n + 1).is_multiple_of(2) { 1.0 } else { -1.0 }) / nfact;
    let mut bracket = Complex64::new(0.0, 0.0);
    if pref.norm() != 0.0 {
        let m = kummer_m_complex(a, b, z)?;
        bracket += m * z.ln();
        let mut term = Complex64::new(1.0, 0.0);
        for r in 0..MAX_TERMS {
            let rf = r as f64;
            if r > 0 {
                term *= (a + rf - 1.0) / ((nf + rf) * rf) * z;
            }
            let psi = digamma_complex(a + rf)? - digamma(1.0 + rf)? - digamma(1.0 + nf + rf)?;
            let d = term * psi;
            bracket += d;
            if d.norm() <= 1e-17 * bracket.norm() && rf > z.norm() + 2.0 {
                break;
            }
        }
    }
    let mut tail = Complex64::new(0.0, 0.0);
    if n > 0 {
        let mut nm1 = 1.0;
        for k in 1..n {
            nm1 *= k as f64;
        }
        let mut term = Complex64::new(1.0, 0.0);
        let mut s = term;
        for r in 1..n {
            let rf = r as f64;
            term *= (a - nf + rf - 1.0) / ((1.0 - nf + rf - 1.0) * rf) * z;
            s += term;
        }
        tail = nm1 * rg(a) * z.powf(-nf) * s;
    }
    Ok(pref * bracket + tail)
}

/// Tricomi `U(a, b, z)` for real arguments, `z > 0`.
pub fn tricomi_u(a: f64, b: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("real U needs z > 0, got {z}")));
    }
    if is_nonpos_int(a) {
        return u_polynomial((-a) as usize, b, z);
    }
    if z > 10.0 {
        return u_wronskian(a, b, z);
    }
    if b == b.round() {
        if b >= 1.0 {
            return Ok(tricomi_u_int_b_complex(
                Complex64::new(a, 0.0),
                (b - 1.0) as usize,
                Complex64::new(z, 0.0),
            )?
            .re);
        }
        // U(a, b, z) = z^{1-b} U(a-b+1, 2-b, z)
        return Ok(z.powf(1.0 - b) * tricomi_u(a - b + 1.0, 2.0 - b, z)?);
    }
    let t1 = kummer_m(a, b, z)? * rgamma(1.0 + a - b) * rgamma(b);
    let t2 = z.powf(1.0 - b) * kummer_m(1.0 + a - b, 2.0 - b, z)? * rgamma(a) * rgamma(2.0 - b);
    Ok(PI / (PI * b).sin() * (t1 - t2))
}
