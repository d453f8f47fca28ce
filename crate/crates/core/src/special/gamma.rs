//! Gamma, log-gamma and digamma for real and complex arguments.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

fn lanczos_ln(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// `ln Gamma(z)`. The imaginary part is an argument of `Gamma(z)`, reduced to `(-pi, pi]`.
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && is_pole(z.re) {
        return Err(Error::Domain(format!("Gamma has a pole at {}", z.re)));
    }
    let v = if z.re < 0.5 {
        let s = (PI * z).sin();
        Complex64::new(PI.ln(), 0.0) - s.ln() - lanczos_ln(1.0 - z)
    } else {
        lanczos_ln(z)
    };
    Ok(Complex64::new(v.re, wrap(v.im)))
}

/// Reduces an angle to `(-pi, pi]`.
pub fn wrap(a: f64) -> f64 {
    let mut r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    r
}

/// `ln |Gamma(x)|` and the sign of `Gamma(x)`.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if is_pole(x) {
        return Err(Error::Domain(format!("Gamma has a pole at {x}")));
    }
    if x < 0.5 {
        let s = (PI * x).sin();
        let (lg, sg) = ln_gamma_signed(1.0 - x)?;
        return Ok((PI.ln() - s.abs().ln() - lg, s.signum() * sg));
    }
    Ok((lanczos_ln(Complex64::new(x, 0.0)).re, 1.0))
}

pub fn gamma(x: f64) -> Result<f64> {
    if x > 0.0 && x == x.round() && x < 171.0 {
        return Ok((1..x as u64).fold(1.0, |acc, k| acc * k as f64));
    }
    let (lg, s) = ln_gamma_signed(x)?;
    Ok(s * lg.exp())
}

/// `1/Gamma(x)`, zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    match ln_gamma_signed(x) {
        Ok((lg, s)) => s * (-lg).exp(),
        Err(_) => 0.0,
    }
}

fn digamma_asym(x: f64) -> f64 {
    let x2 = 1.0 / (x * x);
    let series = x2
        * (1.0 / 12.0
            - x2 * (1.0 / 120.0
                - x2 * (1.0 / 252.0
                    - x2 * (1.0 / 240.0
                        - x2 * (1.0 / 132.0 - x2 * (691.0 / 32760.0 - x2 / 12.0))))));
    x.ln() - 0.5 / x - series
}

pub fn digamma(x: f64) -> Result<f64> {
    if is_pole(x) {
        return Err(Error::Domain(format!("digamma has a pole at {x}")));
    }
    if x < 0.5 {
        return Ok(digamma(1.0 - x)? - PI / (PI * x).tan());
    }
    let mut acc = 0.0;
    let mut y = x;
    while y < 10.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    Ok(acc + digamma_asym(y))
}

pub fn digamma_complex(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && is_pole(z.re) {
        return Err(Error::Domain(format!("digamma has a pole at {}", z.re)));
    }
    if z.re < 0.5 {
        let w = 1.0 - z;
        return Ok(digamma_complex(w)? - PI / (PI * z).tan());
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut y = z;
    while y.norm() < 12.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let y2 = 1.0 / (y * y);
    let series = y2
        * (1.0 / 12.0
            - y2 * (1.0 / 120.0
                - y2 * (1.0 / 252.0
                    - y2 * (1.0 / 240.0
                        - y2 * (1.0 / 132.0 - y2 * (691.0 / 32760.0 - y2 / 12.0))))));
    Ok(acc + y.ln() - 0.5 / y - series)
}
