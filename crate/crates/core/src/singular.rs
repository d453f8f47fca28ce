//! Product-integration weights for Cauchy `1/(t - z)` and logarithmic `log|t - z|` kernels.

use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

use crate::cheb::{cardinal_row, cheb_t, cheb_u, t_at_node};
use crate::error::{check_len, Error, Result};
use crate::quad::operators;

const EDGE: f64 = 1e-12;

/// Polynomial part `S_n(z)` of the principal value `PV integral T_n(t)/(t - z)`.
pub fn cauchy_s(n: usize, z: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let mut s = 2.0 * cheb_u(n as isize - 1, z);
    let mut i = 2;
    while i < n {
        s -= 4.0 * cheb_u((n - 1 - i) as isize, z) / ((i * i) as f64 - 1.0);
        i += 2;
    }
    s
}

fn check_interior(z: f64) -> Result<()> {
    if !(z.abs() < 1.0 - EDGE) {
        return Err(Error::Domain(format!("|z| must be below 1, got {z}")));
    }
    Ok(())
}

/// `I_n(z) = PV integral_{-1}^{1} T_n(t)/(t - z) dt`, `|z| < 1`.
pub fn cauchy_i(n: usize, z: f64) -> Result<f64> {
    check_interior(z)?;
    Ok(cauchy_s(n, z) + cheb_t(n, z) * ((1.0 - z) / (1.0 + z)).ln())
}

/// Full weights `omega_j(z)` and the polynomial-only part `omega~_j(z)`.
pub fn cauchy_weights(n: usize, z: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    check_interior(z)?;
    let s: Vec<f64> = (0..n).map(|k| cauchy_s(k, z)).collect();
    let reg = project(n, &s);
    let g = cardinal_row(n, z);
    let lg = ((1.0 - z) / (1.0 + z)).ln();
    let full = reg.iter().zip(&g).map(|(r, gj)| r + gj * lg).collect();
    Ok((full, reg))
}

// (2/N) sum' T_{k}(t_j) c_k for each node j.
fn project(n: usize, c: &[f64]) -> Vec<f64> {
    (1..=n)
        .map(|j| {
            let mut s = 0.5 * c[0];
            for (k, ck) in c.iter().enumerate().skip(1) {
                s += t_at_node(n, k, j) * ck;
            }
            2.0 * s / n as f64
        })
        .collect()
}

/// `PV integral f(t)/(t - z) dt` for sampled `f` on the standard nodes; `f_at_z` is `f(z)`.
///
/// Off the real segment `[-1, 1]` the kernel is regular; on it the principal value is
/// returned with `+i pi f(z)` or `-i pi f(z)` added when `side` is `Some(+1)` / `Some(-1)`.
pub fn cauchy_integral(f: &[f64], z: f64, f_at_z: f64, side: Option<i8>) -> Result<Complex64> {
    let n = f.len();
    if z.abs() > 1.0 {
        let ops = operators(n)?;
        let s: f64 = (0..n).map(|j| ops.w[j] * f[j] / (ops.t[j] - z)).sum();
        return Ok(Complex64::new(s, 0.0));
    }
    check_interior(z)?;
    let (_, reg) = cauchy_weights(n, z)?;
    let pv =
        reg.iter().zip(f).map(|(w, v)| w * v).sum::<f64>() + f_at_z * ((1.0 - z) / (1.0 + z)).ln();
    let im = match side {
        Some(s) if s > 0 => PI * f_at_z,
        Some(_) => -PI * f_at_z,
        None => 0.0,
    };
    Ok(Complex64::new(pv, im))
}

fn ln_abs(x: f64) -> f64 {
    x.abs().ln()
}

/// `J_n(z) = integral_{-1}^{1} T_n(t) log|t - z| dt`, `-1 <= z <= 1`.
pub fn log_j(n: usize, z: f64) -> Result<f64> {
    if !(z.abs() <= 1.0) {
        return Err(Error::Domain(format!("log kernel needs |z| <= 1, got {z}")));
    }
    let k = n + 1;
    if z.abs() >= 1.0 - EDGE {
        let sgn = z.signum();
        return Ok(match k {
            1 => 2.0 * LN_2 - 2.0,
            2 => -sgn,
            _ => {
                let kf = k as f64;
                let par = if (k - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
                -(1.0 + par) * LN_2 / (kf * (kf - 2.0)) - cauchy_s(k, sgn) / (2.0 * kf)
                    + cauchy_s(k - 2, sgn) / (2.0 * (kf - 2.0))
            }
        });
    }
    if k == 2 {
        return Ok(0.25 * (ln_abs((1.0 - z) / (1.0 + z)) - cauchy_i(2, z)?));
    }
    let kf = k as f64;
    let par = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let km2 = (k as isize - 2).unsigned_abs();
    Ok(
        -(ln_abs(1.0 - z) - par * ln_abs(1.0 + z)) / (kf * (kf - 2.0))
            - cauchy_i(k, z)? / (2.0 * kf)
            + cauchy_i(km2, z)? / (2.0 * (kf - 2.0)),
    )
}

/// `Omega_j(z)`: `integral f(t) log|t - z| dt ~ sum_j Omega_j f(t_j)`.
pub fn log_weights(n: usize, z: f64) -> Result<Vec<f64>> {
    let jv = (0..n).map(|k| log_j(k, z)).collect::<Result<Vec<_>>>()?;
    Ok(project(n, &jv))
}

/// `integral f(t) log|t - z| dt` for sampled `f`; any real `z`.
pub fn log_integral(f: &[f64], z: f64) -> Result<f64> {
    let n = f.len();
    if z.abs() > 1.0 {
        let ops = operators(n)?;
        return Ok((0..n).map(|j| ops.w[j] * f[j] * ln_abs(ops.t[j] - z)).sum());
    }
    let om = log_weights(n, z)?;
    Ok(om.iter().zip(f).map(|(w, v)| w * v).sum())
}

/// Weights of both kinds tabulated at a set of evaluation points.
#[derive(Debug, Clone)]
pub struct SingularWeightSet {
    pub n: usize,
    pub z: Vec<f64>,
    /// `cauchy[m][j] = omega_j(z_m)`.
    pub cauchy: Vec<Vec<f64>>,
    pub log: Vec<Vec<f64>>,
}

impl SingularWeightSet {
    pub fn new(n: usize, z: &[f64]) -> Result<Self> {
        let mut cauchy = Vec::with_capacity(z.len());
        let mut log = Vec::with_capacity(z.len());
        for &zm in z {
            cauchy.push(cauchy_weights(n, zm)?.0);
            log.push(log_weights(n, zm)?);
        }
        Ok(Self {
            n,
            z: z.to_vec(),
            cauchy,
            log,
        })
    }

    pub fn cauchy_apply(&self, m: usize, f: &[f64]) -> Result<f64> {
        check_len(self.n, f.len())?;
        Ok(self.cauchy[m].iter().zip(f).map(|(w, v)| w * v).sum())
    }

    pub fn log_apply(&self, m: usize, f: &[f64]) -> Result<f64> {
        check_len(self.n, f.len())?;
        Ok(self.log[m].iter().zip(f).map(|(w, v)| w * v).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_small_orders() {
        assert_eq!(cauchy_s(0, 0.3), 0.0);
        assert!((cauchy_s(1, 0.0) - 2.0).abs() < 1e-15);
        assert!((cauchy_s(2, 0.4) - 1.6).abs() < 1e-15);
    }

    #[test]
    fn pv_of_t_over_t_minus_half() {
        // PV integral t/(t - 1/2) = 2 + (1/2) log(1/3)
        let v = cauchy_i(1, 0.5).unwrap();
        assert!((v - (2.0 + 0.5 * (1.0f64 / 3.0).ln())).abs() < 1e-14);
    }

    #[test]
    fn j0_closed_form_and_endpoints() {
        let z: f64 = 0.37;
        let want = (1.0 - z) * (1.0 - z).ln() + (1.0 + z) * (1.0 + z).ln() - 2.0;
        assert!((log_j(0, z).unwrap() - want).abs() < 1e-14);
        assert!((log_j(0, 0.0).unwrap() + 2.0).abs() < 1e-15);
        assert!((log_j(0, 1.0).unwrap() - (2.0 * LN_2 - 2.0)).abs() < 1e-14);
        assert!((log_j(1, -1.0).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn edge_is_rejected_for_cauchy() {
        assert!(matches!(cauchy_i(3, 1.0), Err(Error::Domain(_))));
        assert!(cauchy_weights(8, -1.0).is_err());
    }

    #[test]
    fn log_weights_continuous_at_edges() {
        let n = 12;
        for &e in &[1.0, -1.0] {
            let lim = log_weights(n, e).unwrap();
            let near = log_weights(n, e * (1.0 - 1e-11)).unwrap();
            for j in 0..n {
                assert!(
                    (lim[j] - near[j]).abs() < 1e-9,
                    "j={j} {} {}",
                    lim[j],
                    near[j]
                );
            }
        }
    }

    #[test]
    fn outside_segment_uses_plain_weights() {
        let n = 20;
        let ops = operators(n).unwrap();
        let f: Vec<f64> = ops.t.iter().map(|t| 1.0 + t).collect();
        let v = cauchy_integral(&f, 2.0, 0.0, None).unwrap();
        // integral (1 + t)/(t - 2) = 2 + 3 log(1/3)
        assert!((v.re - (2.0 + 3.0 * (1.0f64 / 3.0).ln())).abs() < 1e-12);
    }
}
