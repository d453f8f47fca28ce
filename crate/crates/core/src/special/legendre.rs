//! Legendre functions of the first and second kind off the cut, `z > 1`.

use crate::error::{Error, Result};

/// Values `P_l(z)`, `W_{l-1}(z)` and `Q_l(z)` for `z > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegendrePQ {
    pub p: f64,
    pub w: f64,
    pub q: f64,
}

pub fn legendre_p_all(l: usize, z: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(l + 1);
    p.push(1.0);
    if l >= 1 {
        p.push(z);
    }
    for n in 1..l {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0) * z * p[n] - nf * p[n - 1]) / (nf + 1.0);
        p.push(next);
    }
    p
}

pub fn legendre_p(l: usize, z: f64) -> f64 {
    legendre_p_all(l, z)[l]
}

// Q_l(z) = sqrt(pi) l! / (Gamma(l+3/2) (2z)^{l+1}) 2F1((l+1)/2, (l+2)/2; l+3/2; 1/z^2)
fn q_hypergeometric(l: usize, z: f64) -> f64 {
    let lf = l as f64;
    let y = 1.0 / (z * z);
    let (a, b, c) = (0.5 * (lf + 1.0), 0.5 * (lf + 2.0), lf + 1.5);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..2000 {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * y;
        sum += term;
        if term <= 1e-17 * sum {
            break;
        }
    }
    // sqrt(pi) l!/Gamma(l+3/2) = 2^{l+1} l!^2 / (2l+1)!
    let mut pre = 2.0;
    for k in 1..=l {
        pre *= 2.0 * k as f64 / (2 * k + 1) as f64;
    }
    pre / (2.0 * z).powi(l as i32 + 1) * sum
}

/// `Q_l = P_l * (1/2) ln((z+1)/(z-1)) - W_{l-1}` with `W_{l-1} = sum_{n=1}^{l} P_{n-1} P_{l-n} / n`.
///
/// For `z >= 2` `Q` comes from its hypergeometric series, avoiding the cancellation in the split.
pub fn legendre_pq(l: usize, z: f64) -> Result<LegendrePQ> {
    if !(z > 1.0) {
        return Err(Error::Domain(format!("Legendre Q needs z > 1, got {z}")));
    }
    let p = legendre_p_all(l, z);
    let w: f64 = (1..=l).map(|n| p[n - 1] * p[l - n] / n as f64).sum();
    let q = if z >= 2.0 {
        q_hypergeometric(l, z)
    } else {
        p[l] * 0.5 * ((z + 1.0) / (z - 1.0)).ln() - w
    };
    Ok(LegendrePQ { p: p[l], w, q })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_identities() {
        let r = legendre_pq(0, 3.0).unwrap();
        assert!((r.q - 0.5 * 2f64.ln()).abs() < 1e-14 && r.w == 0.0);
        let z = 2.0;
        let q0 = legendre_pq(0, z).unwrap().q;
        assert!((legendre_pq(1, z).unwrap().q - (z * q0 - 1.0)).abs() < 1e-13);
        for l in 0..8 {
            assert!((legendre_p(l, 1.0) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn split_and_series_agree() {
        for l in 0..8 {
            for &z in &[2.0, 2.5, 4.0] {
                let p = legendre_p_all(l, z);
                let w: f64 = (1..=l).map(|n| p[n - 1] * p[l - n] / n as f64).sum();
                let split = p[l] * 0.5 * ((z + 1.0) / (z - 1.0)).ln() - w;
                let ser = q_hypergeometric(l, z);
                assert!(
                    (split - ser).abs() < 1e-14 * w.max(1.0) + 1e-12 * ser,
                    "l={l} z={z}"
                );
            }
        }
    }

    #[test]
    fn q_recurrence() {
        for &z in &[1.05, 1.7, 3.0, 25.0] {
            let q: Vec<f64> = (0..6).map(|l| legendre_pq(l, z).unwrap().q).collect();
            for n in 1..5 {
                let nf = n as f64;
                let lhs = (nf + 1.0) * q[n + 1];
                let rhs = (2.0 * nf + 1.0) * z * q[n] - nf * q[n - 1];
                assert!((lhs - rhs).abs() < 1e-9 * q[n - 1].abs(), "z={z} n={n}");
            }
        }
    }
}
