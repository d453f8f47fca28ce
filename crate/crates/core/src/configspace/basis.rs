use crate::error::{Error, Result};
use crate::potential::PotentialModel;
use crate::special::bessel::{modified_riccati, riccati_free, FreePair};
use crate::special::{coulomb_fg, neg_energy_coulomb, CoulombParams};

/// Free (or Coulomb) solution pair outside the short-range potential.
///
/// `pair(r)` returns values with derivatives in `r`. For scattering
/// `f g' - g f' = -p`, for bound states `f~ h~' - h~ f~' = -kappa`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Basis {
    Scattering { l: usize, p: f64, eta: f64 },
    Bound { l: usize, kappa: f64, eta: f64 },
}

impl Basis {
    pub fn scattering(model: &PotentialModel, l: usize, p: f64) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::Domain(format!("momentum must be positive, got {p}")));
        }
        Ok(Self::Scattering {
            l,
            p,
            eta: model.eta(p),
        })
    }

    pub fn bound(model: &PotentialModel, l: usize, kappa: f64) -> Result<Self> {
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::Domain(format!(
                "kappa must be positive, got {kappa}"
            )));
        }
        Ok(Self::Bound {
            l,
            kappa,
            eta: model.coulomb_zeta() / kappa,
        })
    }

    /// `p` or `kappa`.
    pub fn k(&self) -> f64 {
        match *self {
            Self::Scattering { p, .. } => p,
            Self::Bound { kappa, .. } => kappa,
        }
    }

    pub fn pair(&self, r: f64) -> Result<FreePair> {
        let (v, k) = match *self {
            Self::Scattering { l, p, eta } => {
                let v = if eta == 0.0 {
                    riccati_free(l, p * r)?
                } else {
                    coulomb_fg(CoulombParams::new(l, eta, p * r)?)?
                };
                (v, p)
            }
            Self::Bound { l, kappa, eta } => {
                let v = if eta == 0.0 {
                    modified_riccati(l, kappa * r)?
                } else {
                    neg_energy_coulomb(l, eta, kappa * r)?
                };
                (v, kappa)
            }
        };
        Ok(FreePair {
            df: k * v.df,
            dg: k * v.dg,
            ..v
        })
    }
}
