//! Model potentials, stored as `u(r) = 2 mu V(r)`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PotentialKind {
    Exponential,
    Hulthen,
    Morse,
    /// Attractive point Coulomb potential; `a` is the Bohr radius and `z` the charge.
    CoulombPoint,
}

impl std::str::FromStr for PotentialKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exp" | "exponential" => Ok(Self::Exponential),
            "hulthen" => Ok(Self::Hulthen),
            "morse" => Ok(Self::Morse),
            "coulomb" => Ok(Self::CoulombPoint),
            other => Err(Error::InvalidInput(format!("unknown potential '{other}'"))),
        }
    }
}

/// A local central potential.
///
/// For the short-range kinds `z` adds a point-Coulomb tail `2 mu V_C = 2 z / (bohr r)`,
/// so `z > 0` is repulsive and the Sommerfeld parameter is `z / (bohr p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialModel {
    pub kind: PotentialKind,
    /// `s = 2 mu V0 a^2`; negative `s` turns the Morse well into a barrier.
    pub s: f64,
    pub a: f64,
    pub d: f64,
    pub z: f64,
    pub bohr: f64,
    pub mu: f64,
}

impl PotentialModel {
    pub fn new(kind: PotentialKind, s: f64, a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "range a must be positive, got {a}"
            )));
        }
        if !s.is_finite() {
            return Err(Error::InvalidInput("strength must be finite".into()));
        }
        let z = if kind == PotentialKind::CoulombPoint {
            1.0
        } else {
            0.0
        };
        Ok(Self {
            kind,
            s,
            a,
            d: 0.0,
            z,
            bohr: 1.0,
            mu: 1.0,
        })
    }

    pub fn exponential(s: f64, a: f64) -> Result<Self> {
        Self::new(PotentialKind::Exponential, s, a)
    }

    pub fn hulthen(s: f64, a: f64) -> Result<Self> {
        Self::new(PotentialKind::Hulthen, s, a)
    }

    pub fn morse(s: f64, a: f64, d: f64) -> Result<Self> {
        Ok(Self {
            d,
            ..Self::new(PotentialKind::Morse, s, a)?
        })
    }

    pub fn coulomb(z: f64, bohr: f64) -> Result<Self> {
        if !(z > 0.0) {
            return Err(Error::InvalidInput(format!(
                "only the attractive Coulomb case is supported, got Z = {z}"
            )));
        }
        Ok(Self {
            z,
            ..Self::new(PotentialKind::CoulombPoint, 0.0, bohr)?
        })
    }

    /// Adds a Coulomb tail with charge product `z` and Bohr radius `bohr`.
    pub fn with_coulomb(mut self, z: f64, bohr: f64) -> Result<Self> {
        if self.kind == PotentialKind::CoulombPoint {
            return Err(Error::InvalidInput(
                "the point-Coulomb model already carries its charge".into(),
            ));
        }
        if !(bohr > 0.0) {
            return Err(Error::InvalidInput(format!(
                "Bohr radius must be positive, got {bohr}"
            )));
        }
        self.z = z;
        self.bohr = bohr;
        Ok(self)
    }

    pub fn with_strength(self, s: f64) -> Self {
        Self { s, ..self }
    }

    /// `zeta` in `2 mu V_C = 2 zeta / r`; zero without a Coulomb part.
    pub fn coulomb_zeta(&self) -> f64 {
        match self.kind {
            PotentialKind::CoulombPoint => -self.z / self.a,
            _ => self.z / self.bohr,
        }
    }

    pub fn has_coulomb(&self) -> bool {
        self.coulomb_zeta() != 0.0
    }

    /// `2 mu V` of the short-range part.
    pub fn short_u(&self, r: f64) -> f64 {
        let a = self.a;
        let g = self.s / (a * a);
        match self.kind {
            PotentialKind::Exponential => -g * (-r / a).exp(),
            PotentialKind::Hulthen => -g / (r / a).exp_m1(),
            PotentialKind::Morse => {
                let e = ((self.d - r) / a).exp();
                -g * e * (2.0 - e)
            }
            PotentialKind::CoulombPoint => 0.0,
        }
    }

    /// `2 mu V` including the Coulomb part.
    pub fn total_u(&self, r: f64) -> f64 {
        self.short_u(r) + 2.0 * self.coulomb_zeta() / r
    }

    /// `lim_{r->0} r u(r)` of the total potential.
    pub fn origin_residue(&self) -> f64 {
        let short = match self.kind {
            PotentialKind::Hulthen => -self.s / self.a,
            _ => 0.0,
        };
        short + 2.0 * self.coulomb_zeta()
    }

    /// Boundary constant `chi(0) = mu lim r V / (l+1)`.
    pub fn c_constant(&self, l: usize) -> f64 {
        self.origin_residue() / (2.0 * (l as f64 + 1.0))
    }

    /// Sommerfeld parameter at momentum `p`.
    pub fn eta(&self, p: f64) -> f64 {
        self.coulomb_zeta() / p
    }

    pub fn energy(&self, k2: f64) -> f64 {
        k2 / (2.0 * self.mu)
    }
}
