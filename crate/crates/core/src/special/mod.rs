//! Special functions used by the physics solvers and the closed-form oracles.

pub mod bessel;
pub mod coulomb;
pub mod gamma;
pub mod hyper;
pub mod legendre;

pub use bessel::{
    bessel_ik, bessel_jy, complex_order_bessel_j, modified_riccati, riccati_free, FreePair,
};
pub use coulomb::{
    coulomb_fg, coulomb_fg_flagged, coulomb_h_logderiv, coulomb_h_tilde, neg_energy_coulomb,
    zero_energy_coulomb, CoulombParams,
};
pub use gamma::{digamma, digamma_complex, gamma, ln_gamma_complex, EULER_GAMMA};
pub use hyper::{kummer_m, kummer_m_complex, tricomi_u, tricomi_u_int_b_complex};
pub use legendre::{legendre_p, legendre_pq, LegendrePQ};
