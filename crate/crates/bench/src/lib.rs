//! Shared fixtures for the benchmarks.

use specqm_core::PotentialModel;

/// Morse range parameter of the deuteron fit, in units of `a`.
pub const DEUTERON_D: f64 = 0.8668 / 0.3408;

pub fn exponential() -> PotentialModel {
    PotentialModel::exponential(0.8, 1.0).expect("valid model")
}

pub fn hulthen() -> PotentialModel {
    PotentialModel::hulthen(0.8, 1.0).expect("valid model")
}

pub fn morse() -> PotentialModel {
    PotentialModel::morse(0.2, 1.0, DEUTERON_D).expect("valid model")
}

pub const SIZES: [usize; 3] = [32, 64, 128];
