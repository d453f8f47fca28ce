pub mod analytic;
pub mod cheb;
pub mod configspace;
pub mod error;
pub mod linalg;
pub mod momentum;
pub mod potential;
pub mod quad;
pub mod roots;
pub mod singular;
pub mod solvers;
pub mod special;
pub mod study;

pub use cheb::{ChebGrid, SpectralCoeffs};
pub use configspace::{
    BoundState, Diagnostics, Method, ScatteringLength, ScatteringOutput, SolveConfig,
};
pub use error::{Error, Result};
pub use potential::{PotentialKind, PotentialModel};
pub use quad::{RationalMap, SpectralOperators};
pub use singular::SingularWeightSet;
pub use solvers::{KernelOnGrid, LinearSolveReport};
