//! Ghost complexes for polynomial constraint systems: Koszul resolution, longitudinal
//! differential and the perturbation tower δ = Σ δ_r.

pub mod examples;
mod ghost;
mod koszul;
mod longitudinal;
mod system;
mod tower;
mod verify;

#[cfg(test)]
mod tests;

pub use ghost::{generators, leibniz_holds, tower_sum, AntiDerivation, Ghost, GhostBasis, Weights};
pub use koszul::{koszul, koszul_report, koszul_weight_complex, quotient_dim, KoszulReport, KoszulRow};
pub use longitudinal::{derivation_forms, LongitudinalForms};
pub use system::{PolyConstraintSystem, VectorField};
pub use tower::{build_delta0_delta1, CohomologyRow, GhostComplex};
pub use verify::{theorem4_verify, Theorem4Report, Theorem4Row};
