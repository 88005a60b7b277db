//! Quantum-gauge extensions: ℋ• with Q = d + A, its Hochschild-cochain version, and the
//! spin-one and spin-two ghost complexes at a fixed light-cone momentum.

pub mod examples;
mod hochschild;
mod instance;
mod spin;

#[cfg(test)]
mod tests;

pub use hochschild::{theorem6_verify, AugmentedAlgebra, HochschildExtension, Theorem6Report, Theorem6Row};
pub use instance::{
    extend, random_instance, theorem5_verify, universal_extension, wznw_shaped, ExtendedSpace, GaugeInstance,
    Theorem5Report, Theorem5Row, UniversalExtension,
};
pub use spin::{
    spin1_complex, spin1_form, spin1_q, spin2_complex, two_particle_study, Momentum, SpinComplex, SpinComplexReport,
    TwoParticleReport,
};
