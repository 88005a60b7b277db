//! Polynomial tensor fields with Young symmetry and the differential Y ∘ ∂.

mod complex;
mod diagram;
mod potential;
mod spin;

#[cfg(test)]
mod tests;

pub use complex::{poincare_verify, spin_sequence_check, OmegaN, PoincareReport, PoincareRow, PolyTensorField, SpinReport, SpinRow};
pub use diagram::{symmetrizer_apply, Symmetrizer, SymmetrySpace, YoungDiagram};
pub use crate::poly::{monomial_count, Monomials, Poly};
pub use potential::{
    divergence, double_divergence, epsilon3, has_riemann_symmetry, potential_solve, random_divergence_free, ratio,
    PotentialSolution,
};
pub use spin::{field_polys, field_strength_constant, linearized_curvature_constant};
