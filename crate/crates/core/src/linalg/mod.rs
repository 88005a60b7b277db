//! Exact sparse linear algebra: elimination, kernels, images, quotients.

mod echelon;
mod matrix;
mod sparse;
mod subspace;

pub use echelon::Echelon;
pub use matrix::{ColumnMatrix, ExactMatrix};
pub use sparse::SparseVec;
#[allow(unused_imports)]
pub(crate) use sparse::Accumulator;
pub use subspace::{
    image_basis, induced_map, is_exact_at, kernel_basis, membership, quotient_coordinates, rank, solve, Quotient,
    Subspace,
};

#[cfg(test)]
mod tests;
