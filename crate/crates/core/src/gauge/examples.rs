//! Hand-built Hochschild inputs: (U, ℋ with A and ℋ_I, the U-action on ℋ).

use super::{AugmentedAlgebra, GaugeInstance};
use crate::error::Result;
use crate::linalg::{ExactMatrix, SparseVec};
use crate::scalars::{Cyclotomic, Field};

type C = Cyclotomic;

/// The triple consumed by `HochschildExtension::new` and `theorem6_verify`.
pub type HochschildInput = (AugmentedAlgebra<C>, GaugeInstance<C>, Vec<ExactMatrix<C>>);

fn q_for(n: usize) -> C {
    C::root_of_unity(2 * n as u32, 1)
}

fn int_matrix(rows: &[&[i64]]) -> ExactMatrix<C> {
    ExactMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| C::from_i64(x)).collect()).collect::<Vec<_>>())
}

fn vector(xs: &[i64]) -> SparseVec<C> {
    SparseVec::from_dense(&xs.iter().map(|&x| C::from_i64(x)).collect::<Vec<_>>())
}

/// ℤ₂ swapping the two coordinates of 𝕜², A = 0, N = 3.
pub fn z2_example() -> Result<HochschildInput> {
    let u = AugmentedAlgebra::group_z2();
    let swap = int_matrix(&[&[0, 1], &[1, 0]]);
    let action = vec![ExactMatrix::identity(2), swap];
    let g = GaugeInstance::new(3, ExactMatrix::zeros(2, 2), vec![vector(&[1, 1])], q_for(3))?;
    Ok((u, g, action))
}

/// U = k[x, y]/(x², y²) on ℋ = k[x]/(x²) ⊗ k² with x and y both acting by x,
/// A = x ⊗ 1 + 1 ⊗ J, N = 3.
pub fn synthetic_example() -> Result<HochschildInput> {
    let u = AugmentedAlgebra::square_zero_pair();
    let x = int_matrix(&[&[0, 0], &[1, 0]]).kron(&ExactMatrix::identity(2));
    let j = ExactMatrix::identity(2).kron(&int_matrix(&[&[0, 1], &[0, 0]]));
    let action = vec![ExactMatrix::identity(4), x.clone(), x.clone(), ExactMatrix::zeros(4, 4)];
    let a = x.add(&j);
    let g = GaugeInstance::new(3, a, vec![vector(&[0, 0, 1, 0]), vector(&[0, 0, 0, 1])], q_for(3))?;
    Ok((u, g, action))
}
