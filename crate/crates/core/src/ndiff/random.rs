//! Seeded random instances with known Jordan structure.

use rand::Rng;

use super::{NDiffModule, ShortExactSequence};
use crate::error::Result;
use crate::linalg::{ExactMatrix, SparseVec, Subspace};
use crate::scalars::Field;

/// Random multiplicities (m_1, ..., m_N) with Σ n m_n ≤ max_dim and at least one block.
pub fn random_multiplicities<R: Rng>(rng: &mut R, n: usize, max_dim: usize) -> Vec<usize> {
    let target = rng.gen_range(1..=max_dim);
    let mut mult = vec![0usize; n];
    let mut dim = 0;
    loop {
        let size = rng.gen_range(1..=n);
        if dim + size > target {
            if dim == 0 {
                continue;
            }
            break;
        }
        mult[size - 1] += 1;
        dim += size;
    }
    mult
}

/// d ↦ P d P⁻¹ for P a product of elementary unimodular matrices.
pub fn conjugate_randomly<F: Field, R: Rng>(rng: &mut R, d: &ExactMatrix<F>, ops: usize) -> ExactMatrix<F> {
    let n = d.rows();
    if n < 2 {
        return d.clone();
    }
    let mut a = d.to_dense();
    for _ in 0..ops {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = F::from_i64(if rng.gen_bool(0.5) { 1 } else { -1 });
        // row_i += c row_j, then col_j -= c col_i
        let rj = a[j].clone();
        for (x, y) in a[i].iter_mut().zip(rj.iter()) {
            *x += &(c.clone() * y);
        }
        for row in a.iter_mut() {
            let t = row[i].clone();
            row[j].sub_mul(&c, &t);
        }
    }
    ExactMatrix::from_dense(&a)
}

/// A random module and the multiplicities it was built from.
pub fn random_module<F: Field, R: Rng>(rng: &mut R, n: usize, max_dim: usize) -> (NDiffModule<F>, Vec<usize>) {
    let mult = random_multiplicities(rng, n, max_dim);
    let base = NDiffModule::<F>::from_multiplicities(n, &mult).expect("Jordan blocks are nilpotent");
    let ops = 2 * base.dim();
    let d = conjugate_randomly(rng, base.d(), ops);
    (NDiffModule::new(n, d).expect("conjugation preserves d^N = 0"), mult)
}

/// Submodule generated by `gens` under d, as a short exact sequence E → F → F/E.
pub fn ses_from_generators<F: Field>(f: NDiffModule<F>, gens: &[SparseVec<F>]) -> Result<ShortExactSequence<F>> {
    let n = f.n();
    let dim = f.dim();
    let mut span = Vec::new();
    for g in gens {
        let mut v = g.clone();
        for _ in 0..n {
            if v.is_zero() {
                break;
            }
            span.push(v.clone());
            v = f.d().apply(&v);
        }
    }
    let sub = Subspace::span(dim, span);
    let basis = sub.basis().to_vec();
    let phi = ExactMatrix::from_columns(dim, &basis);
    let d_e_cols: Vec<SparseVec<F>> =
        basis.iter().map(|b| sub.coordinates(&f.d().apply(b)).expect("span is d-stable")).collect();
    let d_e = ExactMatrix::from_columns(basis.len(), &d_e_cols);

    let pivots: Vec<usize> = basis.iter().map(|b| b.leading().unwrap()).collect();
    let comp: Vec<usize> = (0..dim).filter(|k| !pivots.contains(k)).collect();
    let to_g = |k: usize| comp.binary_search(&k).ok();
    let mut psi_cols = vec![SparseVec::new(); dim];
    for (pos, &k) in comp.iter().enumerate() {
        psi_cols[k] = SparseVec::unit(pos);
    }
    for (b, &p) in basis.iter().zip(&pivots) {
        psi_cols[p] = b.remap(to_g).neg();
    }
    let psi = ExactMatrix::from_columns(comp.len(), &psi_cols);
    let lift = ExactMatrix::from_columns(dim, &comp.iter().map(|&k| SparseVec::unit(k)).collect::<Vec<_>>());
    let d_g = psi.mul(f.d()).mul(&lift);
    let e = NDiffModule::new(n, d_e)?;
    let g = NDiffModule::new(n, d_g)?;
    ShortExactSequence::new(e, f, g, phi, psi)
}

pub fn random_ses<F: Field, R: Rng>(rng: &mut R, n: usize, max_dim: usize) -> ShortExactSequence<F> {
    let (f, _) = random_module::<F, R>(rng, n, max_dim);
    let k = rng.gen_range(1..=2);
    let gens: Vec<SparseVec<F>> = (0..k)
        .map(|_| {
            let pairs = (0..3).map(|_| (rng.gen_range(0..f.dim()), F::from_i64(rng.gen_range(-2..=2)))).collect();
            SparseVec::from_pairs(pairs)
        })
        .collect();
    ses_from_generators(f, &gens).expect("submodule construction is exact")
}

/// E ⊕ G with the inclusion and projection.
pub fn split_ses<F: Field>(e: &NDiffModule<F>, g: &NDiffModule<F>) -> Result<ShortExactSequence<F>> {
    let f = NDiffModule::new(e.n(), e.d().direct_sum(g.d()))?;
    let phi = ExactMatrix::identity(e.dim()).vstack(&ExactMatrix::zeros(g.dim(), e.dim()));
    let psi = ExactMatrix::zeros(g.dim(), e.dim()).hstack(&ExactMatrix::identity(g.dim()));
    ShortExactSequence::new(e.clone(), f, g.clone(), phi, psi)
}
