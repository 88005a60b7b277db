//! Small constraint systems used by tests, the acceptance suite and the CLI.

use super::{PolyConstraintSystem, VectorField};
use crate::poly::Poly;
use crate::scalars::{Field, Rational};

type Q = Rational;

pub(crate) fn mono(d: usize, exps: &[(usize, u32)], c: i64) -> Poly<Q> {
    let mut e = vec![0; d];
    for (i, k) in exps {
        e[*i] = *k;
    }
    Poly::monomial(e, Q::from_i64(c))
}

pub(crate) fn var(d: usize, i: usize) -> Poly<Q> {
    mono(d, &[(i, 1)], 1)
}

pub(crate) fn field(d: usize, comps: &[(usize, Poly<Q>)]) -> VectorField<Q> {
    let mut c = vec![Poly::zero(); d];
    for (i, p) in comps {
        c[*i] = p.clone();
    }
    VectorField::new(c)
}

/// x, z1, z2 with u = (z1, z2), ξ1 = x²∂x, ξ2 = x z1 ∂x and a syzygy in the witnesses of ξ1
pub fn syzygy_model() -> PolyConstraintSystem<Q> {
    let d = 3;
    let f1 = field(d, &[(0, mono(d, &[(0, 2)], 1))]);
    let f2 = field(d, &[(0, mono(d, &[(0, 1), (1, 1)], 1))]);
    let zero = vec![vec![Poly::zero(); 2]; 2];
    let mut a1 = zero.clone();
    a1[0][0] = var(d, 2);
    a1[0][1] = var(d, 1).scale(&Q::from_i64(-1));
    PolyConstraintSystem::new(d, vec![var(d, 1), var(d, 2)], vec![f1, f2], None, Some(vec![a1, zero]), true).unwrap()
}

/// coordinates (x1, …, xk, p1, …, pk), u = (p1, …, pc), ξ = (∂x1, …, ∂xc)
pub fn abelian_model(k: usize, c: usize) -> PolyConstraintSystem<Q> {
    let d = 2 * k;
    let u = (0..c).map(|a| var(d, k + a)).collect();
    let xi = (0..c).map(|a| VectorField::coordinate(d, a)).collect();
    PolyConstraintSystem::new(d, u, xi, None, None, true).unwrap()
}
