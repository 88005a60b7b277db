use crate::error::{NcxError, Result};
use crate::linalg::SparseVec;
use crate::scalars::Field;

use super::complex::{OmegaN, PolyTensorField};
use super::diagram::decode;
use crate::poly::{Monomials, Poly};
use super::potential::ratio;

/// Full tensor components of a field as polynomials, big-endian index.
pub fn field_polys<F: Field>(omega: &OmegaN<F>, f: &PolyTensorField<F>) -> Vec<Poly<F>> {
    let mut out = vec![Poly::zero(); omega.d().pow(f.p as u32)];
    for (m, t) in omega.components(f) {
        for (k, c) in t.iter() {
            out[*k].add_term(m.clone(), c.clone());
        }
    }
    out
}

fn basis_fields<F: Field>(omega: &OmegaN<F>, p: usize, w_poly: usize) -> Vec<PolyTensorField<F>> {
    (0..Monomials::new(omega.d(), w_poly).len() * omega.tensor_dim(p))
        .map(|j| PolyTensorField { p, w_poly, coords: SparseVec::unit(j) })
        .collect()
}

/// Common c with d A = c·(∂_a A_b − ∂_b A_a) on every polynomial one-form up to `w_max`.
pub fn field_strength_constant<F: Field>(d: usize, w_max: usize) -> Result<F> {
    let omega = OmegaN::<F>::new(2, d, 2)?;
    let mut common: Option<F> = None;
    for g in 1..=w_max {
        for a in basis_fields(&omega, 1, g) {
            let av = field_polys(&omega, &a);
            let da = field_polys(&omega, &omega.differential(&a));
            let explicit: Vec<Poly<F>> = (0..d * d)
                .map(|k| {
                    let (x, y) = (k / d, k % d);
                    av[y].derivative(x).add(&av[x].derivative(y).scale(&-F::one()))
                })
                .collect();
            common = merge(common, &da, &explicit)?;
        }
    }
    Ok(common.unwrap_or_else(F::one))
}

/// Common c with d²h = c·R(h) on every symmetric polynomial two-tensor up to `w_max`,
/// where R(h)_{λρμν} = ∂_λ∂_ρ h_{μν} + ∂_μ∂_ν h_{λρ} − ∂_μ∂_ρ h_{λν} − ∂_λ∂_ν h_{μρ}
/// and (λ, μ), (ρ, ν) are the columns of the (2, 2) diagram.
pub fn linearized_curvature_constant<F: Field>(d: usize, w_max: usize) -> Result<F> {
    let omega = OmegaN::<F>::new(3, d, 4)?;
    let mut common: Option<F> = None;
    for g in 2..=w_max {
        for h in basis_fields(&omega, 2, g) {
            let hv = field_polys(&omega, &h);
            let dd = field_polys(&omega, &omega.differential(&omega.differential(&h)));
            let part = |a: usize, b: usize, c: usize, e: usize| hv[c * d + e].derivative(a).derivative(b);
            let explicit: Vec<Poly<F>> = (0..d.pow(4))
                .map(|k| {
                    let i = decode(k, d, 4);
                    let (l, r, m, n) = (i[0], i[1], i[2], i[3]);
                    part(l, r, m, n)
                        .add(&part(m, n, l, r))
                        .add(&part(m, r, l, n).scale(&-F::one()))
                        .add(&part(l, n, m, r).scale(&-F::one()))
                })
                .collect();
            common = merge(common, &dd, &explicit)?;
        }
    }
    Ok(common.unwrap_or_else(F::one))
}

fn merge<F: Field>(common: Option<F>, got: &[Poly<F>], explicit: &[Poly<F>]) -> Result<Option<F>> {
    let fail = || NcxError::NotExact("d-power is not proportional to the explicit operator".into());
    if explicit.iter().all(|p| p.is_zero()) {
        return if got.iter().all(|p| p.is_zero()) { Ok(common) } else { Err(fail()) };
    }
    let next = ratio(got, explicit).ok_or_else(fail)?;
    match common {
        Some(c) if c != next => Err(NcxError::NotExact(format!("constants differ: {c} vs {next}"))),
        _ => Ok(Some(next)),
    }
}
