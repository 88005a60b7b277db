use serde::Serialize;

use crate::error::{NcxError, Result};
use crate::graded::{Boundary, GradedNComplex};
use crate::linalg::{rank, ExactMatrix, SparseVec};
use crate::poly::{monomial_count, Monomials, Poly};
use crate::scalars::Field;

use super::ghost::{AntiDerivation, Ghost, GhostBasis, Weights};

fn koszul_data<F: Field>(u: &[Poly<F>], d: usize) -> Result<(Weights, AntiDerivation<F>)> {
    let mut pi = Vec::new();
    for (a, p) in u.iter().enumerate() {
        match p.homogeneous_degree() {
            Some(g) if p.terms().all(|(m, _)| m.len() == d) => pi.push(g as i64),
            _ => return Err(NcxError::Invalid(format!("u{} must be a nonzero homogeneous polynomial in {d} variables", a + 1))),
        }
    }
    if u.len() > 16 {
        return Err(NcxError::Invalid("at most 16 constraints".into()));
    }
    let mut du = AntiDerivation::zero(d, u.len(), 0);
    du.on_pi = u.iter().map(|p| Ghost::poly(p.clone())).collect();
    Ok((Weights { d, pi, chi: Vec::new() }, du))
}

/// Koszul complex of u in weight w (x_i weight 1, π_α weight deg u_α), degrees −m..0.
pub fn koszul_weight_complex<F: Field>(u: &[Poly<F>], d: usize, w: usize) -> Result<GradedNComplex<F>> {
    let (wts, du) = koszul_data(u, d)?;
    let m = u.len() as i64;
    let bases: Vec<GhostBasis> = (-m..=0).map(|n| GhostBasis::total(&wts, w as i64, n)).collect();
    let maps = bases.windows(2).map(|b| b[0].matrix(|g| du.apply(g), &b[1])).collect::<Result<Vec<_>>>()?;
    GradedNComplex::with_boundaries(2, -m, bases.iter().map(|b| b.dim()).collect(), maps, Boundary::Zero, Boundary::Zero)
}

/// Direct sum of the weight complexes for w ≤ w_max.
pub fn koszul<F: Field>(u: &[Poly<F>], d: usize, w_max: usize) -> Result<GradedNComplex<F>> {
    let parts = (0..=w_max).map(|w| koszul_weight_complex(u, d, w)).collect::<Result<Vec<_>>>()?;
    let m = u.len() as i64;
    let dims: Vec<usize> = (-m..=0).map(|k| parts.iter().map(|c| c.component_dim(k).unwrap()).sum()).collect();
    let maps = (-m..0)
        .map(|k| parts.iter().fold(ExactMatrix::zeros(0, 0), |acc, c| acc.direct_sum(&c.map(k).unwrap())))
        .collect();
    GradedNComplex::with_boundaries(2, -m, dims, maps, Boundary::Zero, Boundary::Zero)
}

/// dim of (Poly/(u)) in degree w, from the span of u_β times monomials.
pub fn quotient_dim<F: Field>(u: &[Poly<F>], d: usize, w: usize) -> usize {
    let mons = Monomials::new(d, w);
    let mut cols = Vec::new();
    for p in u {
        let g = p.homogeneous_degree().unwrap_or(usize::MAX);
        if g > w {
            continue;
        }
        for m in Monomials::new(d, w - g).iter() {
            let prod = p.mul(&Poly::monomial(m.clone(), F::one()));
            cols.push(SparseVec::from_pairs(prod.terms().map(|(mm, c)| (mons.index_of(mm).unwrap(), c.clone())).collect()));
        }
    }
    let ideal = rank(&ExactMatrix::from_columns(mons.len(), &cols));
    monomial_count(d, w) - ideal
}

#[derive(Debug, Clone, Serialize)]
pub struct KoszulRow {
    pub weight: usize,
    pub degree: i64,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct KoszulReport {
    pub rows: Vec<KoszulRow>,
    /// H^n = 0 for n ≠ 0 at every weight
    pub acyclic: bool,
    /// H⁰ at weight w equals dim (Poly/(u))_w
    pub h0_matches: bool,
    pub regular_asserted: bool,
    /// regularity asserted but higher homology found
    pub discrepancy: bool,
}

pub fn koszul_report<F: Field>(u: &[Poly<F>], d: usize, w_max: usize, regular_asserted: bool) -> Result<KoszulReport> {
    let mut rows = Vec::new();
    let (mut acyclic, mut h0_matches) = (true, true);
    for w in 0..=w_max {
        let c = koszul_weight_complex(u, d, w)?;
        let h = c.homology();
        for k in c.degrees() {
            let dim = h.dim(k, 1).unwrap_or(0);
            if k < 0 && dim != 0 {
                acyclic = false;
            }
            if k == 0 && dim != quotient_dim(u, d, w) {
                h0_matches = false;
            }
            rows.push(KoszulRow { weight: w, degree: k, dim });
        }
    }
    Ok(KoszulReport { rows, acyclic, h0_matches, regular_asserted, discrepancy: regular_asserted && !acyclic })
}
