use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{NcxError, Result};
use crate::linalg::{kernel_basis, solve, ExactMatrix, SparseVec};
use crate::poly::{Monomials, Poly};
use crate::scalars::Field;

use super::complex::OmegaN;

/// Levi-Civita symbol in three dimensions.
pub fn epsilon3(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn idx4(a: usize, b: usize, c: usize, d: usize) -> usize {
    ((a * 3 + b) * 3 + c) * 3 + d
}

/// ∂_μ T^{μν} for a 3×3 matrix of polynomials.
pub fn divergence<F: Field>(t: &[Vec<Poly<F>>]) -> Vec<Poly<F>> {
    (0..3).map(|nu| (0..3).fold(Poly::zero(), |acc, mu| acc.add(&t[mu][nu].derivative(mu)))).collect()
}

/// S^{μν} = ∂_λ ∂_ρ R^{λμρν}.
pub fn double_divergence<F: Field>(r: &[Poly<F>]) -> Vec<Vec<Poly<F>>> {
    (0..3)
        .map(|mu| {
            (0..3)
                .map(|nu| {
                    let mut acc = Poly::zero();
                    for l in 0..3 {
                        for rh in 0..3 {
                            acc = acc.add(&r[idx4(l, mu, rh, nu)].derivative(l).derivative(rh));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Antisymmetry in each pair, pair exchange and the cyclic identity.
pub fn has_riemann_symmetry<F: Field>(r: &[Poly<F>]) -> bool {
    let m1 = -F::one();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    let x = &r[idx4(a, b, c, d)];
                    if *x != r[idx4(b, a, c, d)].scale(&m1)
                        || *x != r[idx4(a, b, d, c)].scale(&m1)
                        || *x != r[idx4(c, d, a, b)]
                        || !x.add(&r[idx4(a, c, d, b)]).add(&r[idx4(a, d, b, c)]).is_zero()
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct PotentialSolution<F> {
    /// R^{λμρν} at index ((λ·3 + μ)·3 + ρ)·3 + ν
    pub r: Vec<Poly<F>>,
    /// the normalization c in R = c · εερ
    pub scale: F,
}

/// Finds R with the symmetries of a curvature tensor and T^{μν} = ∂_λ∂_ρ R^{λμρν}
/// for a divergence-free symmetric T on ℝ³.
pub fn potential_solve<F: Field>(t: &[Vec<Poly<F>>]) -> Result<PotentialSolution<F>> {
    if t.len() != 3 || t.iter().any(|row| row.len() != 3) {
        return Err(NcxError::DimensionMismatch("T must be 3×3".into()));
    }
    for mu in 0..3 {
        for nu in 0..3 {
            if t[mu][nu] != t[nu][mu] || t[mu][nu].terms().any(|(m, _)| m.len() != 3) {
                return Err(NcxError::Invalid("T must be symmetric with polynomials in 3 variables".into()));
            }
        }
    }
    if divergence(t).iter().any(|p| !p.is_zero()) {
        return Err(NcxError::Invalid("T is not divergence-free".into()));
    }
    let mut degrees: BTreeMap<usize, ()> = BTreeMap::new();
    for row in t {
        for p in row {
            for g in p.homogeneous_parts().keys() {
                degrees.insert(*g, ());
            }
        }
    }
    let omega = OmegaN::<F>::new(3, 3, 4)?;
    let mut r0 = vec![Poly::zero(); 81];
    for &g in degrees.keys() {
        // τ_{a1 a2 a3 a4} = T^{μν} ε_{μ a1 a3} ε_{ν a2 a4}, columns (a1, a3) and (a2, a4)
        let mons = Monomials::new(3, g);
        let mut comps = Vec::new();
        for m in mons.iter() {
            let mut pairs = Vec::new();
            for mu in 0..3 {
                for nu in 0..3 {
                    let c = t[mu][nu].homogeneous_parts().get(&g).and_then(|p| Some(p.coeff(m)).filter(|c| !c.is_zero()));
                    let Some(c) = c else { continue };
                    for a1 in 0..3 {
                        for a3 in 0..3 {
                            let e1 = epsilon3(mu, a1, a3);
                            if e1 == 0 {
                                continue;
                            }
                            for a2 in 0..3 {
                                for a4 in 0..3 {
                                    let e2 = epsilon3(nu, a2, a4);
                                    if e2 != 0 {
                                        pairs.push((idx4(a1, a2, a3, a4), c.clone() * &F::from_i64(e1 * e2)));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            let v = SparseVec::from_pairs(pairs);
            if !v.is_zero() {
                comps.push((m.clone(), v));
            }
        }
        let tau = omega.field_from_components(4, g, &comps)?;
        let d2 = omega.differential_matrix(3, g + 1).mul(&omega.differential_matrix(2, g + 2));
        let x = solve(&d2, &tau.coords).ok_or_else(|| NcxError::NoSolution(format!("τ is not d²ρ in degree {g}")))?;
        let rho = super::PolyTensorField { p: 2, w_poly: g + 2, coords: x };
        // R0^{μ1 μ2 ν1 ν2} = ε^{μ1 μ2 μ3} ε^{ν1 ν2 ν3} ρ_{μ3 ν3}
        for (m, tens) in omega.components(&rho) {
            for (k, c) in tens.iter() {
                let (m3, n3) = (k / 3, k % 3);
                for m1 in 0..3 {
                    for m2 in 0..3 {
                        let e1 = epsilon3(m1, m2, m3);
                        if e1 == 0 {
                            continue;
                        }
                        for n1 in 0..3 {
                            for n2 in 0..3 {
                                let e2 = epsilon3(n1, n2, n3);
                                if e2 != 0 {
                                    r0[idx4(m1, m2, n1, n2)].add_term(m.clone(), c.clone() * &F::from_i64(e1 * e2));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let s = double_divergence(&r0);
    let scale = proportionality(t, &s)?;
    let r: Vec<Poly<F>> = r0.iter().map(|p| p.scale(&scale)).collect();
    if !has_riemann_symmetry(&r) {
        return Err(NcxError::Invalid("recovered R lacks curvature symmetry".into()));
    }
    if double_divergence(&r) != t {
        return Err(NcxError::NotExact("∂∂R does not reproduce T".into()));
    }
    Ok(PotentialSolution { r, scale })
}

/// c with t = c·s entrywise (any c when both vanish).
fn proportionality<F: Field>(t: &[Vec<Poly<F>>], s: &[Vec<Poly<F>>]) -> Result<F> {
    let flat = |x: &[Vec<Poly<F>>]| x.iter().flatten().cloned().collect::<Vec<_>>();
    ratio(&flat(t), &flat(s)).ok_or_else(|| NcxError::NotExact("∂∂(εερ) is not proportional to T".into()))
}

/// The c with a = c·b entrywise, if one exists; 1 when both vanish.
pub fn ratio<F: Field>(a: &[Poly<F>], b: &[Poly<F>]) -> Option<F> {
    let c = b
        .iter()
        .zip(a)
        .find_map(|(bp, ap)| {
            bp.terms().next().map(|(m, bv)| ap.coeff(m) * &bv.inv().unwrap())
        })
        .unwrap_or_else(F::one);
    a.iter().zip(b).all(|(ap, bp)| *ap == bp.scale(&c)).then_some(c)
}

/// Random divergence-free symmetric T with homogeneous entries of the given degree.
pub fn random_divergence_free<F: Field, R: Rng>(rng: &mut R, degree: usize) -> Vec<Vec<Poly<F>>> {
    let mons = Monomials::new(3, degree);
    let pairs: Vec<(usize, usize)> = (0..3).flat_map(|a| (a..3).map(move |b| (a, b))).collect();
    let nm = mons.len();
    // unknown (pair k, monomial i) at k * nm + i; constraint (ν, monomial of degree − 1)
    let lower = if degree > 0 { Some(Monomials::new(3, degree - 1)) } else { None };
    let mut trip = Vec::new();
    if let Some(lower) = &lower {
        for (k, &(a, b)) in pairs.iter().enumerate() {
            for (i, m) in mons.iter().enumerate() {
                // T^{ab} contributes ∂_a to the ν = b equation and ∂_b to ν = a
                let mut hits = vec![(a, b)];
                if a != b {
                    hits.push((b, a));
                }
                for (mu, nu) in hits {
                    if m[mu] > 0 {
                        let mut m2 = m.clone();
                        m2[mu] -= 1;
                        let row = nu * lower.len() + lower.index_of(&m2).unwrap();
                        trip.push((row, k * nm + i, F::from_i64(m[mu] as i64)));
                    }
                }
            }
        }
    }
    let rows = lower.as_ref().map_or(0, |l| 3 * l.len());
    let div = ExactMatrix::from_triplets(rows, pairs.len() * nm, trip);
    let ker = kernel_basis(&div);
    let mut v = SparseVec::new();
    for b in ker.basis() {
        v = v.axpy(&F::from_i64(rng.gen_range(-3..=3)), b);
    }
    let mut t = vec![vec![Poly::zero(); 3]; 3];
    for (idx, c) in v.iter() {
        let (k, i) = (idx / nm, idx % nm);
        let (a, b) = pairs[k];
        t[a][b].add_term(mons.get(i).to_vec(), c.clone());
        if a != b {
            t[b][a].add_term(mons.get(i).to_vec(), c.clone());
        }
    }
    t
}
