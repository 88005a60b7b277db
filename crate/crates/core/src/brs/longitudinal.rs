use crate::error::Result;
use crate::graded::{Boundary, GradedNComplex};
use crate::linalg::{ExactMatrix, Quotient, SparseVec, Subspace};
use crate::poly::{Monomials, Poly};
use crate::scalars::Field;

use super::system::{PolyConstraintSystem, VectorField};
use super::tower::CohomologyRow;

/// Longitudinal forms Ω(V, 𝓕) in the polynomial model: alternating cochains on the
/// free module spanned by the fields, with values in Poly/(u).
#[derive(Clone, Debug)]
pub struct LongitudinalForms<F> {
    system: PolyConstraintSystem<F>,
    p_max: usize,
}

/// Ω_𝓕 of the polynomial algebra for a bracket-closed list of derivations, up to degree p_max.
pub fn derivation_forms<F: Field>(d: usize, fields: Vec<VectorField<F>>, p_max: usize) -> Result<LongitudinalForms<F>> {
    let system = PolyConstraintSystem::new(d, Vec::new(), fields, None, None, true)?;
    Ok(LongitudinalForms { system, p_max })
}

impl<F: Field> LongitudinalForms<F> {
    /// Longitudinal forms on {u = 0} for a constraint system, all degrees.
    pub fn of_system(system: &PolyConstraintSystem<F>) -> Self {
        LongitudinalForms { system: system.clone(), p_max: system.fields().len() }
    }

    pub fn system(&self) -> &PolyConstraintSystem<F> {
        &self.system
    }

    fn top(&self) -> usize {
        self.p_max.min(self.system.fields().len())
    }

    /// (Poly/(u)) in degree g
    fn quotient(&self, g: i64) -> Result<(Monomials, Quotient<F>)> {
        let d = self.system.vars();
        if g < 0 {
            return Ok((Monomials::new(d, 0), Quotient::new(Subspace::zero(0), &[])?));
        }
        let mons = Monomials::new(d, g as usize);
        let mut gens = Vec::new();
        for (b, u) in self.system.constraints().iter().enumerate() {
            let gb = self.system.constraint_degree(b) as i64;
            if gb > g {
                continue;
            }
            for m in Monomials::new(d, (g - gb) as usize).iter() {
                gens.push(to_vec(&mons, &u.mul(&Poly::monomial(m.clone(), F::one()))));
            }
        }
        let q = Quotient::new(Subspace::full(mons.len()), &gens)?;
        Ok((mons, q))
    }

    fn tuples(&self, p: usize) -> Vec<Vec<usize>> {
        crate::cosimplicial::increasing_tuples(self.system.fields().len(), p)
    }

    fn s_of(&self, t: &[usize]) -> i64 {
        t.iter().map(|a| self.system.field_weight(*a)).sum()
    }

    /// Degree-p cochains of weight w: pairs (tuple, quotient basis index) in order.
    fn level(&self, p: usize, w: i64) -> Result<Vec<(Vec<usize>, Monomials, Quotient<F>)>> {
        self.tuples(p).into_iter().map(|t| self.quotient(w - self.s_of(&t)).map(|(m, q)| (t, m, q))).collect()
    }

    /// The Chevalley–Eilenberg complex in weight w, degrees 0..=p_max.
    pub fn weight_complex(&self, w: i64) -> Result<GradedNComplex<F>> {
        let top = self.top();
        let levels = (0..=top).map(|p| self.level(p, w)).collect::<Result<Vec<_>>>()?;
        let dims: Vec<usize> = levels.iter().map(|l| l.iter().map(|(_, _, q)| q.dim()).sum()).collect();
        let mut maps = Vec::new();
        for p in 0..top {
            maps.push(self.differential(&levels[p], &levels[p + 1], dims[p + 1])?);
        }
        let above = if top == self.system.fields().len() { Boundary::Zero } else { Boundary::Truncated };
        GradedNComplex::with_boundaries(2, 0, dims, maps, Boundary::Zero, above)
    }

    /// (dω)(ξ_{c0}, …, ξ_{cp}) = Σ_i (−1)^i ξ_{ci} ω(…ĉi…) + Σ_{i<j} (−1)^{i+j} ω([ξ_{ci}, ξ_{cj}], …ĉi…ĉj…)
    fn differential(
        &self,
        src: &[(Vec<usize>, Monomials, Quotient<F>)],
        dst: &[(Vec<usize>, Monomials, Quotient<F>)],
        rows: usize,
    ) -> Result<ExactMatrix<F>> {
        let mp = self.system.fields().len();
        let mut cols = Vec::new();
        for (b, bm, bq) in src {
            for r in 0..bq.dim() {
                let f = from_vec(bm, bq.representative(r));
                // value of ω on an arbitrary tuple
                let omega = |t: &[usize]| -> Poly<F> {
                    match sort_sign(t) {
                        Some((sorted, sign)) if sorted == *b => {
                            if sign {
                                f.clone()
                            } else {
                                f.scale(&-F::one())
                            }
                        }
                        _ => Poly::zero(),
                    }
                };
                let mut col = Vec::new();
                let mut off = 0;
                for (c, cm, cq) in dst {
                    let mut val = Poly::zero();
                    for i in 0..c.len() {
                        let rest: Vec<usize> = c.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, x)| *x).collect();
                        let term = self.system.fields()[c[i]].apply(&omega(&rest));
                        val = val.add(&if i % 2 == 0 { term } else { term.scale(&-F::one()) });
                        for j in i + 1..c.len() {
                            let rest: Vec<usize> =
                                c.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, x)| *x).collect();
                            for k in 0..mp {
                                let s = self.system.structure(k, c[i], c[j]);
                                if s.is_zero() {
                                    continue;
                                }
                                let mut t = vec![k];
                                t.extend(&rest);
                                let term = s.mul(&omega(&t));
                                val = val.add(&if (i + j) % 2 == 0 { term } else { term.scale(&-F::one()) });
                            }
                        }
                    }
                    if cq.dim() > 0 {
                        let coords = cq.coordinates(&to_vec(cm, &val))?;
                        col.extend(coords.iter().map(|(k, x)| (off + k, x.clone())));
                    }
                    off += cq.dim();
                }
                cols.push(SparseVec::from_pairs(col));
            }
        }
        Ok(ExactMatrix::from_columns(rows, &cols))
    }

    pub fn cohomology(&self, w_lo: i64, w_max: i64) -> Result<Vec<CohomologyRow>> {
        let mut rows = Vec::new();
        for w in w_lo..=w_max {
            let c = self.weight_complex(w)?;
            let h = c.homology();
            for k in c.degrees() {
                if let Some(dim) = h.dim(k, 1) {
                    rows.push(CohomologyRow { weight: w, degree: k, dim });
                }
            }
        }
        Ok(rows)
    }
}

fn to_vec<F: Field>(mons: &Monomials, p: &Poly<F>) -> SparseVec<F> {
    SparseVec::from_pairs(p.terms().map(|(m, c)| (mons.index_of(m).expect("homogeneous of the level degree"), c.clone())).collect())
}

fn from_vec<F: Field>(mons: &Monomials, v: &SparseVec<F>) -> Poly<F> {
    let mut p = Poly::zero();
    for (k, c) in v.iter() {
        p.add_term(mons.get(*k).to_vec(), c.clone());
    }
    p
}

/// Sorted tuple and the parity of the sorting permutation, None on repeats.
fn sort_sign(t: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = t.to_vec();
    let mut even = true;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                even = !even;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, even))
}
