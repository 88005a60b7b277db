use crate::error::{NcxError, Result};
use crate::graded::{Boundary, GradedNComplex};
use crate::linalg::{ColumnMatrix, ExactMatrix, SparseVec, Subspace};
use crate::scalars::{Field, QContext};

use super::instances::{decode, encode};
use super::{restrict_complex, AlgebraData, CosimplicialData};

/// 𝔗(A) with 𝔗^n = A^{⊗(n+1)}; basis tuples (x_0, …, x_n) indexed in base dim A.
#[derive(Clone, Debug)]
pub struct TensorAlgebra<F> {
    a: AlgebraData<F>,
    data: CosimplicialData<F>,
}

impl<F: Field> TensorAlgebra<F> {
    pub fn new(a: &AlgebraData<F>, n_max: usize) -> Result<Self> {
        if a.is_lie() {
            return Err(NcxError::Invalid("tensor algebra needs an associative algebra".into()));
        }
        let unit = a.unit().ok_or_else(|| NcxError::Invalid("algebra has no unit".into()))?.clone();
        let da = a.dim();
        let dims: Vec<usize> = (0..=n_max).map(|n| da.pow(n as u32 + 1)).collect();
        let mut cofaces = Vec::with_capacity(n_max);
        let mut codegs = Vec::with_capacity(n_max);
        for n in 0..n_max {
            // f_i puts the unit at position i
            let level = (0..=n + 1)
                .map(|i| {
                    let mut trip = Vec::new();
                    for col in 0..dims[n] {
                        let x = decode(col, da, n + 1);
                        for (u, c) in unit.iter() {
                            let mut y = x[..i].to_vec();
                            y.push(*u);
                            y.extend_from_slice(&x[i..]);
                            trip.push((encode(&y, da), col, c.clone()));
                        }
                    }
                    ExactMatrix::from_triplets(dims[n + 1], dims[n], trip)
                })
                .collect();
            cofaces.push(level);
            // s_i multiplies positions i and i+1
            let level = (0..=n)
                .map(|i| {
                    let mut trip = Vec::new();
                    for col in 0..dims[n + 1] {
                        let x = decode(col, da, n + 2);
                        let mut y: Vec<usize> = x[..i].to_vec();
                        y.push(0);
                        y.extend_from_slice(&x[i + 2..]);
                        for (t, c) in a.basis_product(x[i], x[i + 1]).iter() {
                            y[i] = *t;
                            trip.push((encode(&y, da), col, c.clone()));
                        }
                    }
                    ExactMatrix::from_triplets(dims[n], dims[n + 1], trip)
                })
                .collect();
            codegs.push(level);
        }
        let data = CosimplicialData::new(dims, cofaces, Some(codegs))?;
        let t = TensorAlgebra { a: a.clone(), data };
        t.check_multiplicativity()?;
        Ok(t)
    }

    pub fn data(&self) -> &CosimplicialData<F> {
        &self.data
    }

    pub fn algebra(&self) -> &AlgebraData<F> {
        &self.a
    }

    pub fn n_max(&self) -> usize {
        self.data.n_max()
    }

    /// (x_0…x_a)(y_0…y_b) = x_0 … x_{a-1} (x_a y_0) y_1 … y_b
    pub fn mul(&self, a: usize, x: &SparseVec<F>, b: usize, y: &SparseVec<F>) -> SparseVec<F> {
        let da = self.a.dim();
        let mut pairs = Vec::new();
        for (i, s) in x.iter() {
            let xt = decode(*i, da, a + 1);
            for (j, t) in y.iter() {
                let yt = decode(*j, da, b + 1);
                let st = s.clone() * t;
                let mut z: Vec<usize> = xt[..a].to_vec();
                z.push(0);
                z.extend_from_slice(&yt[1..]);
                for (k, c) in self.a.basis_product(xt[a], yt[0]).iter() {
                    z[a] = *k;
                    pairs.push((encode(&z, da), st.clone() * c));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// (𝔐𝔉₁), (𝔐𝔉₂) and (𝔐𝔖) on all basis pairs whose product and its cofaces are stored.
    pub fn check_multiplicativity(&self) -> Result<()> {
        let d = &self.data;
        let top = self.n_max();
        let f: Vec<Vec<ColumnMatrix<F>>> =
            (0..top).map(|n| (0..=n + 1).map(|i| ColumnMatrix::new(d.coface(n, i))).collect()).collect();
        let s: Vec<Vec<ColumnMatrix<F>>> = (0..top)
            .map(|n| (0..=n).map(|i| ColumnMatrix::new(d.codegeneracy(n, i).unwrap())).collect())
            .collect();
        let fail = |relation, level, i, j| NcxError::RelationFailure { relation, level, i, j };
        for total in 0..self.n_max() {
            for a in 0..=total {
                let b = total - a;
                for xi in 0..d.dims()[a] {
                    let x = SparseVec::unit(xi);
                    for yi in 0..d.dims()[b] {
                        let y = SparseVec::unit(yi);
                        let xy = self.mul(a, &x, b, &y);
                        for i in 0..=total + 1 {
                            let lhs = f[total][i].apply(&xy);
                            let rhs = if i <= a {
                                self.mul(a + 1, &f[a][i].apply(&x), b, &y)
                            } else {
                                self.mul(a, &x, b + 1, &f[b][i - a].apply(&y))
                            };
                            if lhs != rhs {
                                return Err(fail("MF1", total, xi, yi));
                            }
                        }
                        let l = self.mul(a + 1, &f[a][a + 1].apply(&x), b, &y);
                        let r = self.mul(a, &x, b + 1, &f[b][0].apply(&y));
                        if l != r {
                            return Err(fail("MF2", total, xi, yi));
                        }
                        for i in 0..total {
                            let lhs = s[total - 1][i].apply(&xy);
                            let rhs = if i < a {
                                self.mul(a - 1, &s[a - 1][i].apply(&x), b, &y)
                            } else {
                                self.mul(a, &x, b - 1, &s[b - 1][i - a].apply(&y))
                            };
                            if lhs != rhs {
                                return Err(fail("MS", total, xi, yi));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// d₁(αβ) = d₁(α)β + q^a α d₁(β) on all basis pairs with a + b < n_max.
    pub fn q_leibniz_holds(&self, q: &F) -> bool {
        let d1: Vec<ColumnMatrix<F>> = self.data.d1_maps(q).iter().map(ColumnMatrix::new).collect();
        let dims = self.data.dims();
        for total in 0..self.n_max() {
            for a in 0..=total {
                let b = total - a;
                let qa = q.pow(a as u64);
                for xi in 0..dims[a] {
                    let x = SparseVec::unit(xi);
                    for yi in 0..dims[b] {
                        let y = SparseVec::unit(yi);
                        let lhs = d1[total].apply(&self.mul(a, &x, b, &y));
                        let rhs = self
                            .mul(a + 1, &d1[a].apply(&x), b, &y)
                            .axpy(&qa, &self.mul(a, &x, b + 1, &d1[b].apply(&y)));
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// A graded subspace of 𝔗(A) closed under its differential, with the restricted complex.
#[derive(Clone, Debug)]
pub struct Envelope<F> {
    pub levels: Vec<Subspace<F>>,
    pub complex: GradedNComplex<F>,
}

impl<F: Field> Envelope<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.dim()).collect()
    }
}

/// Ω(A): normalized cochains of 𝔗(A), checked to be a graded differential subalgebra.
pub fn universal_envelope<F: Field>(a: &AlgebraData<F>, n_max: usize) -> Result<Envelope<F>> {
    let t = TensorAlgebra::new(a, n_max)?;
    let (levels, complex) = t.data.normalized_subcomplex()?;
    let d: Vec<ColumnMatrix<F>> = t.data.simplicial_maps().iter().map(ColumnMatrix::new).collect();
    for total in 0..n_max {
        for ad in 0..=total {
            let bd = total - ad;
            let sign = if ad % 2 == 0 { F::one() } else { -F::one() };
            for x in levels[ad].basis() {
                for y in levels[bd].basis() {
                    let xy = t.mul(ad, x, bd, y);
                    if !levels[total].contains(&xy) {
                        return Err(NcxError::Invalid(format!("normalized cochains not closed under product in degree {total}")));
                    }
                    let lhs = d[total].apply(&xy);
                    let rhs = t.mul(ad + 1, &d[ad].apply(x), bd, y).axpy(&sign, &t.mul(ad, x, bd + 1, &d[bd].apply(y)));
                    if lhs != rhs {
                        return Err(NcxError::Invalid(format!("graded Leibniz rule fails in degrees ({ad}, {bd})")));
                    }
                }
            }
        }
    }
    Ok(Envelope { levels, complex })
}

/// Ω_q(A): the smallest subalgebra of (𝔗(A), d₁) containing A and stable under d₁,
/// computed degreewise up to n_max.
pub fn omega_q<F: Field>(a: &AlgebraData<F>, q: &F, n: usize, n_max: usize) -> Result<Envelope<F>> {
    QContext::new(q.clone(), n)?.require_a1()?;
    let t = TensorAlgebra::new(a, n_max)?;
    let d1_maps = t.data.d1_maps(q);
    let d1: Vec<ColumnMatrix<F>> = d1_maps.iter().map(ColumnMatrix::new).collect();
    let dims = t.data.dims().to_vec();
    // generators: A and d₁^k(A), 1 ≤ k < N
    let mut gens: Vec<(usize, SparseVec<F>)> = Vec::new();
    for i in 0..a.dim() {
        let mut v = SparseVec::unit(i);
        gens.push((0, v.clone()));
        for k in 1..n.min(n_max + 1) {
            v = d1[k - 1].apply(&v);
            gens.push((k, v.clone()));
        }
    }
    let mut spans: Vec<Vec<SparseVec<F>>> = vec![Vec::new(); n_max + 1];
    for (k, g) in &gens {
        spans[*k].push(g.clone());
    }
    let mut levels: Vec<Subspace<F>> = spans.iter().enumerate().map(|(k, s)| Subspace::span(dims[k], s.clone())).collect();
    loop {
        let mut additions: Vec<Vec<SparseVec<F>>> = vec![Vec::new(); n_max + 1];
        for deg in 0..=n_max {
            for w in levels[deg].basis() {
                if deg < n_max {
                    additions[deg + 1].push(d1[deg].apply(w));
                }
                for (k, g) in &gens {
                    if deg + k <= n_max {
                        additions[deg + k].push(t.mul(*k, g, deg, w));
                        additions[deg + k].push(t.mul(deg, w, *k, g));
                    }
                }
            }
        }
        let mut changed = false;
        for (deg, extra) in additions.into_iter().enumerate() {
            let mut b = levels[deg].basis().to_vec();
            b.extend(extra.into_iter().filter(|v| !v.is_zero()));
            let grown = Subspace::span(dims[deg], b);
            if grown.dim() > levels[deg].dim() {
                levels[deg] = grown;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let complex = restrict_complex(n, &levels, &d1_maps, Boundary::Truncated)?;
    for total in 0..n_max {
        for (k, g) in gens.iter().filter(|(k, _)| *k <= total) {
            let bd = total - k;
            for w in levels[bd].basis() {
                for (ad, x, bdeg, y) in [(*k, g, bd, w), (bd, w, *k, g)] {
                    let lhs = d1[total].apply(&t.mul(ad, x, bdeg, y));
                    let rhs = t
                        .mul(ad + 1, &d1[ad].apply(x), bdeg, y)
                        .axpy(&q.pow(ad as u64), &t.mul(ad, x, bdeg + 1, &d1[bdeg].apply(y)));
                    if lhs != rhs {
                        return Err(NcxError::Invalid(format!("q-Leibniz rule fails in degrees ({ad}, {bdeg})")));
                    }
                }
            }
        }
    }
    Ok(Envelope { levels, complex })
}
