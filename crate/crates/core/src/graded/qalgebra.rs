use std::collections::BTreeMap;

use serde::Serialize;

use crate::linalg::SparseVec;
use crate::scalars::Field;

/// A graded algebra with a degree-1 map d, given by coordinates per degree.
/// Degrees are reduced mod `period()` when the grading is cyclic.
pub trait GradedQAlgebra<F: Field> {
    fn period(&self) -> Option<usize>;
    /// Highest degree whose products and differentials are available.
    fn max_degree(&self) -> usize;
    fn dim(&self, deg: usize) -> usize;
    fn unit(&self) -> SparseVec<F>;
    /// Product of x ∈ A^a and y ∈ A^b, None if a+b lies beyond the stored range.
    fn mul(&self, a: usize, x: &SparseVec<F>, b: usize, y: &SparseVec<F>) -> Option<SparseVec<F>>;
    fn d(&self, a: usize, x: &SparseVec<F>) -> Option<SparseVec<F>>;

    fn reduce_degree(&self, deg: usize) -> usize {
        self.period().map_or(deg, |p| deg % p)
    }
}

/// Element of A ⊗ B: bidegree (a, b) → vector with index i * dim B^b + j.
type TensorElem<F> = BTreeMap<(usize, usize), SparseVec<F>>;

fn add_into<F: Field>(acc: &mut TensorElem<F>, key: (usize, usize), v: SparseVec<F>) {
    let slot = acc.entry(key).or_insert_with(SparseVec::new);
    *slot = slot.add(&v);
    if slot.is_zero() {
        acc.remove(&key);
    }
}

fn pure<F: Field>(x: &SparseVec<F>, y: &SparseVec<F>, dim_y: usize) -> SparseVec<F> {
    let mut pairs = Vec::new();
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            pairs.push((i * dim_y + j, a.clone() * b));
        }
    }
    SparseVec::from_pairs(pairs)
}

struct Tensor<'a, F, A, B> {
    a: &'a A,
    b: &'a B,
    q: F,
}

impl<'a, F: Field, A: GradedQAlgebra<F>, B: GradedQAlgebra<F>> Tensor<'a, F, A, B> {
    fn split(&self, key: (usize, usize), v: &SparseVec<F>) -> Vec<(usize, usize, F)> {
        let db = self.b.dim(key.1);
        v.iter().map(|(k, x)| (k / db, k % db, x.clone())).collect()
    }

    fn qpow(&self, e: usize) -> F {
        self.q.pow(e as u64)
    }

    /// d(α⊗β) = dα⊗β + q^a α⊗dβ
    fn d(&self, x: &TensorElem<F>) -> Option<TensorElem<F>> {
        let mut out = TensorElem::new();
        for (&(a, b), v) in x {
            let (na, nb) = (self.a.reduce_degree(a + 1), self.b.reduce_degree(b + 1));
            for (i, j, c) in self.split((a, b), v) {
                let da = self.a.d(a, &SparseVec::unit(i))?;
                add_into(&mut out, (na, b), pure(&da, &SparseVec::unit(j), self.b.dim(b)).scale(&c));
                let db = self.b.d(b, &SparseVec::unit(j))?;
                let coef = c * &self.qpow(a);
                add_into(&mut out, (a, nb), pure(&SparseVec::unit(i), &db, self.b.dim(nb)).scale(&coef));
            }
        }
        Some(out)
    }

    /// (α⊗β)(α'⊗β') = q^{b a'} αα'⊗ββ'
    fn mul(&self, x: &TensorElem<F>, y: &TensorElem<F>) -> Option<TensorElem<F>> {
        let mut out = TensorElem::new();
        for (&(a, b), v) in x {
            for (&(a2, b2), w) in y {
                let (ra, rb) = (self.a.reduce_degree(a + a2), self.b.reduce_degree(b + b2));
                for (i, j, c) in self.split((a, b), v) {
                    for (i2, j2, c2) in self.split((a2, b2), w) {
                        let pa = self.a.mul(a, &SparseVec::unit(i), a2, &SparseVec::unit(i2))?;
                        let pb = self.b.mul(b, &SparseVec::unit(j), b2, &SparseVec::unit(j2))?;
                        let coef = c.clone() * &c2 * &self.qpow(b * a2);
                        add_into(&mut out, (ra, rb), pure(&pa, &pb, self.b.dim(rb)).scale(&coef));
                    }
                }
            }
        }
        Some(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LeibnizFailure {
    /// bidegree and basis indices (i in A, j in B) of x
    pub x: (usize, usize, usize, usize),
    pub y: (usize, usize, usize, usize),
    pub difference_terms: usize,
}

/// Search pure basis tensors x, y of A ⊗ B (total degree ≤ max_total each) for
/// a failure of d(xy) = d(x) y + q^{|x|} x d(y).
pub fn q_leibniz_failure<F: Field, A: GradedQAlgebra<F>, B: GradedQAlgebra<F>>(
    a: &A,
    b: &B,
    q: &F,
    max_total: usize,
) -> Option<LeibnizFailure> {
    let t = Tensor { a, b, q: q.clone() };
    let mut basis = Vec::new();
    for da in 0..=a.max_degree() {
        for db in 0..=b.max_degree() {
            if da + db > max_total {
                continue;
            }
            for i in 0..a.dim(da) {
                for j in 0..b.dim(db) {
                    basis.push((da, db, i, j));
                }
            }
        }
    }
    let elem = |&(da, db, i, j): &(usize, usize, usize, usize)| {
        let mut m = TensorElem::new();
        m.insert((da, db), SparseVec::unit(i * b.dim(db) + j));
        m
    };
    for x in &basis {
        for y in &basis {
            let (ex, ey) = (elem(x), elem(y));
            let Some(lhs) = t.mul(&ex, &ey).and_then(|p| t.d(&p)) else { continue };
            let Some(dx) = t.d(&ex) else { continue };
            let Some(dy) = t.d(&ey) else { continue };
            let (Some(r1), Some(r2)) = (t.mul(&dx, &ey), t.mul(&ex, &dy)) else { continue };
            let mut diff = lhs;
            for (k, v) in r1 {
                add_into(&mut diff, k, v.neg());
            }
            let s = -q.pow((x.0 + x.1) as u64);
            for (k, v) in r2 {
                add_into(&mut diff, k, v.scale(&s));
            }
            if !diff.is_empty() {
                return Some(LeibnizFailure { x: *x, y: *y, difference_terms: diff.values().map(|v| v.nnz()).sum() });
            }
        }
    }
    None
}
