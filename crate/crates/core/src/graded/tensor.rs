use serde::Serialize;

use super::{Boundary, GradedNComplex, Grading};
use crate::error::{NcxError, Result};
use crate::linalg::{ExactMatrix, SparseVec};
use crate::scalars::{q_binomial_row, Field, QContext};

/// Block layout of (C'⊗C'')^n: list of (r, s, offset) plus total dimension.
fn layout<F: Field>(a: &GradedNComplex<F>, b: &GradedNComplex<F>, n: i64) -> (Vec<(i64, i64, usize)>, usize) {
    let mut blocks = Vec::new();
    let mut off = 0;
    let rs: Vec<i64> = if a.is_cyclic() {
        (0..a.n() as i64).collect()
    } else {
        a.degrees().filter(|r| b.degrees().contains(&(n - r))).collect()
    };
    for r in rs {
        let s = if b.is_cyclic() { (n - r).rem_euclid(b.n() as i64) } else { n - r };
        blocks.push((r, s, off));
        off += a.component_dim(r).unwrap() * b.component_dim(s).unwrap();
    }
    (blocks, off)
}

fn tensor_shape<F: Field>(a: &GradedNComplex<F>, b: &GradedNComplex<F>) -> Result<()> {
    if a.n() != b.n() {
        return Err(NcxError::Invalid("tensor factors have different N".into()));
    }
    let bounded = |c: &GradedNComplex<F>| {
        matches!(c.grading(), Grading::Integer { below: Boundary::Zero, above: Boundary::Zero })
    };
    match (a.is_cyclic(), b.is_cyclic()) {
        (true, true) => Ok(()),
        (false, false) if bounded(a) && bounded(b) => Ok(()),
        _ => Err(NcxError::Invalid(
            "tensor products need two cyclic complexes or two complexes bounded by zero on both sides".into(),
        )),
    }
}

/// d(α'⊗α'') = d'α'⊗α'' + coef(a') α'⊗d''α'' assembled into a graded complex.
fn assemble<F: Field>(
    a: &GradedNComplex<F>,
    b: &GradedNComplex<F>,
    coef: impl Fn(i64) -> F,
) -> Result<GradedNComplex<F>> {
    tensor_shape(a, b)?;
    let n = a.n();
    let degrees: Vec<i64> = if a.is_cyclic() {
        (0..n as i64).collect()
    } else {
        (a.min_degree() + b.min_degree()..=a.max_degree() + b.max_degree()).collect()
    };
    let layouts: Vec<(Vec<(i64, i64, usize)>, usize)> = degrees.iter().map(|&d| layout(a, b, d)).collect();
    let find = |li: usize, r: i64, s: i64| -> Option<usize> {
        layouts[li].0.iter().find(|&&(r2, s2, _)| r2 == r && s2 == s).map(|x| x.2)
    };
    let wrap_a = |r: i64| if a.is_cyclic() { r.rem_euclid(n as i64) } else { r };
    let wrap_b = |s: i64| if b.is_cyclic() { s.rem_euclid(n as i64) } else { s };
    let count = if a.is_cyclic() { degrees.len() } else { degrees.len() - 1 };
    let mut maps = Vec::with_capacity(count);
    for li in 0..count {
        let ti = (li + 1) % degrees.len();
        let (ref blocks, src_dim) = layouts[li];
        let tgt_dim = layouts[ti].1;
        let mut trip = Vec::new();
        for &(r, s, off) in blocks {
            let (ar, bs) = (a.component_dim(r).unwrap(), b.component_dim(s).unwrap());
            let da = a.map(r).unwrap().columns();
            let db = b.map(s).unwrap().columns();
            let bs_next = b.component_dim(wrap_b(s + 1)).unwrap();
            let t1 = find(ti, wrap_a(r + 1), s);
            let t2 = find(ti, r, wrap_b(s + 1));
            let c = coef(r);
            for i in 0..ar {
                for j in 0..bs {
                    let src = off + i * bs + j;
                    if let Some(t) = t1 {
                        for (i2, v) in da[i].iter() {
                            trip.push((t + i2 * bs + j, src, v.clone()));
                        }
                    }
                    if let Some(t) = t2 {
                        for (j2, v) in db[j].iter() {
                            trip.push((t + i * bs_next + j2, src, c.clone() * v));
                        }
                    }
                }
            }
        }
        maps.push(ExactMatrix::from_triplets(tgt_dim, src_dim, trip));
    }
    let dims: Vec<usize> = layouts.iter().map(|l| l.1).collect();
    if a.is_cyclic() {
        GradedNComplex::cyclic(n, dims, maps)
    } else {
        GradedNComplex::with_boundaries(n, degrees[0], dims, maps, Boundary::Zero, Boundary::Zero)
    }
}

/// q-tensor product d(α'⊗α'') = d'α'⊗α'' + q^{a'} α'⊗d''α''; requires (A1).
pub fn q_tensor<F: Field>(a: &GradedNComplex<F>, b: &GradedNComplex<F>, q: &F) -> Result<GradedNComplex<F>> {
    QContext::new(q.clone(), a.n())?.require_a1()?;
    assemble(a, b, |r| q.powi(r).expect("q is invertible under A1"))
}

/// d(e⊗f) = de⊗f + (-1)^r e⊗df for ordinary complexes (N = 2).
pub fn classical_tensor<F: Field>(a: &GradedNComplex<F>, b: &GradedNComplex<F>) -> Result<GradedNComplex<F>> {
    if a.n() != 2 || b.n() != 2 {
        return Err(NcxError::Invalid("the classical tensor product needs N = 2".into()));
    }
    assemble(a, b, |r| if r.rem_euclid(2) == 0 { F::one() } else { -F::one() })
}

/// Checks d^k(α'⊗α'') = Σ_m q^{a'(k-m)} [k m]_q d'^m α' ⊗ d''^{k-m} α'' on
/// every basis tensor, for k ≤ N.
pub fn q_tensor_power_check<F: Field>(
    a: &GradedNComplex<F>,
    b: &GradedNComplex<F>,
    t: &GradedNComplex<F>,
    q: &F,
) -> Result<bool> {
    let n = a.n();
    let wrap = |c: &GradedNComplex<F>, d: i64| if c.is_cyclic() { d.rem_euclid(n as i64) } else { d };
    for deg in t.degrees() {
        let (blocks, _) = layout(a, b, deg);
        for &(r, s, off) in &blocks {
            let (ar, bs) = (a.component_dim(r).unwrap(), b.component_dim(s).unwrap());
            for k in 0..=n {
                let tk = t.map_power(deg, k).unwrap();
                let (tblocks, _) = layout(a, b, deg + k as i64);
                let binom = q_binomial_row(k, q);
                let da: Vec<ExactMatrix<F>> = (0..=k).map(|m| a.map_power(r, m).unwrap()).collect();
                let db: Vec<ExactMatrix<F>> = (0..=k).map(|m| b.map_power(s, m).unwrap()).collect();
                for i in 0..ar {
                    for j in 0..bs {
                        let got = tk.apply(&SparseVec::unit(off + i * bs + j));
                        let mut want = SparseVec::new();
                        for m in 0..=k {
                            let (r2, s2) = (wrap(a, r + m as i64), wrap(b, s + (k - m) as i64));
                            let Some(&(_, _, toff)) = tblocks.iter().find(|x| x.0 == r2 && x.1 == s2) else {
                                continue;
                            };
                            let bs2 = b.component_dim(s2).unwrap();
                            let c = q.powi(r * (k - m) as i64).unwrap() * &binom[m];
                            let va = da[m].apply(&SparseVec::unit(i));
                            let vb = db[k - m].apply(&SparseVec::unit(j));
                            let mut pairs = Vec::new();
                            for (x, u) in va.iter() {
                                for (y, w) in vb.iter() {
                                    pairs.push((toff + x * bs2 + y, c.clone() * u * w));
                                }
                            }
                            want = want.add(&SparseVec::from_pairs(pairs));
                        }
                        if got != want {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct KunnethRow {
    pub degree: i64,
    pub dim_tensor: usize,
    pub dim_product: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct KunnethReport {
    pub rows: Vec<KunnethRow>,
    pub holds: bool,
}

/// dim H^n(C'⊗C'') = Σ_{r+s=n} dim H^r(C') dim H^s(C'') for N = 2.
pub fn kunneth_check<F: Field>(a: &GradedNComplex<F>, b: &GradedNComplex<F>) -> Result<KunnethReport> {
    if a.n() != 2 || b.n() != 2 {
        return Err(NcxError::Invalid("the Künneth check is for N = 2 only".into()));
    }
    let t = q_tensor(a, b, &-F::one())?;
    let (ha, hb, ht) = (a.homology(), b.homology(), t.homology());
    let mut rows = Vec::new();
    for deg in t.degrees() {
        let Some(dt) = ht.dim(deg, 1) else { continue };
        let mut prod = 0;
        let (blocks, _) = layout(a, b, deg);
        for (r, s, _) in blocks {
            let (Some(x), Some(y)) = (ha.dim(r, 1), hb.dim(s, 1)) else {
                return Err(NcxError::Invalid("factor homology indeterminate".into()));
            };
            prod += x * y;
        }
        rows.push(KunnethRow { degree: deg, dim_tensor: dt, dim_product: prod });
    }
    let holds = rows.iter().all(|r| r.dim_tensor == r.dim_product);
    Ok(KunnethReport { rows, holds })
}
