use serde::Serialize;

use crate::error::{NcxError, Result};
use crate::graded::{Boundary, GradedNComplex};
use crate::linalg::{rank, ExactMatrix, SparseVec};
use crate::scalars::Field;

use super::diagram::{SymmetrySpace, YoungDiagram};
use crate::poly::{monomial_count, Monomials};

/// Ω_N(ℝ^D) with polynomial coefficients, tensor degrees 0..=p_max.
#[derive(Clone, Debug)]
pub struct OmegaN<F> {
    n: usize,
    d: usize,
    spaces: Vec<SymmetrySpace<F>>,
    /// prepend[p][μ]: coordinates of Y_{p+1}(e_μ ⊗ b) for each basis b of degree p
    prepend: Vec<Vec<Vec<SparseVec<F>>>>,
}

/// Element of Ω^p_N with homogeneous coefficients of degree w_poly; coordinate
/// index = monomial index · dim Ω^p + symmetry-basis index.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyTensorField<F> {
    pub p: usize,
    pub w_poly: usize,
    pub coords: SparseVec<F>,
}

impl<F: Field> OmegaN<F> {
    pub fn new(n: usize, d: usize, p_max: usize) -> Result<Self> {
        if n < 2 || d == 0 {
            return Err(NcxError::Invalid(format!("need N ≥ 2 and D ≥ 1, got N={n}, D={d}")));
        }
        let top = p_max.min((n - 1) * d);
        let spaces = (0..=top)
            .map(|p| SymmetrySpace::<F>::new(YoungDiagram::maximal(n, p), d))
            .collect::<Result<Vec<_>>>()?;
        let mut prepend = Vec::with_capacity(top);
        for p in 0..top {
            let (src, dst) = (&spaces[p], &spaces[p + 1]);
            let shift = d.pow(p as u32);
            let per_mu = (0..d)
                .map(|mu| {
                    src.basis
                        .basis()
                        .iter()
                        .map(|b| {
                            let moved = SparseVec::from_sorted(b.iter().map(|(i, c)| (mu * shift + i, c.clone())).collect());
                            let img = dst.symmetrizer.apply(&moved);
                            dst.basis.coordinates(&img).ok_or(NcxError::NotSubspace)
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            prepend.push(per_mu);
        }
        Ok(OmegaN { n, d, spaces, prepend })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Highest stored tensor degree.
    pub fn top(&self) -> usize {
        self.spaces.len() - 1
    }

    /// Whether every degree above `top()` is zero.
    pub fn is_complete(&self) -> bool {
        self.top() == (self.n - 1) * self.d
    }

    pub fn space(&self, p: usize) -> Option<&SymmetrySpace<F>> {
        self.spaces.get(p)
    }

    pub fn tensor_dim(&self, p: usize) -> usize {
        self.spaces.get(p).map_or(0, |s| s.dim())
    }

    pub fn level_dim(&self, p: usize, w_poly: i64) -> usize {
        if w_poly < 0 {
            return 0;
        }
        monomial_count(self.d, w_poly as usize) * self.tensor_dim(p)
    }

    /// d = Y_{p+1} ∘ ∂ from (p, w_poly) to (p+1, w_poly − 1).
    pub fn differential_matrix(&self, p: usize, w_poly: usize) -> ExactMatrix<F> {
        let rows = self.level_dim(p + 1, w_poly as i64 - 1);
        let cols = self.level_dim(p, w_poly as i64);
        if rows == 0 || cols == 0 || p >= self.top() {
            return ExactMatrix::zeros(rows, cols);
        }
        let (src, dst) = (Monomials::new(self.d, w_poly), Monomials::new(self.d, w_poly - 1));
        let (ds, dt) = (self.tensor_dim(p), self.tensor_dim(p + 1));
        let mut trip = Vec::new();
        for (i, m) in src.iter().enumerate() {
            for mu in 0..self.d {
                if m[mu] == 0 {
                    continue;
                }
                let mut m2 = m.clone();
                m2[mu] -= 1;
                let i2 = dst.index_of(&m2).unwrap();
                let c = F::from_i64(m[mu] as i64);
                for j in 0..ds {
                    for (r, v) in self.prepend[p][mu][j].iter() {
                        trip.push((i2 * dt + r, i * ds + j, c.clone() * v));
                    }
                }
            }
        }
        ExactMatrix::from_triplets(rows, cols, trip)
    }

    /// d^k out of (p, w − p) at weight w; zero where either end vanishes.
    pub fn power_at(&self, w: usize, p: usize, k: usize) -> ExactMatrix<F> {
        let mut m = ExactMatrix::identity(self.level_dim(p, w as i64 - p as i64));
        for i in 0..k {
            let q = p + i;
            let step = if q < self.top() && q < w {
                self.differential_matrix(q, w - q)
            } else {
                ExactMatrix::zeros(self.level_dim(q + 1, w as i64 - q as i64 - 1), self.level_dim(q, w as i64 - q as i64))
            };
            m = step.mul(&m);
        }
        m
    }

    /// The finite complex along p + w_poly = w.
    pub fn weight_complex(&self, w: usize) -> Result<GradedNComplex<F>> {
        let last = w.min(self.top());
        let dims: Vec<usize> = (0..=last).map(|p| self.level_dim(p, (w - p) as i64)).collect();
        let maps = (0..last).map(|p| self.differential_matrix(p, w - p)).collect();
        let above = if last == w || self.is_complete() { Boundary::Zero } else { Boundary::Truncated };
        GradedNComplex::with_boundaries(self.n, 0, dims, maps, Boundary::Zero, above)
    }

    pub fn differential(&self, f: &PolyTensorField<F>) -> PolyTensorField<F> {
        if f.w_poly == 0 {
            return PolyTensorField { p: f.p + 1, w_poly: 0, coords: SparseVec::new() };
        }
        PolyTensorField { p: f.p + 1, w_poly: f.w_poly - 1, coords: self.differential_matrix(f.p, f.w_poly).apply(&f.coords) }
    }

    /// (monomial, full tensor) pairs of a field.
    pub fn components(&self, f: &PolyTensorField<F>) -> Vec<(Vec<u32>, SparseVec<F>)> {
        let mons = Monomials::new(self.d, f.w_poly);
        let dt = self.tensor_dim(f.p);
        let mut out: Vec<(Vec<u32>, SparseVec<F>)> = Vec::new();
        for (i, m) in mons.iter().enumerate() {
            let block = SparseVec::from_sorted(
                f.coords.iter().filter(|(k, _)| k / dt == i).map(|(k, c)| (k % dt, c.clone())).collect(),
            );
            if !block.is_zero() {
                out.push((m.clone(), self.spaces[f.p].basis.combine(&block)));
            }
        }
        out
    }

    /// Builds a field from (monomial, full tensor) pairs of one polynomial degree;
    /// the tensors must already have the symmetry of Y^N_p.
    pub fn field_from_components(&self, p: usize, w_poly: usize, comps: &[(Vec<u32>, SparseVec<F>)]) -> Result<PolyTensorField<F>> {
        let space = self.spaces.get(p).ok_or(NcxError::OutsideWindow { degree: p as i64, m: 0 })?;
        let mons = Monomials::new(self.d, w_poly);
        let dt = space.dim();
        let mut pairs = Vec::new();
        for (m, t) in comps {
            let i = mons.index_of(m).ok_or_else(|| NcxError::Invalid(format!("monomial {m:?} is not of degree {w_poly}")))?;
            let c = space.basis.coordinates(t).ok_or(NcxError::NotMember)?;
            pairs.extend(c.iter().map(|(k, v)| (i * dt + k, v.clone())));
        }
        Ok(PolyTensorField { p, w_poly, coords: SparseVec::from_pairs(pairs) })
    }

    /// (αβ)(x) = Y_{a+b}(α(x) ⊗ β(x)).
    pub fn y_product(&self, a: &PolyTensorField<F>, b: &PolyTensorField<F>) -> Result<PolyTensorField<F>> {
        let p = a.p + b.p;
        let space = self.spaces.get(p).ok_or(NcxError::OutsideWindow { degree: p as i64, m: 0 })?;
        let shift = self.d.pow(b.p as u32);
        let mut acc: Vec<(Vec<u32>, SparseVec<F>)> = Vec::new();
        for (ma, ta) in self.components(a) {
            for (mb, tb) in self.components(b) {
                let m: Vec<u32> = ma.iter().zip(&mb).map(|(x, y)| x + y).collect();
                let mut pairs = Vec::new();
                for (i, x) in ta.iter() {
                    for (j, y) in tb.iter() {
                        pairs.push((i * shift + j, x.clone() * y));
                    }
                }
                let t = space.symmetrizer.apply(&SparseVec::from_pairs(pairs));
                match acc.iter_mut().find(|(k, _)| *k == m) {
                    Some((_, v)) => *v = v.add(&t),
                    None => acc.push((m, t)),
                }
            }
        }
        self.field_from_components(p, a.w_poly + b.w_poly, &acc)
    }

    /// First triple of constant basis fields with (αβ)γ ≠ α(βγ), by increasing total degree.
    pub fn nonassociativity_witness(&self) -> Result<Option<[(usize, usize); 3]>> {
        let basis = |p: usize, j: usize| PolyTensorField { p, w_poly: 0, coords: SparseVec::unit(j) };
        for total in 3..=self.top() {
            for a in 1..total - 1 {
                for b in 1..total - a {
                    let c = total - a - b;
                    for i in 0..self.tensor_dim(a) {
                        for j in 0..self.tensor_dim(b) {
                            for k in 0..self.tensor_dim(c) {
                                let (x, y, z) = (basis(a, i), basis(b, j), basis(c, k));
                                let left = self.y_product(&self.y_product(&x, &y)?, &z)?;
                                let right = self.y_product(&x, &self.y_product(&y, &z)?)?;
                                if left != right {
                                    return Ok(Some([(a, i), (b, j), (c, k)]));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PoincareRow {
    pub weight: usize,
    pub p: usize,
    pub k: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PoincareReport {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub w_max: usize,
    pub rows: Vec<PoincareRow>,
    /// H^{(N-1)n}_(k) = 0 for n ≥ 1 at every weight
    pub lattice_vanishing: bool,
    /// Σ_w dim H⁰_(k) equals the number of polynomials of degree < k
    pub h0_total: usize,
    pub h0_expected: usize,
    pub h0_matches: bool,
    /// nonzero classes at p ∉ (N−1)ℕ, reported only
    pub off_lattice: Vec<PoincareRow>,
    pub holds: bool,
}

pub fn poincare_verify<F: Field>(omega: &OmegaN<F>, k: usize, w_max: usize) -> Result<PoincareReport> {
    let n = omega.n();
    if k == 0 || k >= n {
        return Err(NcxError::Invalid(format!("k must lie in 1..{n}, got {k}")));
    }
    let step = n - 1;
    let mut rows = Vec::new();
    let (mut lattice_vanishing, mut h0_ok) = (true, true);
    let (mut h0_total, mut h0_expected) = (0, 0);
    for w in 0..=w_max {
        let c = omega.weight_complex(w)?;
        let h = c.homology();
        for p in c.degrees() {
            let Some(dim) = h.dim(p, k) else { continue };
            let p = p as usize;
            if p % step == 0 && p > 0 && dim != 0 {
                lattice_vanishing = false;
            }
            if p == 0 {
                let expect = if w < k { monomial_count(omega.d(), w) } else { 0 };
                h0_ok &= dim == expect;
                h0_total += dim;
                h0_expected += expect;
            }
            rows.push(PoincareRow { weight: w, p, k, dim });
        }
    }
    let off_lattice = rows.iter().filter(|r| r.p % step != 0 && r.dim > 0).cloned().collect();
    Ok(PoincareReport {
        n,
        d: omega.d(),
        k,
        w_max,
        rows,
        lattice_vanishing,
        h0_total,
        h0_expected,
        h0_matches: h0_ok,
        off_lattice,
        holds: lattice_vanishing && h0_ok,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SpinRow {
    pub weight: usize,
    /// dims of Ω^{S-1}, Ω^S, Ω^{2S}, Ω^{2S+1} at this weight
    pub dims: [usize; 4],
    pub rank_in: usize,
    pub rank_curvature: usize,
    pub rank_out: usize,
    pub composites_zero: bool,
    pub exact_at_s: bool,
    pub exact_at_2s: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpinReport {
    pub s: usize,
    pub d: usize,
    pub w_max: usize,
    pub rows: Vec<SpinRow>,
    pub holds: bool,
}

/// Ω^{S-1} →d Ω^S →d^S Ω^{2S} →d Ω^{2S+1} in Ω_{S+1}(ℝ^D), weight by weight.
pub fn spin_sequence_check<F: Field>(s: usize, d: usize, w_max: usize) -> Result<SpinReport> {
    if s == 0 {
        return Err(NcxError::Invalid("spin must be at least 1".into()));
    }
    let omega = OmegaN::<F>::new(s + 1, d, 2 * s + 1)?;
    let mut rows = Vec::new();
    for w in 0..=w_max {
        let dim = |p: usize| omega.level_dim(p, w as i64 - p as i64);
        let d_in = omega.power_at(w, s - 1, 1);
        let curv = omega.power_at(w, s, s);
        let d_out = omega.power_at(w, 2 * s, 1);
        let composites_zero = curv.mul(&d_in).is_zero() && d_out.mul(&curv).is_zero();
        let (r_in, r_c, r_out) = (rank(&d_in), rank(&curv), rank(&d_out));
        rows.push(SpinRow {
            weight: w,
            dims: [dim(s - 1), dim(s), dim(2 * s), dim(2 * s + 1)],
            rank_in: r_in,
            rank_curvature: r_c,
            rank_out: r_out,
            composites_zero,
            exact_at_s: dim(s) - r_c == r_in,
            exact_at_2s: dim(2 * s) - r_out == r_c,
        });
    }
    let holds = rows.iter().all(|r| r.composites_zero && r.exact_at_s && r.exact_at_2s);
    Ok(SpinReport { s, d, w_max, rows, holds })
}
