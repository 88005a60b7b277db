use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cosimplicial::parse_scalar;
use crate::error::{NcxError, Result};
use crate::graded::{Boundary, GradedNComplex};
use crate::linalg::{ExactMatrix, Quotient, SparseVec, Subspace};
use crate::ndiff::random::random_module;
use crate::ndiff::NDiffModule;
use crate::scalars::{Field, FieldDescriptor};

/// q² must be a primitive N-th root of unity.
pub(crate) fn require_primitive_square<F: Field>(q: &F, n: usize) -> Result<F> {
    let q2 = q.clone() * q;
    let mut p = F::one();
    for k in 1..=n {
        p *= &q2;
        if p.is_one() != (k == n) {
            return Err(NcxError::Assumption(format!("q^2 is not a primitive {n}-th root of unity")));
        }
    }
    Ok(q2)
}

/// An N-differential A on ℋ together with an A-stable subspace ℋ_I.
#[derive(Clone, Debug)]
pub struct GaugeInstance<F> {
    n: usize,
    a: ExactMatrix<F>,
    hi: Subspace<F>,
    q: F,
}

impl<F: Field> GaugeInstance<F> {
    pub fn new(n: usize, a: ExactMatrix<F>, hi_gens: Vec<SparseVec<F>>, q: F) -> Result<Self> {
        if n < 2 {
            return Err(NcxError::Invalid(format!("N must be at least 2, got {n}")));
        }
        if !a.is_square() {
            return Err(NcxError::DimensionMismatch("A must be square".into()));
        }
        if !a.pow(n).is_zero() {
            return Err(NcxError::NotNilpotent { n });
        }
        require_primitive_square(&q, n)?;
        let hi = Subspace::span(a.rows(), hi_gens);
        for b in hi.basis() {
            if !hi.contains(&a.apply(b)) {
                return Err(NcxError::Invalid("H_I is not stable under A".into()));
            }
        }
        Ok(GaugeInstance { n, a, hi, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &ExactMatrix<F> {
        &self.a
    }

    pub fn hi(&self) -> &Subspace<F> {
        &self.hi
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    /// A restricted to ℋ_I, in the coordinates of ℋ_I's basis.
    pub fn restricted(&self) -> ExactMatrix<F> {
        let cols: Vec<SparseVec<F>> =
            self.hi.basis().iter().map(|b| self.hi.coordinates(&self.a.apply(b)).expect("stable")).collect();
        ExactMatrix::from_columns(self.hi.dim(), &cols)
    }

    pub fn to_json(&self, field: &FieldDescriptor) -> Value {
        let basis = ExactMatrix::from_rows(self.dim(), self.hi.basis().to_vec());
        json!({
            "N": self.n,
            "field": field.name(),
            "A": self.a.to_json(field),
            "HI_basis": basis.to_json(field),
            "q": self.q.to_string(),
        })
    }

    /// `HI_basis` holds one spanning vector per row.
    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v["N"].as_u64().ok_or_else(|| NcxError::Parse("gauge JSON needs \"N\"".into()))? as usize;
        let a = ExactMatrix::from_json(&v["A"])?;
        let basis = ExactMatrix::<F>::from_json(&v["HI_basis"])?;
        if basis.rows() > 0 && basis.cols() != a.rows() {
            return Err(NcxError::DimensionMismatch("HI_basis rows must live in H".into()));
        }
        let q = parse_scalar(&v["q"])?;
        Self::new(n, a, basis.row_vecs().to_vec(), q)
    }
}

/// ℋ• = ℋ ⊕ (ℋ/ℋ_I)^{N-1} with d and the extension of A.
#[derive(Clone, Debug)]
pub struct ExtendedSpace<F> {
    n: usize,
    h: usize,
    r: usize,
    quotient: Quotient<F>,
    complex: GradedNComplex<F>,
    d: ExactMatrix<F>,
    a: ExactMatrix<F>,
    q_total: ExactMatrix<F>,
}

impl<F: Field> ExtendedSpace<F> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.h + (self.n - 1) * self.r
    }

    /// dim ℋ/ℋ_I
    pub fn quotient_dim(&self) -> usize {
        self.r
    }

    pub fn offset(&self, degree: usize) -> usize {
        if degree == 0 {
            0
        } else {
            self.h + (degree - 1) * self.r
        }
    }

    /// (ℋ•, d) as an N-complex in degrees 0..N-1.
    pub fn complex(&self) -> &GradedNComplex<F> {
        &self.complex
    }

    pub fn d(&self) -> &ExactMatrix<F> {
        &self.d
    }

    pub fn a(&self) -> &ExactMatrix<F> {
        &self.a
    }

    /// Q = d + A
    pub fn q_matrix(&self) -> &ExactMatrix<F> {
        &self.q_total
    }

    /// Class of ψ ∈ ℋ in ℋ/ℋ_I.
    pub fn project(&self, v: &SparseVec<F>) -> SparseVec<F> {
        self.quotient.coordinates(v).expect("Z is all of H")
    }

    /// Representative in ℋ of the i-th basis class of ℋ/ℋ_I.
    pub fn lift(&self, i: usize) -> &SparseVec<F> {
        self.quotient.representative(i)
    }
}

/// Places the blocks of a block-diagonal or block-shift operator into one matrix.
fn assemble<F: Field>(size: usize, blocks: &[(usize, usize, &ExactMatrix<F>)]) -> ExactMatrix<F> {
    let mut trip = Vec::new();
    for (r0, c0, m) in blocks {
        for (i, row) in m.row_vecs().iter().enumerate() {
            for (j, v) in row.iter() {
                trip.push((r0 + i, c0 + j, v.clone()));
            }
        }
    }
    ExactMatrix::from_triplets(size, size, trip)
}

pub fn extend<F: Field>(g: &GaugeInstance<F>) -> Result<ExtendedSpace<F>> {
    let (n, h) = (g.n, g.dim());
    let q2 = require_primitive_square(&g.q, n)?;
    let quotient = Quotient::new(Subspace::full(h), g.hi.basis())?;
    let r = quotient.dim();
    let pi_cols: Vec<SparseVec<F>> = (0..h).map(|j| quotient.coordinates(&SparseVec::unit(j))).collect::<Result<_>>()?;
    let pi = ExactMatrix::from_columns(r, &pi_cols);
    // A on ℋ/ℋ_I
    let abar_cols: Vec<SparseVec<F>> =
        (0..r).map(|j| quotient.coordinates(&g.a.apply(quotient.representative(j)))).collect::<Result<_>>()?;
    let abar = ExactMatrix::from_columns(r, &abar_cols);

    let mut dims = vec![h];
    dims.extend(std::iter::repeat(r).take(n - 1));
    let mut maps = vec![pi.clone()];
    maps.extend((1..n - 1).map(|_| ExactMatrix::identity(r)));
    let complex = GradedNComplex::with_boundaries(n, 0, dims, maps, Boundary::Zero, Boundary::Zero)?;

    let size = h + (n - 1) * r;
    let off = |k: usize| if k == 0 { 0 } else { h + (k - 1) * r };
    let id = ExactMatrix::identity(r);
    let mut d_blocks = vec![(off(1), 0, &pi)];
    for k in 1..n - 1 {
        d_blocks.push((off(k + 1), off(k), &id));
    }
    let d = assemble(size, &d_blocks);
    let scaled: Vec<ExactMatrix<F>> = (1..n).map(|k| abar.scale(&q2.pow(k as u64))).collect();
    let mut a_blocks = vec![(0, 0, &g.a)];
    for k in 1..n {
        a_blocks.push((off(k), off(k), &scaled[k - 1]));
    }
    let a = assemble(size, &a_blocks);
    let q_total = d.add(&a);

    if !d.pow(n).is_zero() {
        return Err(NcxError::NotNilpotent { n });
    }
    if !a.mul(&d).sub(&d.mul(&a).scale(&q2)).is_zero() {
        return Err(NcxError::Invalid("A d - q^2 d A does not vanish on the extension".into()));
    }
    if !a.pow(n).is_zero() || !q_total.pow(n).is_zero() {
        return Err(NcxError::NotNilpotent { n });
    }
    let ext = ExtendedSpace { n, h, r, quotient, complex, d, a, q_total };
    check_extension_resolves(&ext, g)?;
    Ok(ext)
}

/// H^n_(k)(ℋ•, d) = 0 for n ≥ 1 and H⁰_(k) = ℋ_I.
fn check_extension_resolves<F: Field>(ext: &ExtendedSpace<F>, g: &GaugeInstance<F>) -> Result<()> {
    let hom = ext.complex.homology();
    for k in 1..ext.n {
        for deg in 1..ext.n as i64 {
            if hom.dim(deg, k) != Some(0) {
                return Err(NcxError::NotExact(format!("H^{deg}_({k}) of the extended complex is nonzero")));
            }
        }
        let z = hom.get(0, k).ok_or_else(|| NcxError::Invalid("degree 0 homology missing".into()))?;
        if z.dim() != g.hi.dim() || !g.hi.basis().iter().all(|b| z.z().contains(b)) {
            return Err(NcxError::NotExact(format!("H^0_({k}) differs from H_I")));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem5Row {
    pub k: usize,
    pub extended: usize,
    pub invariant: usize,
    /// classes of H_(k)(ℋ_I, A) stay independent modulo im Q^{N-k}
    pub injective: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem5Report {
    pub n: usize,
    pub dim_h: usize,
    pub dim_hi: usize,
    pub dim_extended: usize,
    pub rows: Vec<Theorem5Row>,
    pub holds: bool,
}

pub fn theorem5_verify<F: Field>(g: &GaugeInstance<F>) -> Result<Theorem5Report> {
    let ext = extend(g)?;
    let n = g.n;
    let total = NDiffModule::new(n, ext.q_total.clone())?;
    let inner = NDiffModule::new(n, g.restricted())?;
    let mut rows = Vec::new();
    for k in 1..n {
        let hq = total.homology_piece(k)?;
        let ha = inner.homology_piece(k)?;
        let mut classes = Vec::with_capacity(ha.dim());
        for rep in ha.representatives() {
            // ℋ_I ⊂ ℋ = ℋ⁰ ⊂ ℋ•
            classes.push(hq.coordinates(&g.hi.combine(&rep))?);
        }
        let independent = Subspace::span(hq.dim(), classes).dim() == ha.dim();
        rows.push(Theorem5Row { k, extended: hq.dim(), invariant: ha.dim(), injective: independent });
    }
    let holds = rows.iter().all(|r| r.extended == r.invariant && r.injective);
    Ok(Theorem5Report { n, dim_h: g.dim(), dim_hi: g.hi.dim(), dim_extended: ext.dim(), rows, holds })
}

fn small_vector<F: Field, R: Rng>(rng: &mut R, dim: usize) -> SparseVec<F> {
    SparseVec::from_pairs((0..dim).map(|i| (i, F::from_i64(rng.gen_range(-2..=2)))).collect())
}

/// Random instance with dim ℋ ≤ max_dim and ℋ_I = Σ_k A^k(S) for a random seed S of
/// one to three vectors.
pub fn random_instance<F: Field, R: Rng>(rng: &mut R, n: usize, max_dim: usize, q: F) -> Result<GaugeInstance<F>> {
    let (module, _) = random_module::<F, R>(rng, n, max_dim);
    let a = module.d().clone();
    let h = a.rows();
    let seeds = rng.gen_range(0..=3.min(h));
    let mut gens = Vec::new();
    for _ in 0..seeds {
        let mut v = small_vector(rng, h);
        while !v.is_zero() {
            gens.push(v.clone());
            v = a.apply(&v);
        }
    }
    GaugeInstance::new(n, a, gens, q)
}

/// ℋ of dimension N⁴ and ℋ_I of dimension 2N-1, spanned by one Jordan chain of each
/// length N and N-1; the rest of ℋ is filled with chains of length N, then conjugated.
pub fn wznw_shaped<F: Field, R: Rng>(rng: &mut R, n: usize, q: F) -> Result<GaugeInstance<F>> {
    let h = n.pow(4);
    let mut blocks = vec![n, n - 1];
    let mut used = 2 * n - 1;
    while used < h {
        let b = n.min(h - used);
        blocks.push(b);
        used += b;
    }
    let base = NDiffModule::<F>::from_blocks(n, &blocks)?;
    let (p, p_inv) = unimodular_pair(rng, h, 3 * h);
    let a = p.mul(base.d()).mul(&p_inv);
    let gens: Vec<SparseVec<F>> = (0..2 * n - 1).map(|i| p.column(i)).collect();
    GaugeInstance::new(n, a, gens, q)
}

/// A product P of elementary matrices I ± e_i e_jᵀ together with P⁻¹.
fn unimodular_pair<F: Field, R: Rng>(rng: &mut R, h: usize, ops: usize) -> (ExactMatrix<F>, ExactMatrix<F>) {
    let mut p = ExactMatrix::<F>::identity(h).to_dense();
    let mut p_inv = p.clone();
    if h < 2 {
        return (ExactMatrix::from_dense(&p), ExactMatrix::from_dense(&p_inv));
    }
    for _ in 0..ops {
        let i = rng.gen_range(0..h);
        let mut j = rng.gen_range(0..h - 1);
        if j >= i {
            j += 1;
        }
        let c = F::from_i64(if rng.gen_bool(0.5) { 1 } else { -1 });
        let rj = p[j].clone();
        for (x, y) in p[i].iter_mut().zip(rj.iter()) {
            *x += &(c.clone() * y);
        }
        for row in p_inv.iter_mut() {
            let t = row[i].clone();
            row[j].sub_mul(&c, &t);
        }
    }
    (ExactMatrix::from_dense(&p), ExactMatrix::from_dense(&p_inv))
}

/// The extension ᾱ: (ℋ•, d) → (𝒞, d) of a degree-0 map α: ℋ → 𝒞⁰ with dα(ℋ_I) = 0.
#[derive(Clone, Debug)]
pub struct UniversalExtension<F> {
    /// ᾱ_m: ℋ^m → 𝒞^m for m = 0..N-1
    pub maps: Vec<ExactMatrix<F>>,
    pub chain_map: bool,
    /// d: ℋ^m → ℋ^{m+1} is onto for m < N-1, which pins each ᾱ_{m+1} down
    pub unique: bool,
}

pub fn universal_extension<F: Field>(
    ext: &ExtendedSpace<F>,
    target: &GradedNComplex<F>,
    alpha: &ExactMatrix<F>,
    hi: &Subspace<F>,
) -> Result<UniversalExtension<F>> {
    let n = ext.n;
    if target.component_dim(0) != Some(alpha.rows()) || alpha.cols() != ext.h {
        return Err(NcxError::DimensionMismatch("alpha must map H into the degree 0 component".into()));
    }
    let d = target.map(0).ok_or_else(|| NcxError::OutsideWindow { degree: 0, m: 1 })?;
    for b in hi.basis() {
        if !d.apply(&alpha.apply(b)).is_zero() {
            return Err(NcxError::Invalid("d alpha does not vanish on H_I".into()));
        }
    }
    let mut maps = vec![alpha.clone()];
    for m in 1..n {
        let dm = target.map_power(0, m).ok_or_else(|| NcxError::OutsideWindow { degree: m as i64, m })?;
        let cols: Vec<SparseVec<F>> = (0..ext.r).map(|i| dm.apply(&alpha.apply(ext.lift(i)))).collect();
        maps.push(ExactMatrix::from_columns(dm.rows(), &cols));
    }
    let mut chain_map = true;
    let mut unique = true;
    for m in 0..n {
        let own = ext.complex.map(m as i64);
        if let Some(tm) = target.map(m as i64) {
            let lhs = tm.mul(&maps[m]);
            let rhs = match (&own, maps.get(m + 1)) {
                (Some(dm), Some(next)) => next.mul(dm),
                _ => ExactMatrix::zeros(lhs.rows(), lhs.cols()),
            };
            chain_map &= lhs == rhs;
        }
        if m + 1 < n {
            unique &= own.map_or(false, |dm| crate::linalg::rank(&dm) == ext.r);
        }
    }
    Ok(UniversalExtension { maps, chain_map, unique })
}
