//! N-differential modules: generalized homology H_(m) = ker d^m / im d^{N-m},
//! Jordan multiplicities, hexagons, homotopy criteria, tensor products and
//! short exact sequences.

pub mod random;
mod ses;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{NcxError, Result};
use crate::linalg::{induced_map, rank, ExactMatrix, Quotient, Subspace};
use crate::scalars::{Field, FieldDescriptor, QContext};

pub use ses::{connecting_is_well_defined, ses_connecting, ses_hexagon_check, ShortExactSequence};

#[derive(Clone, Debug)]
pub struct NDiffModule<F> {
    n: usize,
    d: ExactMatrix<F>,
    // d^0, ..., d^N
    powers: Vec<ExactMatrix<F>>,
}

impl<F: Field> NDiffModule<F> {
    pub fn new(n: usize, d: ExactMatrix<F>) -> Result<Self> {
        if n < 2 {
            return Err(NcxError::Invalid(format!("N must be at least 2, got {n}")));
        }
        if !d.is_square() {
            return Err(NcxError::DimensionMismatch(format!("d is {}x{}", d.rows(), d.cols())));
        }
        let mut powers = vec![ExactMatrix::identity(d.rows())];
        for k in 1..=n {
            let next = powers[k - 1].mul(&d);
            powers.push(next);
        }
        if !powers[n].is_zero() {
            return Err(NcxError::NotNilpotent { n });
        }
        Ok(NDiffModule { n, d, powers })
    }

    /// Direct sum of Jordan blocks D_k (superdiagonal ones), blocks in the given order.
    pub fn from_blocks(n: usize, blocks: &[usize]) -> Result<Self> {
        let dim: usize = blocks.iter().sum();
        let mut trip = Vec::new();
        let mut off = 0;
        for &b in blocks {
            for i in 1..b {
                trip.push((off + i - 1, off + i, F::one()));
            }
            off += b;
        }
        Self::new(n, ExactMatrix::from_triplets(dim, dim, trip))
    }

    /// Blocks D_n repeated m_n times, for multiplicities m_1, ..., m_N.
    pub fn from_multiplicities(n: usize, mult: &[usize]) -> Result<Self> {
        let blocks: Vec<usize> =
            mult.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat(i + 1).take(m)).collect();
        Self::from_blocks(n, &blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d.rows()
    }

    pub fn d(&self) -> &ExactMatrix<F> {
        &self.d
    }

    /// d^k for 0 ≤ k ≤ N (d^k = 0 beyond).
    pub fn power(&self, k: usize) -> ExactMatrix<F> {
        if k <= self.n {
            self.powers[k].clone()
        } else {
            ExactMatrix::zeros(self.dim(), self.dim())
        }
    }

    pub fn power_ref(&self, k: usize) -> &ExactMatrix<F> {
        &self.powers[k.min(self.n)]
    }

    pub fn homology_piece(&self, m: usize) -> Result<Quotient<F>> {
        if m == 0 || m >= self.n {
            return Err(NcxError::Invalid(format!("m must lie in 1..N-1, got {m}")));
        }
        let z = Subspace::kernel_of(&self.powers[m]);
        Quotient::new(z, &self.powers[self.n - m].columns())
    }

    pub fn homology(&self) -> GeneralizedHomology<F> {
        let pieces = (1..self.n).map(|m| self.homology_piece(m).expect("im d^(N-m) ⊆ ker d^m")).collect();
        GeneralizedHomology { n: self.n, pieces }
    }

    /// rank(d^k) for k = 0..=N.
    pub fn power_ranks(&self) -> Vec<usize> {
        self.powers.iter().map(rank).collect()
    }

    pub fn multiplicities(&self) -> Result<Vec<usize>> {
        multiplicities_from_ranks(self.n, self.dim(), &self.power_ranks())
    }

    pub fn to_json(&self, field: &FieldDescriptor) -> Value {
        json!({ "N": self.n, "field": field.name(), "d": self.d.to_json(field) })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v["N"].as_u64().ok_or_else(|| NcxError::Parse("module JSON needs \"N\"".into()))? as usize;
        Self::new(n, ExactMatrix::from_json(&v["d"])?)
    }
}

/// m_n = r_{n-1} - 2 r_n + r_{n+1}, with r_{N+1} = 0.
pub fn multiplicities_from_ranks(n: usize, dim: usize, ranks: &[usize]) -> Result<Vec<usize>> {
    if ranks.len() != n + 1 || ranks[0] != dim || ranks[n] != 0 {
        return Err(NcxError::Invalid("rank sequence inconsistent with d^N = 0".into()));
    }
    let r = |k: usize| if k <= n { ranks[k] as i64 } else { 0 };
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let m = r(k - 1) - 2 * r(k) + r(k + 1);
        if m < 0 {
            return Err(NcxError::Invalid(format!("negative multiplicity m_{k} = {m}")));
        }
        out.push(m as usize);
    }
    if out.iter().enumerate().map(|(i, m)| (i + 1) * m).sum::<usize>() != dim {
        return Err(NcxError::Invalid("multiplicities do not add up to dim".into()));
    }
    Ok(out)
}

/// Σ_{j=1}^{k} Σ_{i=j}^{N-j} m_i.
pub fn multiplicity_formula(n: usize, mult: &[usize], k: usize) -> usize {
    (1..=k).map(|j| (j..=n.saturating_sub(j)).map(|i| mult[i - 1]).sum::<usize>()).sum()
}

#[derive(Clone, Debug)]
pub struct GeneralizedHomology<F> {
    n: usize,
    pieces: Vec<Quotient<F>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomologyDims {
    pub m: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
}

impl<F: Field> GeneralizedHomology<F> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// H_(m), 1 ≤ m ≤ N-1.
    pub fn piece(&self, m: usize) -> &Quotient<F> {
        &self.pieces[m - 1]
    }

    pub fn dim(&self, m: usize) -> usize {
        self.pieces[m - 1].dim()
    }

    pub fn dims(&self) -> Vec<HomologyDims> {
        self.pieces
            .iter()
            .enumerate()
            .map(|(i, p)| HomologyDims { m: i + 1, dim_z: p.z_dim(), dim_b: p.b_dim(), dim_h: p.dim() })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|p| p.dim() == 0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop4Report {
    pub multiplicities: Vec<usize>,
    pub rows: Vec<Prop4Row>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop4Row {
    pub k: usize,
    pub formula: usize,
    pub dim_h_k: usize,
    pub dim_h_n_minus_k: usize,
}

pub fn proposition4_check<F: Field>(e: &NDiffModule<F>) -> Result<Prop4Report> {
    let mult = e.multiplicities()?;
    let h = e.homology();
    let rows: Vec<Prop4Row> = (1..=e.n() / 2)
        .map(|k| Prop4Row {
            k,
            formula: multiplicity_formula(e.n(), &mult, k),
            dim_h_k: h.dim(k),
            dim_h_n_minus_k: h.dim(e.n() - k),
        })
        .collect();
    let holds = rows.iter().all(|r| r.formula == r.dim_h_k && r.formula == r.dim_h_n_minus_k);
    Ok(Prop4Report { multiplicities: mult, rows, holds })
}

/// [i]: H_(m) → H_(m+1), 1 ≤ m ≤ N-2.
pub fn induced_i<F: Field>(h: &GeneralizedHomology<F>, m: usize) -> Result<ExactMatrix<F>> {
    if m == 0 || m + 1 >= h.n() {
        return Err(NcxError::Invalid(format!("[i] needs 1 ≤ m ≤ N-2, got m={m}")));
    }
    induced_map(h.piece(m), h.piece(m + 1), |v| v.clone())
}

/// [d]: H_(m+1) → H_(m), 1 ≤ m ≤ N-2.
pub fn induced_d<F: Field>(e: &NDiffModule<F>, h: &GeneralizedHomology<F>, m: usize) -> Result<ExactMatrix<F>> {
    if m == 0 || m + 1 >= h.n() {
        return Err(NcxError::Invalid(format!("[d] needs 1 ≤ m ≤ N-2, got m={m}")));
    }
    induced_map(h.piece(m + 1), h.piece(m), |v| e.d().apply(v))
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexReport {
    pub vertex: String,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub composite_zero: bool,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub vertices: Vec<VertexReport>,
    pub exact: bool,
}

/// Exactness of a closed cycle of maps, maps[i]: vertex i → vertex i+1 (mod len).
pub fn cyclic_exactness<F: Field>(names: &[String], maps: &[ExactMatrix<F>]) -> ExactnessReport {
    let k = maps.len();
    let vertices: Vec<VertexReport> = (0..k)
        .map(|v| {
            let inc = &maps[(v + k - 1) % k];
            let out = &maps[v];
            vertex_report(names[v].clone(), inc, out)
        })
        .collect();
    let exact = vertices.iter().all(|v| v.exact);
    ExactnessReport { vertices, exact }
}

/// Exactness at the interior vertices of a chain of maps.
pub fn linear_exactness<F: Field>(names: &[String], maps: &[ExactMatrix<F>]) -> ExactnessReport {
    let vertices: Vec<VertexReport> =
        (1..maps.len()).map(|v| vertex_report(names[v].clone(), &maps[v - 1], &maps[v])).collect();
    let exact = vertices.iter().all(|v| v.exact);
    ExactnessReport { vertices, exact }
}

fn vertex_report<F: Field>(name: String, inc: &ExactMatrix<F>, out: &ExactMatrix<F>) -> VertexReport {
    let dim = inc.rows();
    assert_eq!(dim, out.cols(), "maps do not compose at {name}");
    let rank_in = rank(inc);
    let rank_out = rank(out);
    let composite_zero = out.mul(inc).is_zero();
    VertexReport { vertex: name, dim, rank_in, rank_out, composite_zero, exact: composite_zero && rank_in + rank_out == dim }
}

fn compose_chain<F: Field>(dim: usize, steps: Vec<ExactMatrix<F>>) -> ExactMatrix<F> {
    steps.into_iter().fold(ExactMatrix::identity(dim), |acc, s| s.mul(&acc))
}

/// [i]^k: H_(a) → H_(a+k) as a product of single steps.
fn i_power<F: Field>(h: &GeneralizedHomology<F>, a: usize, k: usize) -> Result<ExactMatrix<F>> {
    let steps = (0..k).map(|s| induced_i(h, a + s)).collect::<Result<Vec<_>>>()?;
    Ok(compose_chain(h.dim(a), steps))
}

/// [d]^k: H_(a) → H_(a-k).
fn d_power<F: Field>(e: &NDiffModule<F>, h: &GeneralizedHomology<F>, a: usize, k: usize) -> Result<ExactMatrix<F>> {
    let steps = (0..k).map(|s| induced_d(e, h, a - s - 1)).collect::<Result<Vec<_>>>()?;
    Ok(compose_chain(h.dim(a), steps))
}

#[derive(Clone, Debug, Serialize)]
pub struct HexagonReport {
    pub l: usize,
    pub m: usize,
    pub exactness: ExactnessReport,
}

/// The hexagon H_(m) → H_(l+m) → H_(l) → H_(N-m) → H_(N-l-m) → H_(N-l) → H_(m).
pub fn hexagon_check<F: Field>(e: &NDiffModule<F>, h: &GeneralizedHomology<F>, l: usize, m: usize) -> Result<HexagonReport> {
    let n = e.n();
    if l == 0 || m == 0 || l + m > n - 1 {
        return Err(NcxError::Invalid(format!("hexagon needs l, m ≥ 1 and l+m ≤ N-1 (N={n}, l={l}, m={m})")));
    }
    let r = n - l - m;
    let maps = vec![
        i_power(h, m, l)?,
        d_power(e, h, l + m, m)?,
        i_power(h, l, r)?,
        d_power(e, h, n - m, l)?,
        i_power(h, r, m)?,
        d_power(e, h, n - l, r)?,
    ];
    let names: Vec<String> =
        [m, l + m, l, n - m, r, n - l].iter().map(|k| format!("H_({k})")).collect();
    Ok(HexagonReport { l, m, exactness: cyclic_exactness(&names, &maps) })
}

pub fn all_hexagons<F: Field>(e: &NDiffModule<F>) -> Result<Vec<HexagonReport>> {
    let h = e.homology();
    let mut out = Vec::new();
    for l in 1..e.n() {
        for m in 1..e.n() - l {
            out.push(hexagon_check(e, &h, l, m)?);
        }
    }
    Ok(out)
}

/// Σ_k d^{N-1-k} h_k d^k = Id. When it holds, the homology is checked to vanish.
pub fn homotopy_criterion_lemma3<F: Field>(e: &NDiffModule<F>, hs: &[ExactMatrix<F>]) -> Result<bool> {
    let n = e.n();
    if hs.len() != n || hs.iter().any(|h| h.rows() != e.dim() || h.cols() != e.dim()) {
        return Err(NcxError::DimensionMismatch(format!("need {n} endomorphisms of dimension {}", e.dim())));
    }
    let mut sum = ExactMatrix::zeros(e.dim(), e.dim());
    for (k, h) in hs.iter().enumerate() {
        sum = sum.add(&e.power_ref(n - 1 - k).mul(h).mul(e.power_ref(k)));
    }
    let holds = sum == ExactMatrix::identity(e.dim());
    if holds && !e.homology().is_zero() {
        return Err(NcxError::NotExact("homotopy identity holds but homology is nonzero".into()));
    }
    Ok(holds)
}

/// h d - q d h = Id under (A1). When it holds, the homology is checked to vanish.
pub fn homotopy_criterion_lemma4<F: Field>(e: &NDiffModule<F>, h: &ExactMatrix<F>, q: &F) -> Result<bool> {
    QContext::new(q.clone(), e.n())?.require_a1()?;
    if h.rows() != e.dim() || h.cols() != e.dim() {
        return Err(NcxError::DimensionMismatch("h must be an endomorphism".into()));
    }
    let lhs = h.mul(e.d()).sub(&e.d().mul(h).scale(q));
    let holds = lhs == ExactMatrix::identity(e.dim());
    if holds && !e.homology().is_zero() {
        return Err(NcxError::NotExact("homotopy identity holds but homology is nonzero".into()));
    }
    Ok(holds)
}

/// d = d'⊗I + I⊗d'', an (N'+N''-1)-differential.
pub fn green_tensor<F: Field>(a: &NDiffModule<F>, b: &NDiffModule<F>) -> Result<NDiffModule<F>> {
    let d = a.d().kron(&ExactMatrix::identity(b.dim())).add(&ExactMatrix::identity(a.dim()).kron(b.d()));
    NDiffModule::new(a.n() + b.n() - 1, d)
}

#[cfg(test)]
mod tests;
