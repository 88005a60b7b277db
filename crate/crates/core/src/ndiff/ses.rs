use rand::Rng;
use serde::Serialize;

use super::{cyclic_exactness, ExactnessReport, GeneralizedHomology, NDiffModule};
use crate::error::{NcxError, Result};
use crate::linalg::{induced_map, rank, solve, ExactMatrix, SparseVec};
use crate::scalars::Field;

/// 0 → E →φ F →ψ G → 0 with all three modules and both chain maps.
#[derive(Clone, Debug)]
pub struct ShortExactSequence<F> {
    pub e: NDiffModule<F>,
    pub f: NDiffModule<F>,
    pub g: NDiffModule<F>,
    pub phi: ExactMatrix<F>,
    pub psi: ExactMatrix<F>,
}

impl<F: Field> ShortExactSequence<F> {
    pub fn new(
        e: NDiffModule<F>,
        f: NDiffModule<F>,
        g: NDiffModule<F>,
        phi: ExactMatrix<F>,
        psi: ExactMatrix<F>,
    ) -> Result<Self> {
        let n = f.n();
        if e.n() != n || g.n() != n {
            return Err(NcxError::Invalid("modules have different N".into()));
        }
        if phi.rows() != f.dim() || phi.cols() != e.dim() || psi.rows() != g.dim() || psi.cols() != f.dim() {
            return Err(NcxError::DimensionMismatch("φ: E → F and ψ: F → G have the wrong shapes".into()));
        }
        if phi.mul(e.d()) != f.d().mul(&phi) || psi.mul(f.d()) != g.d().mul(&psi) {
            return Err(NcxError::Invalid("maps do not commute with the differentials".into()));
        }
        let (rp, rs) = (rank(&phi), rank(&psi));
        if rp != e.dim() || rs != g.dim() || !psi.mul(&phi).is_zero() || rp + rs != f.dim() {
            return Err(NcxError::NotExact("0 → E → F → G → 0 is not exact".into()));
        }
        Ok(ShortExactSequence { e, f, g, phi, psi })
    }

    pub fn n(&self) -> usize {
        self.f.n()
    }
}

/// The lifting recipe: z ↦ y with ψ y = z, then x with φ x = d^m y.
fn connect_vector<F: Field>(s: &ShortExactSequence<F>, m: usize, z: &SparseVec<F>, shift: Option<&SparseVec<F>>) -> Result<SparseVec<F>> {
    let mut y = solve(&s.psi, z).ok_or_else(|| NcxError::Invalid("ψ is not surjective".into()))?;
    if let Some(e) = shift {
        y = y.add(&s.phi.apply(e));
    }
    let w = s.f.power_ref(m).apply(&y);
    let x = solve(&s.phi, &w).ok_or_else(|| NcxError::NotExact("d^m y is not in the image of φ".into()))?;
    if !s.e.power_ref(s.n() - m).apply(&x).is_zero() {
        return Err(NcxError::NotExact("connecting image is not a cycle".into()));
    }
    Ok(x)
}

/// ∂: H_(m)(G) → H_(N-m)(E) in the homology representative bases.
pub fn ses_connecting<F: Field>(
    s: &ShortExactSequence<F>,
    hg: &GeneralizedHomology<F>,
    he: &GeneralizedHomology<F>,
    m: usize,
) -> Result<ExactMatrix<F>> {
    induced_map(hg.piece(m), he.piece(s.n() - m), |z| connect_vector(s, m, z, None).expect("valid sequence"))
}

/// Re-run ∂ with a different lift (y + φ e) and a different representative
/// (z + d^{N-m} g) and compare classes.
pub fn connecting_is_well_defined<F: Field, R: Rng>(
    s: &ShortExactSequence<F>,
    hg: &GeneralizedHomology<F>,
    he: &GeneralizedHomology<F>,
    m: usize,
    rng: &mut R,
) -> Result<bool> {
    let n = s.n();
    let base = ses_connecting(s, hg, he, m)?;
    let target = he.piece(n - m);
    for i in 0..hg.dim(m) {
        let rand_vec = |rng: &mut R, dim: usize| {
            SparseVec::from_dense(&(0..dim).map(|_| F::from_i64(rng.gen_range(-2..=2))).collect::<Vec<_>>())
        };
        let shift = rand_vec(rng, s.e.dim());
        let z = hg.piece(m).representative(i).add(&s.g.power_ref(n - m).apply(&rand_vec(rng, s.g.dim())));
        let x = connect_vector(s, m, &z, Some(&shift))?;
        if target.coordinates(&x)? != base.column(i) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct SesHexagonReport {
    pub n: usize,
    pub exactness: ExactnessReport,
}

/// H_(n)(E) → H_(n)(F) → H_(n)(G) →∂ H_(N-n)(E) → H_(N-n)(F) → H_(N-n)(G) →∂ H_(n)(E).
pub fn ses_hexagon_check<F: Field>(s: &ShortExactSequence<F>) -> Result<Vec<SesHexagonReport>> {
    let big_n = s.n();
    let (he, hf, hg) = (s.e.homology(), s.f.homology(), s.g.homology());
    let mut out = Vec::new();
    for n in 1..big_n {
        let k = big_n - n;
        let maps = vec![
            induced_map(he.piece(n), hf.piece(n), |v| s.phi.apply(v))?,
            induced_map(hf.piece(n), hg.piece(n), |v| s.psi.apply(v))?,
            ses_connecting(s, &hg, &he, n)?,
            induced_map(he.piece(k), hf.piece(k), |v| s.phi.apply(v))?,
            induced_map(hf.piece(k), hg.piece(k), |v| s.psi.apply(v))?,
            ses_connecting(s, &hg, &he, k)?,
        ];
        let names: Vec<String> = [("E", n), ("F", n), ("G", n), ("E", k), ("F", k), ("G", k)]
            .iter()
            .map(|(x, j)| format!("H_({j})({x})"))
            .collect();
        out.push(SesHexagonReport { n, exactness: cyclic_exactness(&names, &maps) });
    }
    Ok(out)
}
