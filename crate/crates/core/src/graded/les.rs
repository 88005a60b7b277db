use serde::Serialize;

use super::GradedNComplex;
use crate::error::{NcxError, Result};
use crate::linalg::{induced_map, rank, solve, ExactMatrix, Quotient};
use crate::ndiff::{linear_exactness, ExactnessReport};
use crate::scalars::Field;

/// Degreewise short exact sequence 0 → E → F → G → 0 of N-complexes that
/// share one degree window. phi[i], psi[i] act in degree min + i.
#[derive(Clone, Debug)]
pub struct GradedSes<F> {
    pub e: GradedNComplex<F>,
    pub f: GradedNComplex<F>,
    pub g: GradedNComplex<F>,
    pub phi: Vec<ExactMatrix<F>>,
    pub psi: Vec<ExactMatrix<F>>,
}

impl<F: Field> GradedSes<F> {
    pub fn new(
        e: GradedNComplex<F>,
        f: GradedNComplex<F>,
        g: GradedNComplex<F>,
        phi: Vec<ExactMatrix<F>>,
        psi: Vec<ExactMatrix<F>>,
    ) -> Result<Self> {
        if e.n() != f.n() || g.n() != f.n() || e.degrees() != f.degrees() || g.degrees() != f.degrees() {
            return Err(NcxError::Invalid("complexes must share N and degree window".into()));
        }
        if e.grading() != f.grading() || g.grading() != f.grading() {
            return Err(NcxError::Invalid("complexes must share their grading".into()));
        }
        let s = GradedSes { e, f, g, phi, psi };
        for deg in s.f.degrees() {
            let (p, q) = (s.phi_at(deg), s.psi_at(deg));
            let (de, df, dg) =
                (s.e.component_dim(deg).unwrap(), s.f.component_dim(deg).unwrap(), s.g.component_dim(deg).unwrap());
            if p.cols() != de || p.rows() != df || q.cols() != df || q.rows() != dg {
                return Err(NcxError::DimensionMismatch(format!("maps in degree {deg} have wrong shapes")));
            }
            let (rp, rq) = (rank(p), rank(q));
            if rp != de || rq != dg || rp + rq != df || !q.mul(p).is_zero() {
                return Err(NcxError::NotExact(format!("not short exact in degree {deg}")));
            }
            if let (Some(me), Some(mf), Some(mg)) = (s.e.map(deg), s.f.map(deg), s.g.map(deg)) {
                let next = deg + 1;
                if s.f.degrees().contains(&next) || s.f.is_cyclic() {
                    if s.phi_at(next).mul(&me) != mf.mul(p) || s.psi_at(next).mul(&mf) != mg.mul(q) {
                        return Err(NcxError::Invalid(format!("maps do not commute with d in degree {deg}")));
                    }
                }
            }
        }
        Ok(s)
    }

    fn index(&self, deg: i64) -> usize {
        if self.f.is_cyclic() {
            deg.rem_euclid(self.f.n() as i64) as usize
        } else {
            (deg - self.f.min_degree()) as usize
        }
    }

    pub fn phi_at(&self, deg: i64) -> &ExactMatrix<F> {
        &self.phi[self.index(deg)]
    }

    pub fn psi_at(&self, deg: i64) -> &ExactMatrix<F> {
        &self.psi[self.index(deg)]
    }

    fn in_window(&self, deg: i64) -> bool {
        self.f.is_cyclic() || self.f.degrees().contains(&deg)
    }

    /// ∂: H^deg_(m)(G) → H^{deg+m}_(N-m)(E), by lifting through ψ and pulling back through φ.
    pub fn connecting(&self, deg: i64, m: usize, hg: &Quotient<F>, he: &Quotient<F>) -> Result<ExactMatrix<F>> {
        let top = deg + m as i64;
        let dm = self.f.map_power(deg, m).ok_or(NcxError::OutsideWindow { degree: deg, m })?;
        let psi = self.psi_at(deg).clone();
        let phi = self.phi_at(top).clone();
        let mut err = None;
        let out = induced_map(hg, he, |z| {
            let y = solve(&psi, z).expect("ψ is surjective");
            match solve(&phi, &dm.apply(&y)) {
                Some(x) => x,
                None => {
                    err = Some(NcxError::NotExact("d^m y is not in the image of φ".into()));
                    crate::linalg::SparseVec::new()
                }
            }
        });
        // induced_map takes Fn, so the error is checked afterwards
        if let Some(e) = err {
            return Err(e);
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LesReport {
    pub n: usize,
    pub p: i64,
    pub first_degree: i64,
    pub nodes: usize,
    pub exactness: ExactnessReport,
}

#[derive(Clone, Copy)]
enum Node {
    E,
    F,
    G,
}

/// Exactness of the long sequence (S_{n,p}) inside the window:
/// H^a_(n)(E) → H^a_(n)(F) → H^a_(n)(G) →∂ H^{a+n}_(N-n)(E) → ... with a ≡ p mod N.
pub fn les_check<F: Field>(s: &GradedSes<F>, n: usize, p: i64) -> Result<LesReport> {
    let big_n = s.f.n();
    if n == 0 || n >= big_n {
        return Err(NcxError::Invalid(format!("n must lie in 1..N-1, got {n}")));
    }
    let nn = big_n as i64;
    // node list: (degree, m, which)
    let (lo, hi) = if s.f.is_cyclic() {
        (p.rem_euclid(nn), p.rem_euclid(nn) + 3 * nn)
    } else {
        let lo = s.f.min_degree() - nn;
        (lo + (p - lo).rem_euclid(nn), s.f.max_degree())
    };
    let mut nodes = Vec::new();
    let mut a = lo;
    while a <= hi {
        for (deg, m) in [(a, n), (a + n as i64, big_n - n)] {
            for w in [Node::E, Node::F, Node::G] {
                nodes.push((deg, m, w));
            }
        }
        a += nn;
    }
    let cx = |w: Node| match w {
        Node::E => &s.e,
        Node::F => &s.f,
        Node::G => &s.g,
    };
    let homs: Vec<Option<Quotient<F>>> =
        nodes.iter().map(|&(deg, m, w)| if s.in_window(deg) { cx(w).homology_at(deg, m) } else { None }).collect();
    // longest run of determinate nodes
    let (mut best, mut cur) = ((0, 0), (0, 0));
    for (i, h) in homs.iter().enumerate() {
        if h.is_some() {
            if cur.1 == 0 {
                cur.0 = i;
            }
            cur.1 += 1;
            if cur.1 > best.1 {
                best = cur;
            }
        } else {
            cur.1 = 0;
        }
    }
    let (start, len) = best;
    if len < 7 {
        return Err(NcxError::Invalid(format!(
            "window too small: only {len} consecutive determinate nodes, a full period needs 7"
        )));
    }
    let mut maps = Vec::with_capacity(len - 1);
    for i in start..start + len - 1 {
        let (deg, m, w) = nodes[i];
        let (src, tgt) = (homs[i].as_ref().unwrap(), homs[i + 1].as_ref().unwrap());
        let map = match w {
            Node::E => induced_map(src, tgt, |v| s.phi_at(deg).apply(v))?,
            Node::F => induced_map(src, tgt, |v| s.psi_at(deg).apply(v))?,
            Node::G => s.connecting(deg, m, src, tgt)?,
        };
        maps.push(map);
    }
    let names: Vec<String> = nodes[start..start + len]
        .iter()
        .map(|&(deg, m, w)| {
            let c = match w {
                Node::E => "E",
                Node::F => "F",
                Node::G => "G",
            };
            format!("H^{deg}_({m})({c})")
        })
        .collect();
    Ok(LesReport { n, p, first_degree: nodes[start].0, nodes: len, exactness: linear_exactness(&names, &maps) })
}
