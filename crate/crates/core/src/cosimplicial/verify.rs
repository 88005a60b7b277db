use serde::Serialize;

use crate::error::{NcxError, Result};
use crate::graded::GradedNComplex;
use crate::scalars::{Field, QContext};

use super::{omega_q, ordinary_cohomology, AlgebraData, CosimplicialData, TensorAlgebra};

#[derive(Debug, Clone, Serialize)]
pub struct Theorem2Row {
    pub differential: &'static str,
    pub degree: usize,
    pub m: usize,
    pub computed: usize,
    pub predicted: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem2Report {
    pub n: usize,
    pub window: usize,
    /// dim H^k(E) for the simplicial differential, where determined
    pub ordinary: Vec<Option<usize>>,
    pub rows: Vec<Theorem2Row>,
    pub holds: bool,
}

fn check_window(n: usize, window: usize, n_max: usize) -> Result<()> {
    if window + 1 < n {
        return Err(NcxError::Invalid(format!("window too small: degrees 0..={window} do not cover one period N={n}")));
    }
    if n_max < window + n - 1 {
        return Err(NcxError::OutsideWindow { degree: window as i64, m: n - 1 });
    }
    Ok(())
}

/// Expected dimension of H^deg_(m) from the ordinary cohomology, for d₀ or d₁.
fn predicted(which: usize, n: usize, deg: usize, m: usize, ordinary: &[Option<usize>]) -> Result<usize> {
    let look = |k: usize| {
        ordinary.get(k).copied().flatten().ok_or(NcxError::OutsideWindow { degree: k as i64, m: 1 })
    };
    if which == 1 {
        // H^{Nr} = H^{2r}, H^{N(r+1)-m} = H^{2r+1}
        if deg % n == 0 {
            return look(2 * (deg / n));
        }
        if (deg + m) % n == 0 {
            return look(2 * ((deg + m) / n - 1) + 1);
        }
    } else {
        // H^{Nr-1} = H^{2r-1}, H^{N(r+1)-m-1} = H^{2r}
        if (deg + 1) % n == 0 {
            return look(2 * ((deg + 1) / n) - 1);
        }
        if (deg + m + 1) % n == 0 {
            return look(2 * ((deg + m + 1) / n - 1));
        }
    }
    Ok(0)
}

/// Compares H_(m)(E, d₀) and H_(m)(E, d₁) in degrees 0..=window with the pattern
/// predicted from the ordinary cohomology of E.
pub fn theorem2_verify<F: Field>(e: &CosimplicialData<F>, q: &F, n: usize, window: usize) -> Result<Theorem2Report> {
    QContext::new(q.clone(), n)?.require_a1()?;
    if !e.has_codegeneracies() {
        return Err(NcxError::Invalid("a cosimplicial module (with codegeneracies) is required".into()));
    }
    check_window(n, window, e.n_max())?;
    let ordinary = ordinary_cohomology(&e.simplicial_differential()?);
    let mut rows = Vec::new();
    for (which, c) in [(0, e.d0(q, n)?), (1, e.d1(q, n)?)] {
        let h = c.homology();
        for deg in 0..=window {
            for m in 1..n {
                let computed = h.dim(deg as i64, m).ok_or(NcxError::OutsideWindow { degree: deg as i64, m })?;
                rows.push(Theorem2Row {
                    differential: if which == 0 { "d0" } else { "d1" },
                    degree: deg,
                    m,
                    computed,
                    predicted: predicted(which, n, deg, m, &ordinary)?,
                });
            }
        }
    }
    let holds = rows.iter().all(|r| r.computed == r.predicted);
    Ok(Theorem2Report { n, window, ordinary, rows, holds })
}

#[derive(Debug, Clone, Serialize)]
pub struct Prop7Row {
    pub complex: &'static str,
    pub degree: usize,
    pub k: usize,
    pub dim: usize,
    pub expected: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Prop7Report {
    pub n: usize,
    pub window: usize,
    pub omega_q_dims: Vec<usize>,
    pub rows: Vec<Prop7Row>,
    pub holds: bool,
}

fn vanishing_rows<F: Field>(name: &'static str, c: &GradedNComplex<F>, n: usize, window: usize) -> Result<Vec<Prop7Row>> {
    let h = c.homology();
    let mut rows = Vec::new();
    for deg in 0..=window {
        for k in 1..n {
            let dim = h.dim(deg as i64, k).ok_or(NcxError::OutsideWindow { degree: deg as i64, m: k })?;
            rows.push(Prop7Row { complex: name, degree: deg, k, dim, expected: usize::from(deg == 0) });
        }
    }
    Ok(rows)
}

/// H_(k)(𝔗(A), d₁) and H_(k)(Ω_q(A)) in degrees 0..=window: the ground field in degree 0, zero above.
pub fn prop7_verify<F: Field>(a: &AlgebraData<F>, q: &F, n: usize, window: usize) -> Result<Prop7Report> {
    QContext::new(q.clone(), n)?.require_a1()?;
    a.unit_form()?;
    let levels = window + n - 1;
    check_window(n, window, levels)?;
    let t = TensorAlgebra::new(a, levels)?;
    let mut rows = vanishing_rows("T", &t.data().d1(q, n)?, n, window)?;
    let om = omega_q(a, q, n, levels)?;
    rows.extend(vanishing_rows("Omega_q", &om.complex, n, window)?);
    let holds = rows.iter().all(|r| r.dim == r.expected);
    Ok(Prop7Report { n, window, omega_q_dims: om.dims(), rows, holds })
}
