use serde::Serialize;

use crate::error::{NcxError, Result};
use crate::scalars::Field;

use super::koszul::koszul_report;
use super::longitudinal::LongitudinalForms;
use super::system::PolyConstraintSystem;
use super::tower::build_delta0_delta1;

#[derive(Debug, Clone, Serialize)]
pub struct Theorem4Row {
    pub weight: i64,
    pub degree: i64,
    pub brs: usize,
    pub longitudinal: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem4Report {
    pub rows: Vec<Theorem4Row>,
    /// largest r with δ_r ≠ 0
    pub tower_top: usize,
    /// Koszul complex of u acyclic in the window
    pub koszul_acyclic: bool,
    pub regular_asserted: bool,
    pub holds: bool,
}

/// H(𝒦, δ) against longitudinal cohomology, weight by weight up to w_max.
pub fn theorem4_verify<F: Field>(system: &PolyConstraintSystem<F>, w_max: i64) -> Result<Theorem4Report> {
    let top_u = (0..system.constraints().len()).map(|a| system.constraint_degree(a) as i64).max().unwrap_or(0);
    if w_max < top_u {
        return Err(NcxError::Invalid(format!("window too small: weights up to {w_max} do not reach the constraints (degree {top_u})")));
    }
    let koszul = koszul_report(system.constraints(), system.vars(), w_max.max(0) as usize, system.is_regular_asserted())?;
    let mut k = build_delta0_delta1(system)?;
    k.delta_tower()?;
    let lo = k.weights().lowest();
    let brs = k.brs_cohomology(w_max)?;
    let long = LongitudinalForms::of_system(system).cohomology(lo, w_max)?;
    let mut rows = Vec::new();
    for r in &brs {
        let l = long.iter().find(|x| x.weight == r.weight && x.degree == r.degree).map_or(0, |x| x.dim);
        rows.push(Theorem4Row { weight: r.weight, degree: r.degree, brs: r.dim, longitudinal: l });
    }
    for l in &long {
        if !rows.iter().any(|r| r.weight == l.weight && r.degree == l.degree) {
            rows.push(Theorem4Row { weight: l.weight, degree: l.degree, brs: 0, longitudinal: l.dim });
        }
    }
    let holds = rows.iter().all(|r| r.brs == r.longitudinal);
    Ok(Theorem4Report { rows, tower_top: k.top(), koszul_acyclic: koszul.acyclic, regular_asserted: system.is_regular_asserted(), holds })
}
