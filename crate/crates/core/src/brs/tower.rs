use serde::Serialize;

use crate::error::{NcxError, Result};
use crate::graded::{Boundary, GradedNComplex};
use crate::linalg::solve;
use crate::poly::Poly;
use crate::scalars::Field;

use super::ghost::{generators, leibniz_holds, tower_sum, AntiDerivation, Ghost, GhostBasis, Weights};
use super::system::PolyConstraintSystem;

/// 𝒦 = Λ(π) ⊗ Poly ⊗ Λ(χ) with the antiderivations δ_0, δ_1, δ_2, …
#[derive(Clone, Debug)]
pub struct GhostComplex<F> {
    system: PolyConstraintSystem<F>,
    weights: Weights,
    deltas: Vec<AntiDerivation<F>>,
}

/// δ₀ and δ₁ from the constraint data; checks δ₀² = 0 and δ₀δ₁ + δ₁δ₀ = 0 on generators.
pub fn build_delta0_delta1<F: Field>(system: &PolyConstraintSystem<F>) -> Result<GhostComplex<F>> {
    let d = system.vars();
    let (m, mp) = (system.constraints().len(), system.fields().len());
    let weights = Weights {
        d,
        pi: (0..m).map(|a| system.constraint_degree(a) as i64).collect(),
        chi: (0..mp).map(|a| system.field_weight(a)).collect(),
    };
    let mut d0 = AntiDerivation::zero(d, m, mp);
    d0.on_pi = system.constraints().iter().map(|u| Ghost::poly(u.clone())).collect();
    let mut d1 = AntiDerivation::zero(d, m, mp);
    let one = || Poly::monomial(vec![0; d], F::one());
    let half = F::from_ratio(-1, 2);
    for i in 0..d {
        for (ap, x) in system.fields().iter().enumerate() {
            d1.on_x[i] = d1.on_x[i].add(&Ghost::basis(0, 1 << ap, x.components[i].clone()));
        }
    }
    for a in 0..mp {
        let mut img = Ghost::zero();
        for b in 0..mp {
            for c in 0..mp {
                let s = system.structure(a, b, c);
                if !s.is_zero() {
                    img = img.add(&Ghost::chi(d, b).mul(&Ghost::chi(d, c)).mul_poly(&s.scale(&half)));
                }
            }
        }
        d1.on_chi[a] = img;
    }
    for a in 0..m {
        let mut img = Ghost::zero();
        for ap in 0..mp {
            for b in 0..m {
                let t = system.tangency(ap, a, b);
                if !t.is_zero() {
                    img = img.add(&Ghost::basis(1 << b, 1 << ap, one()).mul_poly(&t.scale(&-F::one())));
                }
            }
        }
        d1.on_pi[a] = img;
    }
    d0.check_bidegree(&weights, -1, 0)?;
    d1.check_bidegree(&weights, 0, 1)?;
    let k = GhostComplex { system: system.clone(), weights, deltas: vec![d0, d1] };
    for n in 0..=1 {
        if let Some(g) = k.failing_generator(n) {
            return Err(NcxError::Invalid(format!(
                "Σ δ_r δ_s ≠ 0 for r + s = {n} on generator {g}; check the tangency witnesses"
            )));
        }
    }
    Ok(k)
}

impl<F: Field> GhostComplex<F> {
    pub fn system(&self) -> &PolyConstraintSystem<F> {
        &self.system
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn deltas(&self) -> &[AntiDerivation<F>] {
        &self.deltas
    }

    /// Largest r with δ_r ≠ 0.
    pub fn top(&self) -> usize {
        (0..self.deltas.len()).rev().find(|r| !self.deltas[*r].is_zero()).unwrap_or(0)
    }

    fn counts(&self) -> (usize, usize, usize) {
        (self.weights.d, self.weights.pi.len(), self.weights.chi.len())
    }

    fn generator_name(&self, k: usize) -> String {
        let (d, m, _) = self.counts();
        if k < d {
            format!("x{}", k + 1)
        } else if k < d + m {
            format!("π{}", k - d + 1)
        } else {
            format!("χ{}", k - d - m + 1)
        }
    }

    fn failing_generator(&self, n: usize) -> Option<String> {
        let (d, m, mp) = self.counts();
        generators::<F>(d, m, mp)
            .iter()
            .position(|g| !tower_sum(&self.deltas, n, g).is_zero())
            .map(|k| self.generator_name(k))
    }

    /// Highest r for which δ_r can be nonzero: min(m′, m + 1).
    pub fn structural_bound(&self) -> usize {
        let (_, m, mp) = self.counts();
        mp.min(m + 1)
    }

    /// Solves δ₀ y = rhs inside the weight space of ghost numbers (|P|, |C|).
    fn delta0_preimage(&self, rhs: &Ghost<F>, weight: i64, pis: i64, chis: i64, what: &str) -> Result<Ghost<F>> {
        if rhs.is_zero() {
            return Ok(Ghost::zero());
        }
        let src = GhostBasis::new(&self.weights, weight, |p, c| p as i64 == pis && c as i64 == chis);
        let dst = GhostBasis::new(&self.weights, weight, |p, c| p as i64 == pis - 1 && c as i64 == chis);
        let m = src.matrix(|g| self.deltas[0].apply(g), &dst)?;
        let b = dst.coordinates(rhs)?;
        let x = solve(&m, &b).ok_or_else(|| {
            NcxError::NoSolution(format!("obstruction for {what} is not δ₀-exact; the constraints may not be regular"))
        })?;
        let mut y = Ghost::zero();
        for (j, c) in x.iter() {
            y = y.add(&src.element::<F>(*j).scale(c));
        }
        Ok(y)
    }

    /// Installs δ_n for n = 2 … min(m′, m+1) and checks every identity
    /// Σ_{r+s=n} δ_r δ_s = 0 on generators.
    pub fn delta_tower(&mut self) -> Result<()> {
        self.deltas.truncate(2);
        let (d, m, mp) = self.counts();
        let top = self.structural_bound();
        for n in 2..=top {
            let mut dn = AntiDerivation::zero(d, m, mp);
            let gens = generators::<F>(d, m, mp);
            let obstruction = |g: &Ghost<F>| {
                let mut out = Ghost::zero();
                for r in 1..n {
                    out = out.add(&self.deltas[r].apply(&self.deltas[n - r].apply(g)));
                }
                out
            };
            for i in 0..d {
                let rhs = obstruction(&gens[i]).neg();
                dn.on_x[i] = self.delta0_preimage(&rhs, 1, n as i64 - 1, n as i64, &format!("δ{n} x{}", i + 1))?;
            }
            for a in 0..mp {
                let rhs = obstruction(&gens[d + m + a]).neg();
                dn.on_chi[a] =
                    self.delta0_preimage(&rhs, self.weights.chi[a], n as i64 - 1, n as i64 + 1, &format!("δ{n} χ{}", a + 1))?;
            }
            for a in 0..m {
                let u = Ghost::poly(self.system.constraints()[a].clone());
                let rhs = obstruction(&gens[d + a]).add(&dn.apply(&u)).neg();
                dn.on_pi[a] = self.delta0_preimage(&rhs, self.weights.pi[a], n as i64, n as i64, &format!("δ{n} π{}", a + 1))?;
            }
            self.deltas.push(dn);
        }
        for n in 0..=2 * top.max(1) {
            if let Some(g) = self.failing_generator(n) {
                return Err(NcxError::NotExact(format!("Σ δ_r δ_s ≠ 0 for r + s = {n} on generator {g}")));
            }
        }
        if !self.deltas.iter().all(leibniz_holds) {
            return Err(NcxError::Invalid("an installed map violates the graded Leibniz rule".into()));
        }
        Ok(())
    }

    /// δ = Σ δ_r
    pub fn delta(&self, g: &Ghost<F>) -> Ghost<F> {
        self.deltas.iter().fold(Ghost::zero(), |acc, dr| acc.add(&dr.apply(g)))
    }

    /// The total complex (𝒦, δ) in one weight, degrees −m..m′.
    pub fn weight_complex(&self, weight: i64) -> Result<GradedNComplex<F>> {
        let (_, m, mp) = self.counts();
        let bases: Vec<GhostBasis> = (-(m as i64)..=mp as i64).map(|n| GhostBasis::total(&self.weights, weight, n)).collect();
        let maps = bases.windows(2).map(|b| b[0].matrix(|g| self.delta(g), &b[1])).collect::<Result<Vec<_>>>()?;
        GradedNComplex::with_boundaries(2, -(m as i64), bases.iter().map(|b| b.dim()).collect(), maps, Boundary::Zero, Boundary::Zero)
    }

    /// The bidegree (−|P|, |C|) piece of δ₀ cohomology in one weight.
    pub fn delta0_cohomology(&self, weight: i64, i: i64, j: i64) -> Result<usize> {
        let b = |ii: i64| GhostBasis::bidegree(&self.weights, weight, ii, j);
        let d0 = &self.deltas[0];
        let out = b(i).matrix(|g| d0.apply(g), &b(i + 1))?;
        let inc = b(i - 1).matrix(|g| d0.apply(g), &b(i))?;
        Ok(b(i).dim() - crate::linalg::rank(&out) - crate::linalg::rank(&inc))
    }

    pub fn brs_cohomology(&self, w_max: i64) -> Result<Vec<CohomologyRow>> {
        let mut rows = Vec::new();
        for w in self.weights.lowest()..=w_max {
            let c = self.weight_complex(w)?;
            let h = c.homology();
            for k in c.degrees() {
                rows.push(CohomologyRow { weight: w, degree: k, dim: h.dim(k, 1).unwrap_or(0) });
            }
        }
        Ok(rows)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CohomologyRow {
    pub weight: i64,
    pub degree: i64,
    pub dim: usize,
}
