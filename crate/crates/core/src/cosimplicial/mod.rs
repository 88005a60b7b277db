//! (Pre-)cosimplicial modules, their simplicial differential and the
//! N-differentials d₀, d₁, with the standard algebraic instances.

mod algebra;
mod envelope;
mod instances;
mod verify;

#[cfg(test)]
mod tests;

use crate::error::{NcxError, Result};
use crate::graded::{Boundary, GradedNComplex};
use crate::linalg::{ColumnMatrix, ExactMatrix, Subspace};
use crate::scalars::{Assumption, Field, QContext};

pub(crate) use algebra::parse_scalar;
pub(crate) use instances::increasing_tuples;
pub use algebra::{AlgebraData, Bimodule, Representation};
pub use envelope::{omega_q, universal_envelope, Envelope, TensorAlgebra};
pub use instances::{chevalley_eilenberg, constant_module, hochschild};
pub use verify::{prop7_verify, theorem2_verify, Prop7Report, Prop7Row, Theorem2Report, Theorem2Row};

/// Levels 0..=n_max with cofaces f_i (level n → n+1, 0 ≤ i ≤ n+1) and
/// optional codegeneracies s_i (level n+1 → n, 0 ≤ i ≤ n).
#[derive(Clone, Debug)]
pub struct CosimplicialData<F> {
    dims: Vec<usize>,
    cofaces: Vec<Vec<ExactMatrix<F>>>,
    codegeneracies: Option<Vec<Vec<ExactMatrix<F>>>>,
}

impl<F: Field> CosimplicialData<F> {
    pub fn new(
        dims: Vec<usize>,
        cofaces: Vec<Vec<ExactMatrix<F>>>,
        codegeneracies: Option<Vec<Vec<ExactMatrix<F>>>>,
    ) -> Result<Self> {
        let top = dims.len().checked_sub(1).ok_or_else(|| NcxError::Invalid("no levels".into()))?;
        let shape = |ms: &Vec<Vec<ExactMatrix<F>>>, count: fn(usize) -> usize, forward: bool| -> Result<()> {
            if ms.len() != top {
                return Err(NcxError::DimensionMismatch(format!("expected maps for {top} level pairs, got {}", ms.len())));
            }
            for (n, level) in ms.iter().enumerate() {
                let (r, c) = if forward { (dims[n + 1], dims[n]) } else { (dims[n], dims[n + 1]) };
                if level.len() != count(n) || level.iter().any(|m| m.rows() != r || m.cols() != c) {
                    return Err(NcxError::DimensionMismatch(format!("maps between levels {n} and {}", n + 1)));
                }
            }
            Ok(())
        };
        shape(&cofaces, |n| n + 2, true)?;
        if let Some(s) = &codegeneracies {
            shape(s, |n| n + 1, false)?;
        }
        let e = CosimplicialData { dims, cofaces, codegeneracies };
        e.check_relations()?;
        Ok(e)
    }

    pub fn n_max(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn coface(&self, level: usize, i: usize) -> &ExactMatrix<F> {
        &self.cofaces[level][i]
    }

    /// s_i out of level + 1.
    pub fn codegeneracy(&self, level: usize, i: usize) -> Option<&ExactMatrix<F>> {
        self.codegeneracies.as_ref().map(|s| &s[level][i])
    }

    pub fn has_codegeneracies(&self) -> bool {
        self.codegeneracies.is_some()
    }

    /// Checks (𝔉) and, with codegeneracies, (𝔖) and (𝔖𝔉) on every composable level.
    pub fn check_relations(&self) -> Result<()> {
        let top = self.n_max();
        let f = |n: usize, i: usize| &self.cofaces[n][i];
        let fail = |relation, level, i, j| NcxError::RelationFailure { relation, level, i, j };
        // f_j f_i = f_i f_{j-1}, i < j, starting at level n
        for n in 0..top.saturating_sub(1) {
            for j in 1..=n + 2 {
                for i in 0..j {
                    if f(n + 1, j).mul(f(n, i)) != f(n + 1, i).mul(f(n, j - 1)) {
                        return Err(fail("F", n, i, j));
                    }
                }
            }
        }
        let Some(s) = &self.codegeneracies else { return Ok(()) };
        // s_j s_i = s_i s_{j+1}, i ≤ j, from level n + 2 to n
        for n in 0..top.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    if s[n][j].mul(&s[n + 1][i]) != s[n][i].mul(&s[n + 1][j + 1]) {
                        return Err(fail("S", n, i, j));
                    }
                }
            }
        }
        // s_j f_i on level n (s_j: n+1 → n)
        for n in 0..top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = s[n][j].mul(f(n, i));
                    let rhs = if i == j || i == j + 1 {
                        ExactMatrix::identity(self.dims[n])
                    } else if i < j {
                        // f_i s_{j-1}: level n → n-1 → n
                        f(n - 1, i).mul(&s[n - 1][j - 1])
                    } else {
                        f(n - 1, i - 1).mul(&s[n - 1][j])
                    };
                    if lhs != rhs {
                        return Err(fail("SF", n, i, j));
                    }
                }
            }
        }
        Ok(())
    }

    /// Σ_i c_i f_i out of each level.
    fn weighted_coface_sums(&self, coef: impl Fn(usize, usize) -> F) -> Vec<ExactMatrix<F>> {
        (0..self.n_max())
            .map(|n| {
                let mut m = ExactMatrix::zeros(self.dims[n + 1], self.dims[n]);
                for i in 0..=n + 1 {
                    let c = coef(n, i);
                    if !c.is_zero() {
                        m = m.add(&self.cofaces[n][i].scale(&c));
                    }
                }
                m
            })
            .collect()
    }

    fn complex(&self, n: usize, maps: Vec<ExactMatrix<F>>) -> Result<GradedNComplex<F>> {
        GradedNComplex::with_boundaries(n, 0, self.dims.clone(), maps, Boundary::Zero, Boundary::Truncated)
    }

    pub fn simplicial_maps(&self) -> Vec<ExactMatrix<F>> {
        self.weighted_coface_sums(|_, i| if i % 2 == 0 { F::one() } else { -F::one() })
    }

    /// d = Σ (−1)^i f_i as a 2-complex.
    pub fn simplicial_differential(&self) -> Result<GradedNComplex<F>> {
        self.complex(2, self.simplicial_maps())
    }

    pub fn d0_maps(&self, q: &F) -> Vec<ExactMatrix<F>> {
        self.weighted_coface_sums(|_, i| q.pow(i as u64))
    }

    pub fn d1_maps(&self, q: &F) -> Vec<ExactMatrix<F>> {
        self.weighted_coface_sums(|n, i| if i <= n { q.pow(i as u64) } else { -q.pow(n as u64) })
    }

    /// d₀ = Σ_{i=0}^{n+1} q^i f_i.
    pub fn d0(&self, q: &F, n: usize) -> Result<GradedNComplex<F>> {
        require_a0(q, n)?;
        self.complex(n, self.d0_maps(q))
    }

    /// d₁ = Σ_{i=0}^{n} q^i f_i − q^n f_{n+1}.
    pub fn d1(&self, q: &F, n: usize) -> Result<GradedNComplex<F>> {
        require_a0(q, n)?;
        self.complex(n, self.d1_maps(q))
    }

    /// ∩_i ker s_i at each level.
    pub fn normalized_levels(&self) -> Result<Vec<Subspace<F>>> {
        let s = self.codegeneracies.as_ref().ok_or_else(|| NcxError::Invalid("no codegeneracies".into()))?;
        let mut out = vec![Subspace::full(self.dims[0])];
        for n in 0..self.n_max() {
            let stacked = s[n].iter().skip(1).fold(s[n][0].clone(), |acc, m| acc.vstack(m));
            out.push(Subspace::kernel_of(&stacked));
        }
        Ok(out)
    }

    /// The simplicial differential restricted to normalized cochains, with the
    /// cohomology comparison against the full complex.
    pub fn normalized_subcomplex(&self) -> Result<(Vec<Subspace<F>>, GradedNComplex<F>)> {
        let levels = self.normalized_levels()?;
        let c = restrict_complex(2, &levels, &self.simplicial_maps(), Boundary::Truncated)?;
        let (hn, he) = (c.homology(), self.simplicial_differential()?.homology());
        for deg in c.degrees() {
            if hn.dim(deg, 1) != he.dim(deg, 1) {
                return Err(NcxError::NotExact(format!("normalized cohomology differs in degree {deg}")));
            }
        }
        Ok((levels, c))
    }
}

fn require_a0<F: Field>(q: &F, n: usize) -> Result<()> {
    if QContext::new(q.clone(), n)?.assumption == Assumption::None {
        return Err(NcxError::Assumption(format!("[{n}]_q ≠ 0")));
    }
    Ok(())
}

/// Restricts degree-0-based maps to subspaces V_n with map(V_n) ⊆ V_{n+1}.
pub(crate) fn restrict_complex<F: Field>(
    n: usize,
    levels: &[Subspace<F>],
    maps: &[ExactMatrix<F>],
    above: Boundary,
) -> Result<GradedNComplex<F>> {
    let mut restricted = Vec::with_capacity(levels.len() - 1);
    for k in 0..levels.len() - 1 {
        let map = ColumnMatrix::new(&maps[k]);
        let mut cols = Vec::with_capacity(levels[k].dim());
        for b in levels[k].basis() {
            let img = map.apply(b);
            cols.push(levels[k + 1].coordinates(&img).ok_or(NcxError::NotSubspace)?);
        }
        restricted.push(ExactMatrix::from_columns(levels[k + 1].dim(), &cols));
    }
    GradedNComplex::with_boundaries(n, 0, levels.iter().map(|l| l.dim()).collect(), restricted, Boundary::Zero, above)
}

/// Cohomology dimensions per degree of a 2-complex, None where undetermined.
pub fn ordinary_cohomology<F: Field>(c: &GradedNComplex<F>) -> Vec<Option<usize>> {
    let h = c.homology();
    c.degrees().map(|d| h.dim(d, 1)).collect()
}
