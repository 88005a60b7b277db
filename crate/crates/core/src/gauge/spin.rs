use serde::Serialize;

use crate::error::{NcxError, Result};
use crate::graded::{Boundary, GradedNComplex};
use crate::linalg::{rank, ExactMatrix, Subspace};
use crate::ndiff::{green_tensor, NDiffModule};
use crate::scalars::{Field, Rational};

/// Minkowski metric diag(1, -1, -1, -1); it is its own inverse.
fn metric(mu: usize) -> i64 {
    if mu == 0 {
        1
    } else {
        -1
    }
}

/// A rational point p_μ of the future light cone.
#[derive(Clone, Debug, PartialEq)]
pub struct Momentum {
    lower: [Rational; 4],
}

impl Momentum {
    pub fn new(lower: [Rational; 4]) -> Result<Self> {
        let norm = (0..4).fold(Rational::from_int(0), |acc, mu| {
            acc + &(Rational::from_int(metric(mu)) * &lower[mu] * &lower[mu])
        });
        if !num_traits::Zero::is_zero(&norm) || lower[0].signum() <= 0 {
            return Err(NcxError::Invalid(format!("momentum {lower:?} is not on the future light cone")));
        }
        Ok(Momentum { lower })
    }

    pub fn from_ints(p: [i64; 4]) -> Result<Self> {
        Self::new(p.map(Rational::from_int))
    }

    pub fn lower<F: Field>(&self, mu: usize) -> F {
        F::from_rational(&self.lower[mu])
    }

    /// p^μ = g^{μν} p_ν
    pub fn upper<F: Field>(&self, mu: usize) -> F {
        F::from_i64(metric(mu)) * &self.lower::<F>(mu)
    }
}

/// C^{-1} ⊕ C⁰ ⊕ C¹ with δ of degree 1 and an indefinite hermitian form.
#[derive(Clone, Debug)]
pub struct SpinComplex<F> {
    spin: usize,
    complex: GradedNComplex<F>,
    /// gram[i][j] = ⟨e_i | e_j⟩ on the concatenated basis
    gram: ExactMatrix<F>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpinComplexReport {
    pub spin: usize,
    /// dims of C^{-1}, C⁰, C¹
    pub components: [usize; 3],
    pub z0: usize,
    pub b0: usize,
    /// dims of H^{-1}, H⁰, H¹
    pub homology: [usize; 3],
    pub delta_squared_zero: bool,
    pub gram_hermitian: bool,
    pub delta_hermitian: bool,
    pub holds: bool,
}

impl<F: Field> SpinComplex<F> {
    pub fn spin(&self) -> usize {
        self.spin
    }

    pub fn complex(&self) -> &GradedNComplex<F> {
        &self.complex
    }

    pub fn gram(&self) -> &ExactMatrix<F> {
        &self.gram
    }

    /// δ on C^{-1} ⊕ C⁰ ⊕ C¹ as one square matrix.
    pub fn delta(&self) -> ExactMatrix<F> {
        let dims: Vec<usize> = (-1..=1).map(|d| self.complex.component_dim(d).unwrap()).collect();
        let total: usize = dims.iter().sum();
        let mut trip = Vec::new();
        let mut offset = 0;
        for deg in -1..=0 {
            let m = self.complex.map(deg).unwrap();
            let src = offset;
            let dst = offset + m.cols();
            for (i, row) in m.row_vecs().iter().enumerate() {
                for (j, v) in row.iter() {
                    trip.push((dst + i, src + j, v.clone()));
                }
            }
            offset += m.cols();
        }
        ExactMatrix::from_triplets(total, total, trip)
    }

    pub fn report(&self) -> SpinComplexReport {
        let dims = [-1, 0, 1].map(|d| self.complex.component_dim(d).unwrap());
        let delta = self.delta();
        let hom = self.complex.homology();
        let homology = [-1, 0, 1].map(|d| hom.dim(d, 1).unwrap());
        let into = self.complex.map(-1).unwrap();
        let out = self.complex.map(0).unwrap();
        let z0 = dims[1] - rank(&out);
        let b0 = rank(&into);
        let delta_squared_zero = delta.mul(&delta).is_zero();
        let gram_hermitian = self.gram.adjoint() == self.gram;
        let delta_hermitian = delta.adjoint().mul(&self.gram) == self.gram.mul(&delta);
        let holds = delta_squared_zero && gram_hermitian && delta_hermitian && homology == [0, 2, 0];
        SpinComplexReport { spin: self.spin, components: dims, z0, b0, homology, delta_squared_zero, gram_hermitian, delta_hermitian, holds }
    }
}

fn build<F: Field>(spin: usize, dims: [usize; 3], into: ExactMatrix<F>, out: ExactMatrix<F>, gram: ExactMatrix<F>) -> Result<SpinComplex<F>> {
    let complex = GradedNComplex::with_boundaries(2, -1, dims.to_vec(), vec![into, out], Boundary::Zero, Boundary::Zero)?;
    Ok(SpinComplex { spin, complex, gram })
}

/// Basis ω⁻, ε^0..ε^3, ω⁺; δω⁻ = p_μ ε^μ, δε^μ = α p^μ ω⁺.
pub fn spin1_complex<F: Field>(p: &Momentum, alpha: F) -> Result<SpinComplex<F>> {
    let a_inv = alpha.inv().ok_or_else(|| NcxError::Invalid("alpha must be nonzero".into()))?;
    let into = ExactMatrix::from_triplets(4, 1, (0..4).map(|mu| (mu, 0, p.lower::<F>(mu))));
    let out = ExactMatrix::from_triplets(1, 4, (0..4).map(|mu| (0, mu, alpha.clone() * &p.upper::<F>(mu))));
    let mut g = Vec::new();
    for mu in 0..4 {
        g.push((1 + mu, 1 + mu, F::from_i64(-metric(mu))));
    }
    let w = -a_inv;
    g.push((0, 5, w.clone()));
    g.push((5, 0, w.conj()));
    build(1, [1, 4, 1], into, out, ExactMatrix::from_triplets(6, 6, g))
}

/// Index of ε^{μν} = ε^{νμ} among the ten symmetric basis tensors.
fn sym(mu: usize, nu: usize) -> usize {
    let (a, b) = if mu <= nu { (mu, nu) } else { (nu, mu) };
    // rows of the upper triangle hold 4, 3, 2, 1 entries
    4 * a - a * a.saturating_sub(1) / 2 + (b - a)
}

/// Basis ω⁻^μ, ε^{μν} (μ ≤ ν), ω⁺^μ;
/// δε^{μν} = α(p^μ ω⁺^ν + p^ν ω⁺^μ), δω⁻^μ = p_ν(ε^{μν} − ½ g^{μν} g_{αβ} ε^{αβ}).
pub fn spin2_complex<F: Field>(p: &Momentum, alpha: F) -> Result<SpinComplex<F>> {
    let a_inv = alpha.inv().ok_or_else(|| NcxError::Invalid("alpha must be nonzero".into()))?;
    let half = F::from_ratio(1, 2);
    let mut into = Vec::new();
    for mu in 0..4 {
        for nu in 0..4 {
            into.push((sym(mu, nu), mu, p.lower::<F>(nu)));
        }
        // g^{μν} p_ν = p^μ
        for al in 0..4 {
            into.push((sym(al, al), mu, -(half.clone() * &p.upper::<F>(mu) * &F::from_i64(metric(al)))));
        }
    }
    let mut out = Vec::new();
    for mu in 0..4 {
        for nu in mu..4 {
            let s = sym(mu, nu);
            out.push((nu, s, alpha.clone() * &p.upper::<F>(mu)));
            out.push((mu, s, alpha.clone() * &p.upper::<F>(nu)));
        }
    }
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|a| (a..4).map(move |b| (a, b))).collect();
    let gg = |a: usize, b: usize| if a == b { F::from_i64(metric(a)) } else { F::zero() };
    let mut g = Vec::new();
    for &(l, r) in &pairs {
        for &(m, n) in &pairs {
            let v = half.clone() * &(gg(l, m) * &gg(r, n) + &(gg(l, n) * &gg(r, m)) - &(gg(l, r) * &gg(m, n)));
            g.push((4 + sym(l, r), 4 + sym(m, n), v));
        }
    }
    let w = half * &a_inv;
    for mu in 0..4 {
        let v = w.clone() * &F::from_i64(metric(mu));
        g.push((mu, 14 + mu, v.clone()));
        g.push((14 + mu, mu, v.conj()));
    }
    build(
        2,
        [4, 10, 4],
        ExactMatrix::from_triplets(10, 4, into),
        ExactMatrix::from_triplets(4, 10, out),
        ExactMatrix::from_triplets(18, 18, g),
    )
}

/// Q(p) on 𝒞(p) = ℂ⁴: Q(A)_μ = p_μ p^ν A_ν.
pub fn spin1_q<F: Field>(p: &Momentum) -> Result<NDiffModule<F>> {
    let trip = (0..4).flat_map(|mu| (0..4).map(move |nu| (mu, nu))).map(|(mu, nu)| (mu, nu, p.lower::<F>(mu) * &p.upper::<F>(nu)));
    NDiffModule::new(2, ExactMatrix::from_triplets(4, 4, trip))
}

/// ⟨A|A'⟩ = −g^{μν} Ā_μ A'_ν
pub fn spin1_form<F: Field>() -> ExactMatrix<F> {
    ExactMatrix::from_triplets(4, 4, (0..4).map(|mu| (mu, mu, F::from_i64(-metric(mu)))))
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoParticleReport {
    pub dim: usize,
    pub square_nonzero: bool,
    pub cube_zero: bool,
    pub h1: usize,
    pub h2: usize,
    /// dim 𝒵(p₁) ⊗ 𝒵(p₂)
    pub zz: usize,
    /// 𝒵(p₁) ⊗ 𝒵(p₂) ⊆ ker Q₁₂
    pub zz_in_kernel: bool,
    /// dim ℋ(p₁) ⊗ ℋ(p₂)
    pub physical: usize,
    pub matches_green_tensor: bool,
    pub holds: bool,
}

/// Q₁₂ = Q(p₁) ⊗ id + id ⊗ Q(p₂) on the sixteen-dimensional two-particle space.
pub fn two_particle_study<F: Field>(p1: &Momentum, p2: &Momentum) -> Result<TwoParticleReport> {
    if p1 == p2 {
        return Err(NcxError::Invalid("the two momenta must differ".into()));
    }
    let (q1, q2) = (spin1_q::<F>(p1)?, spin1_q::<F>(p2)?);
    let id = ExactMatrix::<F>::identity(4);
    let q12 = q1.d().kron(&id).add(&id.kron(q2.d()));
    let square_nonzero = !q12.pow(2).is_zero();
    let cube_zero = q12.pow(3).is_zero();
    let module = NDiffModule::new(3, q12.clone())?;
    let h = module.homology();
    let (z1, z2) = (Subspace::kernel_of(q1.d()), Subspace::kernel_of(q2.d()));
    let zz_basis: Vec<_> = z1
        .basis()
        .iter()
        .flat_map(|a| z2.basis().iter().map(move |b| ExactMatrix::from_columns(4, &[a.clone()]).kron(&ExactMatrix::from_columns(4, &[b.clone()])).column(0)))
        .collect();
    let zz = Subspace::span(16, zz_basis);
    let kernel = Subspace::kernel_of(&q12);
    let zz_in_kernel = kernel.contains_subspace(&zz);
    let physical = q1.homology().dim(1) * q2.homology().dim(1);
    let matches_green_tensor = green_tensor(&q1, &q2)?.d() == &q12;
    let (h1, h2) = (h.dim(1), h.dim(2));
    let holds = square_nonzero && cube_zero && h1 == zz.dim() && h2 == h1 && zz_in_kernel && matches_green_tensor && h1 != physical;
    Ok(TwoParticleReport { dim: 16, square_nonzero, cube_zero, h1, h2, zz: zz.dim(), zz_in_kernel, physical, matches_green_tensor, holds })
}
