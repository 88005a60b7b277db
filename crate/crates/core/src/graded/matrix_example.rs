use super::qalgebra::GradedQAlgebra;
use super::GradedNComplex;
use crate::error::{NcxError, Result};
use crate::linalg::{ExactMatrix, SparseVec};
use crate::scalars::{Field, QContext};

/// M_N(k) graded by deg E^k_l = k - l mod N, with d(A) = eA - q^a Ae and
/// e = λ_1 E^2_1 + ... + λ_{N-1} E^N_{N-1} + λ_N E^1_N.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra<F> {
    n: usize,
    q: F,
    lambdas: Vec<F>,
    e: ExactMatrix<F>,
    /// basis of each degree component as (row, col), rows increasing
    components: Vec<Vec<(usize, usize)>>,
}

impl<F: Field> MatrixAlgebra<F> {
    pub fn new(n: usize, q: F, lambdas: Vec<F>) -> Result<Self> {
        QContext::new(q.clone(), n)?.require_a1()?;
        if lambdas.len() != n {
            return Err(NcxError::Invalid(format!("need {n} values of λ, got {}", lambdas.len())));
        }
        let e = ExactMatrix::from_triplets(
            n,
            n,
            (0..n).map(|i| if i + 1 < n { (i, i + 1, lambdas[i].clone()) } else { (n - 1, 0, lambdas[i].clone()) }),
        );
        let components = (0..n).map(|a| (0..n).map(|l| (l, (l + a) % n)).collect()).collect();
        Ok(MatrixAlgebra { n, q, lambdas, e, components })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn e(&self) -> &ExactMatrix<F> {
        &self.e
    }

    pub fn lambda_product(&self) -> F {
        self.lambdas.iter().fold(F::one(), |a, l| a * l)
    }

    pub fn degree_of(&self, row: usize, col: usize) -> usize {
        (col + self.n - row) % self.n
    }

    /// Matrix unit at (row, col).
    pub fn unit(&self, row: usize, col: usize) -> ExactMatrix<F> {
        ExactMatrix::from_triplets(self.n, self.n, [(row, col, F::one())])
    }

    /// d on a homogeneous matrix of degree a.
    pub fn d_matrix(&self, a: usize, x: &ExactMatrix<F>) -> ExactMatrix<F> {
        self.e.mul(x).sub(&x.mul(&self.e).scale(&self.q.pow(a as u64)))
    }

    fn to_component(&self, a: usize, x: &ExactMatrix<F>) -> SparseVec<F> {
        let comp = &self.components[a % self.n];
        let pairs = comp
            .iter()
            .enumerate()
            .map(|(i, &(r, c))| (i, x.get(r, c)))
            .collect();
        let v = SparseVec::from_pairs(pairs);
        debug_assert!({
            let back = self.from_component(a, &v);
            back == *x
        });
        v
    }

    fn from_component(&self, a: usize, v: &SparseVec<F>) -> ExactMatrix<F> {
        let comp = &self.components[a % self.n];
        ExactMatrix::from_triplets(self.n, self.n, v.iter().map(|(i, x)| (comp[*i].0, comp[*i].1, x.clone())))
    }

    pub fn complex(&self) -> Result<GradedNComplex<F>> {
        let maps = (0..self.n)
            .map(|a| {
                let cols: Vec<SparseVec<F>> = self.components[a]
                    .iter()
                    .map(|&(r, c)| self.to_component(a + 1, &self.d_matrix(a, &self.unit(r, c))))
                    .collect();
                ExactMatrix::from_columns(self.n, &cols)
            })
            .collect();
        GradedNComplex::cyclic(self.n, vec![self.n; self.n], maps)
    }

    /// e^N = λ_1 ... λ_N · 1
    pub fn e_power_identity(&self) -> bool {
        self.e.pow(self.n) == ExactMatrix::identity(self.n).scale(&self.lambda_product())
    }

    /// d(AB) = d(A)B + q^a A d(B) on all pairs of matrix units.
    pub fn leibniz_holds(&self) -> bool {
        for r1 in 0..self.n {
            for c1 in 0..self.n {
                let a = self.unit(r1, c1);
                let da = self.degree_of(r1, c1);
                for r2 in 0..self.n {
                    for c2 in 0..self.n {
                        let b = self.unit(r2, c2);
                        let db = self.degree_of(r2, c2);
                        let lhs = self.d_matrix((da + db) % self.n, &a.mul(&b));
                        let rhs = self
                            .d_matrix(da, &a)
                            .mul(&b)
                            .add(&a.mul(&self.d_matrix(db, &b)).scale(&self.q.pow(da as u64)));
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// h = ((1-q) λ_1...λ_N)^{-1} · (left multiplication by e^{N-1}) on the
    /// total space, in the block order of `complex().total_module()`.
    pub fn scalar_homotopy(&self) -> Option<ExactMatrix<F>> {
        let scale = ((F::one() - &self.q) * &self.lambda_product()).inv()?;
        let en1 = self.e.pow(self.n - 1);
        let n = self.n;
        let mut cols = Vec::with_capacity(n * n);
        for a in 0..n {
            for &(r, c) in &self.components[a] {
                let img = en1.mul(&self.unit(r, c)).scale(&scale);
                let target = (a + n - 1) % n;
                cols.push(self.to_component(target, &img).shift(target * n));
            }
        }
        Some(ExactMatrix::from_columns(n * n, &cols))
    }
}

impl<F: Field> GradedQAlgebra<F> for MatrixAlgebra<F> {
    fn period(&self) -> Option<usize> {
        Some(self.n)
    }

    fn max_degree(&self) -> usize {
        self.n - 1
    }

    fn dim(&self, deg: usize) -> usize {
        self.components[deg % self.n].len()
    }

    fn unit(&self) -> SparseVec<F> {
        self.to_component(0, &ExactMatrix::identity(self.n))
    }

    fn mul(&self, a: usize, x: &SparseVec<F>, b: usize, y: &SparseVec<F>) -> Option<SparseVec<F>> {
        let p = self.from_component(a, x).mul(&self.from_component(b, y));
        Some(self.to_component((a + b) % self.n, &p))
    }

    fn d(&self, a: usize, x: &SparseVec<F>) -> Option<SparseVec<F>> {
        Some(self.to_component(a + 1, &self.d_matrix(a % self.n, &self.from_component(a, x))))
    }
}

/// The ℤ_N-graded matrix algebra as an N-complex; checks (A1), d^N = 0 and
/// the graded q-Leibniz rule.
pub fn matrix_algebra_complex<F: Field>(n: usize, q: F, lambdas: Vec<F>) -> Result<GradedNComplex<F>> {
    let m = MatrixAlgebra::new(n, q, lambdas)?;
    if !m.leibniz_holds() {
        return Err(NcxError::Invalid("graded q-Leibniz rule fails".into()));
    }
    m.complex()
}
