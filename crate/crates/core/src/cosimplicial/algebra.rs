use serde_json::{json, Value};

use crate::error::{NcxError, Result};
use crate::linalg::{ExactMatrix, SparseVec};
use crate::scalars::Field;

/// Finite-dimensional algebra given by structure constants e_i e_j = Σ_k c^k_ij e_k.
/// With `lie` set, the product is read as the bracket.
#[derive(Clone, Debug)]
pub struct AlgebraData<F> {
    dim: usize,
    /// table[i * dim + j] = e_i e_j
    table: Vec<SparseVec<F>>,
    unit: Option<SparseVec<F>>,
    counit: Option<Vec<F>>,
    lie: bool,
}

impl<F: Field> AlgebraData<F> {
    pub fn new(
        dim: usize,
        constants: impl IntoIterator<Item = (usize, usize, usize, F)>,
        unit: Option<SparseVec<F>>,
        counit: Option<Vec<F>>,
        lie: bool,
    ) -> Result<Self> {
        let mut acc: Vec<Vec<(usize, F)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in constants {
            if i >= dim || j >= dim || k >= dim {
                return Err(NcxError::Invalid(format!("structure constant ({i}, {j}, {k}) out of range")));
            }
            acc[i * dim + j].push((k, c));
        }
        let table = acc.into_iter().map(SparseVec::from_pairs).collect();
        let a = AlgebraData { dim, table, unit, counit, lie };
        a.validate()?;
        Ok(a)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground() -> Self {
        Self::new(1, [(0, 0, 0, F::one())], Some(SparseVec::unit(0)), Some(vec![F::one()]), false).unwrap()
    }

    /// k[t]/(t²) with basis (1, t).
    pub fn dual_numbers() -> Self {
        Self::new(
            2,
            [(0, 0, 0, F::one()), (0, 1, 1, F::one()), (1, 0, 1, F::one())],
            Some(SparseVec::unit(0)),
            Some(vec![F::one(), F::zero()]),
            false,
        )
        .unwrap()
    }

    /// M_n(k) with basis E_ab at index a * n + b.
    pub fn matrix_algebra(n: usize) -> Self {
        let mut c = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    c.push((a * n + b, b * n + d, a * n + d, F::one()));
                }
            }
        }
        let unit = SparseVec::from_pairs((0..n).map(|a| (a * n + a, F::one())).collect());
        Self::new(n * n, c, Some(unit), None, false).unwrap()
    }

    /// Abelian Lie algebra of the given dimension.
    pub fn abelian_lie(dim: usize) -> Self {
        Self::new(dim, [], None, None, true).unwrap()
    }

    /// Two-dimensional nonabelian Lie algebra [e_0, e_1] = e_1.
    pub fn affine_lie() -> Self {
        Self::new(2, [(0, 1, 1, F::one()), (1, 0, 1, -F::one())], None, None, true).unwrap()
    }

    /// sl_2 with basis (h, e, f).
    pub fn sl2() -> Self {
        let two = F::from_i64(2);
        Self::new(
            3,
            [
                (0, 1, 1, two.clone()),
                (1, 0, 1, -two.clone()),
                (0, 2, 2, -two.clone()),
                (2, 0, 2, two),
                (1, 2, 0, F::one()),
                (2, 1, 0, -F::one()),
            ],
            None,
            None,
            true,
        )
        .unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_lie(&self) -> bool {
        self.lie
    }

    pub fn unit(&self) -> Option<&SparseVec<F>> {
        self.unit.as_ref()
    }

    pub fn counit(&self) -> Option<&[F]> {
        self.counit.as_deref()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.table[i * self.dim + j]
    }

    pub fn mul(&self, x: &SparseVec<F>, y: &SparseVec<F>) -> SparseVec<F> {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out = out.axpy(&(a.clone() * b), self.basis_product(*i, *j));
            }
        }
        out
    }

    /// Left multiplication by e_i as a dim × dim matrix.
    pub fn left_mult(&self, i: usize) -> ExactMatrix<F> {
        let cols: Vec<SparseVec<F>> = (0..self.dim).map(|j| self.basis_product(i, j).clone()).collect();
        ExactMatrix::from_columns(self.dim, &cols)
    }

    pub fn right_mult(&self, i: usize) -> ExactMatrix<F> {
        let cols: Vec<SparseVec<F>> = (0..self.dim).map(|j| self.basis_product(j, i).clone()).collect();
        ExactMatrix::from_columns(self.dim, &cols)
    }

    /// Adjoint representation matrices ad(e_i).
    pub fn adjoint(&self) -> Vec<ExactMatrix<F>> {
        (0..self.dim).map(|i| self.left_mult(i)).collect()
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        let e = |i: usize| SparseVec::<F>::unit(i);
        if self.lie {
            for i in 0..n {
                for j in 0..n {
                    if !self.basis_product(i, j).add(self.basis_product(j, i)).is_zero() {
                        return Err(NcxError::Invalid(format!("bracket not antisymmetric at ({i}, {j})")));
                    }
                    for k in 0..n {
                        let jac = self
                            .mul(&e(i), self.basis_product(j, k))
                            .add(&self.mul(&e(j), self.basis_product(k, i)))
                            .add(&self.mul(&e(k), self.basis_product(i, j)));
                        if !jac.is_zero() {
                            return Err(NcxError::Invalid(format!("Jacobi identity fails at ({i}, {j}, {k})")));
                        }
                    }
                }
            }
            return Ok(());
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let l = self.mul(self.basis_product(i, j), &e(k));
                    let r = self.mul(&e(i), self.basis_product(j, k));
                    if l != r {
                        return Err(NcxError::Invalid(format!("associativity fails at ({i}, {j}, {k})")));
                    }
                }
            }
        }
        let unit = self.unit.as_ref().ok_or_else(|| NcxError::Invalid("associative algebra needs a unit".into()))?;
        for i in 0..n {
            if self.mul(unit, &e(i)) != e(i) || self.mul(&e(i), unit) != e(i) {
                return Err(NcxError::Invalid(format!("unit fails on e_{i}")));
            }
        }
        if let Some(eps) = &self.counit {
            if eps.len() != n {
                return Err(NcxError::DimensionMismatch(format!("counit has {} entries, algebra dim {n}", eps.len())));
            }
            let ev = |v: &SparseVec<F>| v.iter().fold(F::zero(), |acc, (i, c)| acc + &(c.clone() * &eps[*i]));
            if !ev(unit).is_one() {
                return Err(NcxError::Invalid("counit does not send 1 to 1".into()));
            }
            for i in 0..n {
                for j in 0..n {
                    if ev(self.basis_product(i, j)) != eps[i].clone() * &eps[j] {
                        return Err(NcxError::Invalid(format!("counit is not multiplicative at ({i}, {j})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// A linear form ω with ω(1) = 1, which exists over a field whenever 1 ≠ 0.
    pub fn unit_form(&self) -> Result<Vec<F>> {
        let unit = self.unit.as_ref().ok_or_else(|| NcxError::Invalid("algebra has no unit".into()))?;
        let (i, c) = unit.entries().first().ok_or_else(|| NcxError::Invalid("unit is zero".into()))?;
        let mut w = vec![F::zero(); self.dim];
        w[*i] = c.inv().unwrap();
        Ok(w)
    }

    pub fn to_json(&self) -> Value {
        let mut sc = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.basis_product(i, j).iter() {
                    sc.push(json!([i, j, k, c.to_string()]));
                }
            }
        }
        let dense = |v: &SparseVec<F>| v.to_dense(self.dim).iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let mut v = json!({ "dim": self.dim, "structure_constants": sc, "lie": self.lie });
        if let Some(u) = &self.unit {
            v["unit"] = json!(dense(u));
        }
        if let Some(eps) = &self.counit {
            v["counit"] = json!(eps.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| NcxError::Parse(format!("algebra JSON: {m}"));
        let dim = v["dim"].as_u64().ok_or_else(|| bad("missing dim"))? as usize;
        let lie = v["lie"].as_bool().unwrap_or(false);
        let mut sc = Vec::new();
        for e in v["structure_constants"].as_array().ok_or_else(|| bad("missing structure_constants"))? {
            let a = e.as_array().filter(|a| a.len() == 4).ok_or_else(|| bad("entry must be [i, j, k, scalar]"))?;
            let idx = |x: &Value| x.as_u64().map(|u| u as usize).ok_or_else(|| bad("index"));
            sc.push((idx(&a[0])?, idx(&a[1])?, idx(&a[2])?, parse_scalar::<F>(&a[3])?));
        }
        let vector = |key: &str| -> Result<Option<Vec<F>>> {
            match &v[key] {
                Value::Null => Ok(None),
                Value::Array(a) => Ok(Some(a.iter().map(parse_scalar).collect::<Result<Vec<F>>>()?)),
                _ => Err(bad(&format!("{key} must be an array"))),
            }
        };
        let unit = vector("unit")?.map(|u| SparseVec::from_dense(&u));
        Self::new(dim, sc, unit, vector("counit")?, lie)
    }
}

pub(crate) fn parse_scalar<F: Field>(v: &Value) -> Result<F> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => n.to_string().parse(),
        _ => Err(NcxError::Parse("scalar must be a string or number".into())),
    }
}

/// Representation of a Lie algebra: π(e_i) for each basis vector.
#[derive(Clone, Debug)]
pub struct Representation<F> {
    dim: usize,
    actions: Vec<ExactMatrix<F>>,
}

impl<F: Field> Representation<F> {
    pub fn new(g: &AlgebraData<F>, dim: usize, actions: Vec<ExactMatrix<F>>) -> Result<Self> {
        if actions.len() != g.dim() || actions.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(NcxError::DimensionMismatch("one dim × dim matrix per basis vector required".into()));
        }
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let mut lhs = ExactMatrix::zeros(dim, dim);
                for (k, c) in g.basis_product(i, j).iter() {
                    lhs = lhs.add(&actions[*k].scale(c));
                }
                let rhs = actions[i].mul(&actions[j]).sub(&actions[j].mul(&actions[i]));
                if lhs != rhs {
                    return Err(NcxError::Invalid(format!("π[e_{i}, e_{j}] ≠ [π e_{i}, π e_{j}]")));
                }
            }
        }
        Ok(Representation { dim, actions })
    }

    pub fn trivial(g: &AlgebraData<F>, dim: usize) -> Self {
        Representation { dim, actions: vec![ExactMatrix::zeros(dim, dim); g.dim()] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &ExactMatrix<F> {
        &self.actions[i]
    }
}

/// (A, A)-bimodule given by the left and right actions of each basis vector of A.
#[derive(Clone, Debug)]
pub struct Bimodule<F> {
    dim: usize,
    left: Vec<ExactMatrix<F>>,
    right: Vec<ExactMatrix<F>>,
}

impl<F: Field> Bimodule<F> {
    pub fn new(a: &AlgebraData<F>, dim: usize, left: Vec<ExactMatrix<F>>, right: Vec<ExactMatrix<F>>) -> Result<Self> {
        let n = a.dim();
        if left.len() != n || right.len() != n || left.iter().chain(&right).any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(NcxError::DimensionMismatch("one dim × dim matrix per basis vector and side".into()));
        }
        let comb = |ms: &[ExactMatrix<F>], v: &SparseVec<F>| {
            v.iter().fold(ExactMatrix::zeros(dim, dim), |acc, (k, c)| acc.add(&ms[*k].scale(c)))
        };
        let unit = a.unit().ok_or_else(|| NcxError::Invalid("algebra has no unit".into()))?;
        let id = ExactMatrix::identity(dim);
        if comb(&left, unit) != id || comb(&right, unit) != id {
            return Err(NcxError::Invalid("unit does not act as the identity".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let p = a.basis_product(i, j);
                if comb(&left, p) != left[i].mul(&left[j]) {
                    return Err(NcxError::Invalid(format!("left action fails at ({i}, {j})")));
                }
                if comb(&right, p) != right[j].mul(&right[i]) {
                    return Err(NcxError::Invalid(format!("right action fails at ({i}, {j})")));
                }
                if left[i].mul(&right[j]) != right[j].mul(&left[i]) {
                    return Err(NcxError::Invalid(format!("actions do not commute at ({i}, {j})")));
                }
            }
        }
        Ok(Bimodule { dim, left, right })
    }

    /// A as a bimodule over itself.
    pub fn regular(a: &AlgebraData<F>) -> Result<Self> {
        let n = a.dim();
        Self::new(a, n, (0..n).map(|i| a.left_mult(i)).collect(), (0..n).map(|i| a.right_mult(i)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left(&self, i: usize) -> &ExactMatrix<F> {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &ExactMatrix<F> {
        &self.right[i]
    }
}
