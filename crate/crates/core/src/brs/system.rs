use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{NcxError, Result};
use crate::linalg::{solve, ExactMatrix};
use crate::poly::{Monomials, Poly};
use crate::scalars::Field;

/// Polynomial vector field, stored as its values ξ(x_i) on the coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField<F> {
    pub components: Vec<Poly<F>>,
}

impl<F: Field> VectorField<F> {
    pub fn new(components: Vec<Poly<F>>) -> Self {
        VectorField { components }
    }

    /// ∂/∂x_i in d variables
    pub fn coordinate(d: usize, i: usize) -> Self {
        let mut c = vec![Poly::zero(); d];
        c[i] = Poly::monomial(vec![0; d], F::one());
        VectorField { components: c }
    }

    pub fn apply(&self, f: &Poly<F>) -> Poly<F> {
        self.components.iter().enumerate().fold(Poly::zero(), |acc, (i, c)| acc.add(&c.mul(&f.derivative(i))))
    }

    pub fn bracket(&self, other: &Self) -> Self {
        let c = self.components.iter().zip(&other.components).map(|(a, b)| self.apply(b).add(&other.apply(a).scale(&-F::one())));
        VectorField { components: c.collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// Common degree of the coefficients; the field lowers polynomial degree by 1 − this.
    pub fn degree(&self) -> Option<usize> {
        let degs: Vec<usize> = self.components.iter().filter(|c| !c.is_zero()).map(|c| c.homogeneous_degree()).collect::<Option<_>>()?;
        let first = *degs.first()?;
        degs.iter().all(|g| *g == first).then_some(first)
    }
}

/// Polynomials c_k of the given degrees (None = forced zero) with Σ c_k b_k = target,
/// all vectors of polynomials of one length.
pub(crate) fn solve_combination<F: Field>(target: &[Poly<F>], basis: &[(Vec<Poly<F>>, Option<usize>)], d: usize) -> Option<Vec<Poly<F>>> {
    let mut rows: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
    let mut row_of = |k: usize, m: Vec<u32>| {
        let n = rows.len();
        *rows.entry((k, m)).or_insert(n)
    };
    let mut trip = Vec::new();
    let mut unknowns: Vec<(usize, Vec<u32>)> = Vec::new();
    for (b, (vecs, deg)) in basis.iter().enumerate() {
        let Some(deg) = deg else { continue };
        for m in Monomials::new(d, *deg).iter() {
            let col = unknowns.len();
            unknowns.push((b, m.clone()));
            let mono = Poly::monomial(m.clone(), F::one());
            for (k, comp) in vecs.iter().enumerate() {
                for (mm, c) in comp.mul(&mono).terms() {
                    trip.push((row_of(k, mm.clone()), col, c.clone()));
                }
            }
        }
    }
    let mut rhs = Vec::new();
    for (k, comp) in target.iter().enumerate() {
        for (mm, c) in comp.terms() {
            rhs.push((row_of(k, mm.clone()), c.clone()));
        }
    }
    let a = ExactMatrix::from_triplets(rows.len(), unknowns.len(), trip);
    let x = solve(&a, &crate::linalg::SparseVec::from_pairs(rhs))?;
    let mut out = vec![Poly::zero(); basis.len()];
    for (col, c) in x.iter() {
        let (b, m) = &unknowns[*col];
        out[*b].add_term(m.clone(), c.clone());
    }
    Some(out)
}

/// Constraints u_α, vector fields ξ_α' tangent to {u = 0}, structure functions
/// [ξ_β', ξ_γ'] = C^α'_β'γ' ξ_α' and tangency witnesses ξ_α'(u_α) = A^β_α'α u_β.
#[derive(Clone, Debug)]
pub struct PolyConstraintSystem<F> {
    d: usize,
    constraints: Vec<Poly<F>>,
    fields: Vec<VectorField<F>>,
    /// structure[α'][β'][γ']
    structure: Vec<Vec<Vec<Poly<F>>>>,
    /// tangency[α'][α][β]
    tangency: Vec<Vec<Vec<Poly<F>>>>,
    regular: bool,
}

impl<F: Field> PolyConstraintSystem<F> {
    /// Missing structure functions or witnesses are solved for; supplied ones are checked.
    pub fn new(
        d: usize,
        constraints: Vec<Poly<F>>,
        fields: Vec<VectorField<F>>,
        structure: Option<Vec<Vec<Vec<Poly<F>>>>>,
        tangency: Option<Vec<Vec<Vec<Poly<F>>>>>,
        regular: bool,
    ) -> Result<Self> {
        if constraints.len() > 16 || fields.len() > 16 {
            return Err(NcxError::Invalid("at most 16 constraints and 16 vector fields".into()));
        }
        for (a, u) in constraints.iter().enumerate() {
            match u.homogeneous_degree() {
                Some(g) if g >= 1 => {}
                _ => return Err(NcxError::Invalid(format!("constraint u{} must be a nonzero homogeneous polynomial of degree ≥ 1", a + 1))),
            }
            if u.terms().any(|(m, _)| m.len() != d) {
                return Err(NcxError::DimensionMismatch(format!("constraint u{} is not in {d} variables", a + 1)));
            }
        }
        for (a, x) in fields.iter().enumerate() {
            if x.components.len() != d || x.degree().is_none() {
                return Err(NcxError::Invalid(format!(
                    "vector field ξ{} must be nonzero with homogeneous coefficients of one degree in {d} variables",
                    a + 1
                )));
            }
        }
        let mut sys = PolyConstraintSystem { d, constraints, fields, structure: Vec::new(), tangency: Vec::new(), regular };
        sys.structure = match structure {
            Some(s) => s,
            None => sys.solve_structure()?,
        };
        sys.tangency = match tangency {
            Some(t) => t,
            None => sys.solve_tangency()?,
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn vars(&self) -> usize {
        self.d
    }

    pub fn constraints(&self) -> &[Poly<F>] {
        &self.constraints
    }

    pub fn fields(&self) -> &[VectorField<F>] {
        &self.fields
    }

    pub fn structure(&self, a: usize, b: usize, c: usize) -> &Poly<F> {
        &self.structure[a][b][c]
    }

    pub fn tangency(&self, ap: usize, a: usize, b: usize) -> &Poly<F> {
        &self.tangency[ap][a][b]
    }

    pub fn is_regular_asserted(&self) -> bool {
        self.regular
    }

    pub fn constraint_degree(&self, a: usize) -> usize {
        self.constraints[a].homogeneous_degree().unwrap()
    }

    /// s = 1 − deg ξ, the weight of the ghost χ^α'.
    pub fn field_weight(&self, a: usize) -> i64 {
        1 - self.fields[a].degree().unwrap() as i64
    }

    fn solve_structure(&self) -> Result<Vec<Vec<Vec<Poly<F>>>>> {
        let mp = self.fields.len();
        let mut out = vec![vec![vec![Poly::zero(); mp]; mp]; mp];
        for b in 0..mp {
            for c in 0..mp {
                let target = self.fields[b].bracket(&self.fields[c]);
                if target.is_zero() {
                    continue;
                }
                let basis: Vec<_> = (0..mp)
                    .map(|a| {
                        let g = self.field_weight(a) - self.field_weight(b) - self.field_weight(c);
                        (self.fields[a].components.clone(), (g >= 0).then_some(g as usize))
                    })
                    .collect();
                let sol = solve_combination(&target.components, &basis, self.d).ok_or_else(|| {
                    NcxError::Invalid(format!("[ξ{}, ξ{}] is not a polynomial combination of the fields", b + 1, c + 1))
                })?;
                for (a, p) in sol.into_iter().enumerate() {
                    out[a][b][c] = p;
                }
            }
        }
        Ok(out)
    }

    fn solve_tangency(&self) -> Result<Vec<Vec<Vec<Poly<F>>>>> {
        let m = self.constraints.len();
        let mut out = vec![vec![vec![Poly::zero(); m]; m]; self.fields.len()];
        for (ap, x) in self.fields.iter().enumerate() {
            for a in 0..m {
                let target = x.apply(&self.constraints[a]);
                if target.is_zero() {
                    continue;
                }
                let basis: Vec<_> = (0..m)
                    .map(|b| {
                        let g = self.constraint_degree(a) as i64 - self.field_weight(ap) - self.constraint_degree(b) as i64;
                        (vec![self.constraints[b].clone()], (g >= 0).then_some(g as usize))
                    })
                    .collect();
                let sol = solve_combination(&[target], &basis, self.d)
                    .ok_or_else(|| NcxError::Invalid(format!("ξ{} is not tangent to u{} = 0", ap + 1, a + 1)))?;
                out[ap][a] = sol;
            }
        }
        Ok(out)
    }

    fn validate(&self) -> Result<()> {
        let (m, mp) = (self.constraints.len(), self.fields.len());
        let shape_ok = self.structure.len() == mp
            && self.structure.iter().all(|x| x.len() == mp && x.iter().all(|y| y.len() == mp))
            && self.tangency.len() == mp
            && self.tangency.iter().all(|x| x.len() == m && x.iter().all(|y| y.len() == m));
        if !shape_ok {
            return Err(NcxError::DimensionMismatch("structure functions or tangency witnesses have the wrong shape".into()));
        }
        for b in 0..mp {
            for c in 0..mp {
                let lhs = self.fields[b].bracket(&self.fields[c]);
                let mut rhs = vec![Poly::zero(); self.d];
                for a in 0..mp {
                    let s = &self.structure[a][b][c];
                    if *s != self.structure[a][c][b].scale(&-F::one()) {
                        return Err(NcxError::Invalid("structure functions must be antisymmetric".into()));
                    }
                    for (i, r) in rhs.iter_mut().enumerate() {
                        *r = r.add(&s.mul(&self.fields[a].components[i]));
                    }
                }
                if lhs.components != rhs {
                    return Err(NcxError::Invalid(format!("closure fails for [ξ{}, ξ{}]", b + 1, c + 1)));
                }
            }
        }
        for ap in 0..mp {
            for a in 0..m {
                let lhs = self.fields[ap].apply(&self.constraints[a]);
                let rhs = (0..m).fold(Poly::zero(), |acc, b| acc.add(&self.tangency[ap][a][b].mul(&self.constraints[b])));
                if lhs != rhs {
                    return Err(NcxError::Invalid(format!("tangency identity fails for ξ{} and u{}", ap + 1, a + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let polys = |v: &[Poly<F>]| v.iter().map(|p| p.to_json()).collect::<Vec<_>>();
        json!({
            "vars": self.d,
            "constraints": polys(&self.constraints),
            "vector_fields": self.fields.iter().map(|x| polys(&x.components)).collect::<Vec<_>>(),
            "structure": self.structure.iter().map(|a| a.iter().map(|b| polys(b)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "tangency": self.tangency.iter().map(|a| a.iter().map(|b| polys(b)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "regular": self.regular,
        })
    }

    /// `{"vars", "constraints", "vector_fields", "structure"?, "tangency"?, "regular"?}`;
    /// polynomials are `{"e1,…,eD": scalar}` maps.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| NcxError::Parse(format!("constraint system JSON: {m}"));
        let d = v.get("vars").and_then(|x| x.as_u64()).ok_or_else(|| bad("missing \"vars\""))? as usize;
        let list = |x: &Value| -> Result<Vec<Poly<F>>> {
            x.as_array().ok_or_else(|| bad("expected a list of polynomials"))?.iter().map(|p| Poly::from_json(p, d)).collect()
        };
        let nested = |x: &Value| -> Result<Vec<Vec<Vec<Poly<F>>>>> {
            x.as_array()
                .ok_or_else(|| bad("expected a nested list"))?
                .iter()
                .map(|a| a.as_array().ok_or_else(|| bad("expected a nested list"))?.iter().map(&list).collect())
                .collect()
        };
        let constraints = match v.get("constraints") {
            Some(x) => list(x)?,
            None => Vec::new(),
        };
        let fields = match v.get("vector_fields") {
            Some(x) => x.as_array().ok_or_else(|| bad("\"vector_fields\" must be a list"))?.iter().map(|f| list(f).map(VectorField::new)).collect::<Result<_>>()?,
            None => Vec::new(),
        };
        let structure = v.get("structure").map(&nested).transpose()?;
        let tangency = v.get("tangency").map(&nested).transpose()?;
        let regular = v.get("regular").and_then(|x| x.as_bool()).unwrap_or(true);
        Self::new(d, constraints, fields, structure, tangency, regular)
    }
}
