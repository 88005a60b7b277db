//! ℤ-graded and ℤ_N-graded N-complexes and their graded generalized homology
//! H^n_(m) = ker(d^m: E^n → E^{n+m}) / d^{N-m}(E^{n+m-N}).

mod les;
mod matrix_example;
mod qalgebra;
pub mod random;
mod tensor;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{NcxError, Result};
use crate::linalg::{ExactMatrix, Quotient, Subspace};
use crate::ndiff::NDiffModule;
use crate::scalars::{Field, FieldDescriptor};

pub use les::{les_check, GradedSes, LesReport};
pub use matrix_example::{matrix_algebra_complex, MatrixAlgebra};
pub use qalgebra::{q_leibniz_failure, GradedQAlgebra, LeibnizFailure};
pub use tensor::{classical_tensor, kunneth_check, q_tensor, q_tensor_power_check, KunnethReport};

/// What lies beyond the stored degrees on one side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Boundary {
    /// components beyond are zero; homology there is determinate
    Zero,
    /// components beyond are unknown; homology touching them is indeterminate
    Truncated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Grading {
    Integer { below: Boundary, above: Boundary },
    Cyclic,
}

#[derive(Clone, Debug)]
pub struct GradedNComplex<F> {
    n: usize,
    min_degree: i64,
    dims: Vec<usize>,
    /// maps[i]: degree min+i → min+i+1; for cyclic complexes the last map wraps to degree 0
    maps: Vec<ExactMatrix<F>>,
    grading: Grading,
}

impl<F: Field> GradedNComplex<F> {
    /// ℤ-graded window [min_degree, min_degree + dims.len() - 1], truncated on both sides.
    pub fn new(n: usize, min_degree: i64, dims: Vec<usize>, maps: Vec<ExactMatrix<F>>) -> Result<Self> {
        Self::with_boundaries(n, min_degree, dims, maps, Boundary::Truncated, Boundary::Truncated)
    }

    pub fn with_boundaries(
        n: usize,
        min_degree: i64,
        dims: Vec<usize>,
        maps: Vec<ExactMatrix<F>>,
        below: Boundary,
        above: Boundary,
    ) -> Result<Self> {
        if dims.is_empty() || maps.len() + 1 != dims.len() {
            return Err(NcxError::DimensionMismatch(format!(
                "{} components need {} maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                maps.len()
            )));
        }
        let c = GradedNComplex { n, min_degree, dims, maps, grading: Grading::Integer { below, above } };
        c.validate()?;
        Ok(c)
    }

    /// One period of a ℤ_N-graded complex: components 0..N-1, maps[N-1] wraps to 0.
    pub fn cyclic(n: usize, dims: Vec<usize>, maps: Vec<ExactMatrix<F>>) -> Result<Self> {
        if dims.len() != n || maps.len() != n {
            return Err(NcxError::DimensionMismatch(format!("a ℤ_{n}-complex needs {n} components and {n} maps")));
        }
        let c = GradedNComplex { n, min_degree: 0, dims, maps, grading: Grading::Cyclic };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(NcxError::Invalid(format!("N must be at least 2, got {}", self.n)));
        }
        for (i, m) in self.maps.iter().enumerate() {
            let (s, t) = (self.dims[i], self.dims[(i + 1) % self.dims.len()]);
            if m.cols() != s || m.rows() != t {
                return Err(NcxError::DimensionMismatch(format!(
                    "map out of degree {} is {}x{}, expected {}x{}",
                    self.min_degree + i as i64,
                    m.rows(),
                    m.cols(),
                    t,
                    s
                )));
            }
        }
        for deg in self.degrees() {
            if let Some(p) = self.map_power(deg, self.n) {
                if !p.is_zero() {
                    return Err(NcxError::NotNilpotent { n: self.n });
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn is_cyclic(&self) -> bool {
        self.grading == Grading::Cyclic
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.dims.len() as i64 - 1
    }

    /// Stored degrees (one period for cyclic complexes).
    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.min_degree..=self.max_degree()
    }

    fn slot(&self, deg: i64) -> Option<usize> {
        match self.grading {
            Grading::Cyclic => Some(deg.rem_euclid(self.n as i64) as usize),
            Grading::Integer { .. } => {
                let i = deg - self.min_degree;
                (i >= 0 && (i as usize) < self.dims.len()).then_some(i as usize)
            }
        }
    }

    /// Some(dim) when the component is known (zero beyond a zero boundary).
    pub fn component_dim(&self, deg: i64) -> Option<usize> {
        if let Some(i) = self.slot(deg) {
            return Some(self.dims[i]);
        }
        match self.grading {
            Grading::Integer { below, above } => {
                let side = if deg < self.min_degree { below } else { above };
                (side == Boundary::Zero).then_some(0)
            }
            Grading::Cyclic => unreachable!(),
        }
    }

    /// d: E^deg → E^{deg+1}, when determinate.
    pub fn map(&self, deg: i64) -> Option<ExactMatrix<F>> {
        let s = self.component_dim(deg)?;
        let t = self.component_dim(deg + 1)?;
        match (self.slot(deg), self.slot(deg + 1)) {
            (Some(i), Some(_)) => Some(self.maps[i].clone()),
            _ => Some(ExactMatrix::zeros(t, s)),
        }
    }

    /// d^k: E^deg → E^{deg+k}, when determinate.
    pub fn map_power(&self, deg: i64, k: usize) -> Option<ExactMatrix<F>> {
        let mut acc = ExactMatrix::identity(self.component_dim(deg)?);
        for j in 0..k as i64 {
            acc = self.map(deg + j)?.mul(&acc);
        }
        Some(acc)
    }

    /// H^deg_(m), or None when the window does not determine it.
    pub fn homology_at(&self, deg: i64, m: usize) -> Option<Quotient<F>> {
        assert!(m >= 1 && m < self.n, "m must lie in 1..N-1");
        let out = self.map_power(deg, m)?;
        let inc = self.map_power(deg + m as i64 - self.n as i64, self.n - m)?;
        let z = Subspace::kernel_of(&out);
        Some(Quotient::new(z, &inc.columns()).expect("d^N = 0 puts B inside Z"))
    }

    pub fn homology(&self) -> GradedHomology<F> {
        let mut entries = BTreeMap::new();
        for deg in self.degrees() {
            for m in 1..self.n {
                entries.insert((deg, m), self.homology_at(deg, m));
            }
        }
        GradedHomology { n: self.n, entries }
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = vec![0];
        for d in &self.dims {
            off.push(off.last().unwrap() + d);
        }
        off
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Forget the grading. Maps leaving the stored window are dropped.
    pub fn total_module(&self) -> Result<NDiffModule<F>> {
        let off = self.offsets();
        let total = *off.last().unwrap();
        let mut trip = Vec::new();
        for (i, m) in self.maps.iter().enumerate() {
            let j = (i + 1) % self.dims.len();
            for r in 0..m.rows() {
                for (c, v) in m.row(r).iter() {
                    trip.push((off[j] + r, off[i] + c, v.clone()));
                }
            }
        }
        NDiffModule::new(self.n, ExactMatrix::from_triplets(total, total, trip))
    }

    /// Pullback of a ℤ_N-complex along ℤ → ℤ_N on degrees [lo, hi], truncated on both sides.
    pub fn pullback(&self, lo: i64, hi: i64) -> Result<Self> {
        if !self.is_cyclic() {
            return Err(NcxError::Invalid("pullback needs a cyclic complex".into()));
        }
        let dims = (lo..=hi).map(|d| self.component_dim(d).unwrap()).collect();
        let maps = (lo..hi).map(|d| self.map(d).unwrap()).collect();
        Self::new(self.n, lo, dims, maps)
    }

    pub fn to_json(&self, field: &FieldDescriptor) -> Value {
        let degrees: Vec<Value> =
            self.degrees().zip(&self.dims).map(|(d, dim)| json!({ "n": d, "dim": dim })).collect();
        let maps: Vec<Value> = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| json!({ "from_degree": self.min_degree + i as i64, "matrix": m.to_json(field) }))
            .collect();
        let mut v = json!({
            "N": self.n,
            "field": field.name(),
            "degrees": degrees,
            "maps": maps,
            "cyclic": self.is_cyclic(),
        });
        if let Grading::Integer { below, above } = self.grading {
            v["below"] = json!(below == Boundary::Zero);
            v["above"] = json!(above == Boundary::Zero);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| NcxError::Parse(format!("complex JSON: {m}"));
        let n = v["N"].as_u64().ok_or_else(|| bad("missing N"))? as usize;
        let degs = v["degrees"].as_array().ok_or_else(|| bad("missing degrees"))?;
        let mut pairs: Vec<(i64, usize)> = degs
            .iter()
            .map(|d| Ok((d["n"].as_i64().ok_or_else(|| bad("degree n"))?, d["dim"].as_u64().ok_or_else(|| bad("degree dim"))? as usize)))
            .collect::<Result<_>>()?;
        pairs.sort();
        if pairs.is_empty() || pairs.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
            return Err(bad("degrees must be consecutive"));
        }
        let min = pairs[0].0;
        let dims: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        let mut maps: Vec<Option<ExactMatrix<F>>> = vec![None; dims.len()];
        for m in v["maps"].as_array().ok_or_else(|| bad("missing maps"))? {
            let from = m["from_degree"].as_i64().ok_or_else(|| bad("from_degree"))?;
            let i = usize::try_from(from - min).ok().filter(|&i| i < dims.len()).ok_or_else(|| bad("map degree out of range"))?;
            maps[i] = Some(ExactMatrix::from_json(&m["matrix"])?);
        }
        let cyclic = v["cyclic"].as_bool().unwrap_or(false);
        let fill = |i: usize, maps: &mut Vec<Option<ExactMatrix<F>>>, target: usize| {
            maps[i].take().unwrap_or_else(|| ExactMatrix::zeros(target, dims[i]))
        };
        if cyclic {
            let ms = (0..dims.len()).map(|i| fill(i, &mut maps, dims[(i + 1) % dims.len()])).collect();
            return Self::cyclic(n, dims.clone(), ms);
        }
        let ms = (0..dims.len() - 1).map(|i| fill(i, &mut maps, dims[i + 1])).collect();
        let side = |k: &str| if v[k].as_bool().unwrap_or(false) { Boundary::Zero } else { Boundary::Truncated };
        Self::with_boundaries(n, min, dims.clone(), ms, side("below"), side("above"))
    }
}

#[derive(Clone, Debug)]
pub struct GradedHomology<F> {
    n: usize,
    entries: BTreeMap<(i64, usize), Option<Quotient<F>>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GradedDim {
    pub degree: i64,
    pub m: usize,
    /// None: indeterminate under truncation
    pub dim: Option<usize>,
}

impl<F: Field> GradedHomology<F> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, deg: i64, m: usize) -> Option<&Quotient<F>> {
        self.entries.get(&(deg, m)).and_then(|q| q.as_ref())
    }

    pub fn dim(&self, deg: i64, m: usize) -> Option<usize> {
        self.get(deg, m).map(|q| q.dim())
    }

    pub fn table(&self) -> Vec<GradedDim> {
        self.entries.iter().map(|(&(degree, m), q)| GradedDim { degree, m, dim: q.as_ref().map(|q| q.dim()) }).collect()
    }
}

#[cfg(test)]
mod tests;
