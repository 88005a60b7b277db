use std::fmt;

use serde_json::{json, Value};

use super::sparse::{Accumulator, SparseVec};
use crate::error::{NcxError, Result};
use crate::scalars::{Field, FieldDescriptor};

/// Row-major sparse matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct ExactMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<F>>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec<F>>) -> Self {
        debug_assert!(data.iter().all(|r| r.max_index().map_or(true, |m| m < cols)));
        ExactMatrix { rows: data.len(), cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[SparseVec<F>]) -> Self {
        Self::from_rows(rows, columns.to_vec()).transpose()
    }

    pub fn transpose(&self) -> Self {
        let mut buckets: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row.iter() {
                buckets[*j].push((i, v.clone()));
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            data: buckets.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged dense matrix");
        ExactMatrix { rows: rows.len(), cols, data: rows.iter().map(|r| SparseVec::from_dense(r)).collect() }
    }

    /// Duplicate positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, F)>) -> Self {
        let mut buckets: Vec<Vec<(usize, F)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            buckets[r].push((c, v));
        }
        ExactMatrix { rows, cols, data: buckets.into_iter().map(SparseVec::from_pairs).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec<F> {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[SparseVec<F>] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.data[r].get(c)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn columns(&self) -> Vec<SparseVec<F>> {
        self.transpose().data
    }

    pub fn column(&self, j: usize) -> SparseVec<F> {
        SparseVec::from_sorted(
            self.data.iter().enumerate().map(|(i, r)| (i, r.get(j))).filter(|(_, v)| !v.is_zero()).collect(),
        )
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &SparseVec<F>) -> SparseVec<F> {
        assert!(v.max_index().map_or(true, |m| m < self.cols), "vector longer than matrix width");
        if v.is_zero() {
            return SparseVec::new();
        }
        let dense = v.to_dense(self.cols);
        let mut out = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = F::zero();
            for (j, x) in row.iter() {
                if !dense[*j].is_zero() {
                    acc += &(x.clone() * &dense[*j]);
                }
            }
            if !acc.is_zero() {
                out.push((i, acc));
            }
        }
        SparseVec::from_sorted(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut acc = Accumulator::new(other.cols);
        let data = self
            .data
            .iter()
            .map(|row| {
                for (k, a) in row.iter() {
                    acc.add_scaled(a, &other.data[*k]);
                }
                acc.drain()
            })
            .collect();
        ExactMatrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(NcxError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols, "matrix sum shape mismatch");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, a: &F) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.scale(a)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn pow(&self, k: usize) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Entry-wise conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let t = self.transpose();
        ExactMatrix {
            rows: t.rows,
            cols: t.cols,
            data: t
                .data
                .into_iter()
                .map(|r| SparseVec::from_sorted(r.into_entries().into_iter().map(|(i, v)| (i, v.conj())).collect()))
                .collect(),
        }
    }

    /// Kronecker product; index (i, j) of the result is i * other.dim + j.
    pub fn kron(&self, other: &Self) -> Self {
        let mut data = Vec::with_capacity(self.rows * other.rows);
        for ra in &self.data {
            for rb in &other.data {
                let mut e = Vec::with_capacity(ra.nnz() * rb.nnz());
                for (i, a) in ra.iter() {
                    for (j, b) in rb.iter() {
                        e.push((i * other.cols + j, a.clone() * b));
                    }
                }
                data.push(SparseVec::from_sorted(e));
            }
        }
        ExactMatrix { rows: self.rows * other.rows, cols: self.cols * other.cols, data }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut data: Vec<SparseVec<F>> = self.data.clone();
        data.extend(other.data.iter().map(|r| r.shift(self.cols)));
        ExactMatrix { rows: self.rows + other.rows, cols: self.cols + other.cols, data }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut e = a.entries().to_vec();
                e.extend(b.shift(self.cols).into_entries());
                SparseVec::from_sorted(e)
            })
            .collect();
        ExactMatrix { rows: self.rows, cols: self.cols + other.cols, data }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        ExactMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        ExactMatrix { rows: r1 - r0, cols: c1 - c0, data: self.data[r0..r1].iter().map(|r| r.slice(c0, c1)).collect() }
    }

    pub fn map_entries<G: Field>(&self, f: impl Fn(&F) -> G) -> ExactMatrix<G> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|r| SparseVec::from_sorted(r.iter().map(|(i, v)| (*i, f(v))).collect()))
                .collect(),
        }
    }

    pub fn to_json(&self, field: &FieldDescriptor) -> Value {
        let entries: Vec<Value> = self
            .data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| json!([r, c, v.to_string()])))
            .collect();
        json!({ "rows": self.rows, "cols": self.cols, "field": field.name(), "entries": entries })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| NcxError::Parse(format!("matrix JSON: {m}"));
        let rows = v["rows"].as_u64().ok_or_else(|| bad("missing rows"))? as usize;
        let cols = v["cols"].as_u64().ok_or_else(|| bad("missing cols"))? as usize;
        let entries = v["entries"].as_array().ok_or_else(|| bad("missing entries"))?;
        let mut trip = Vec::with_capacity(entries.len());
        for e in entries {
            let a = e.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("entry must be [r, c, scalar]"))?;
            let r = a[0].as_u64().ok_or_else(|| bad("row index"))? as usize;
            let c = a[1].as_u64().ok_or_else(|| bad("col index"))? as usize;
            if r >= rows || c >= cols {
                return Err(bad(&format!("entry ({r}, {c}) out of range")));
            }
            let s: F = match &a[2] {
                Value::String(s) => s.parse()?,
                Value::Number(n) => n.to_string().parse()?,
                _ => return Err(bad("scalar must be a string")),
            };
            trip.push((r, c, s));
        }
        Ok(Self::from_triplets(rows, cols, trip))
    }
}

impl<F: fmt::Debug> fmt::Debug for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.rows, self.cols)?;
        for (i, r) in self.data.iter().enumerate().take(40) {
            writeln!(f, "  {i}: {r:?}")?;
        }
        Ok(())
    }
}

/// Column-major copy of a matrix, for applying it to many sparse vectors.
#[derive(Clone, Debug)]
pub struct ColumnMatrix<F> {
    rows: usize,
    columns: Vec<SparseVec<F>>,
}

impl<F: Field> ColumnMatrix<F> {
    pub fn new(m: &ExactMatrix<F>) -> Self {
        ColumnMatrix { rows: m.rows, columns: m.transpose().data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec<F> {
        &self.columns[j]
    }

    pub fn apply(&self, v: &SparseVec<F>) -> SparseVec<F> {
        match v.entries() {
            [] => SparseVec::new(),
            [(j, a)] => self.columns[*j].scale(a),
            _ => SparseVec::from_pairs(
                v.iter().flat_map(|(j, a)| self.columns[*j].iter().map(move |(i, x)| (*i, x.clone() * a))).collect(),
            ),
        }
    }
}
