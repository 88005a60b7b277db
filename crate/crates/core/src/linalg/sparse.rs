use std::fmt;

use crate::scalars::Field;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, PartialEq, Default)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, F::one())] }
    }

    /// Entries must be sorted by index with no duplicates; zeros are dropped.
    pub fn from_sorted(entries: Vec<(usize, F)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec { entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    /// Arbitrary order, duplicates summed.
    pub fn from_pairs(mut pairs: Vec<(usize, F)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut out: Vec<(usize, F)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match out.last_mut() {
                Some((j, w)) if *j == i => *w += &v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVec { entries: out }
    }

    pub fn from_dense(v: &[F]) -> Self {
        SparseVec {
            entries: v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<F> {
        let mut out = vec![F::zero(); n];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, F)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|e| e.0)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn scale(&self, a: &F) -> Self {
        if a.is_zero() {
            return Self::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v.clone() * a)).collect() }
    }

    pub fn scale_in_place(&mut self, a: &F) {
        if a.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, v) in self.entries.iter_mut() {
            *v *= a;
        }
    }

    /// self + a * other
    pub fn axpy(&self, a: &F, other: &Self) -> Self {
        if a.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut x, mut y) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (x.peek(), y.peek()) {
                (Some((i, u)), Some((j, w))) => {
                    if i < j {
                        out.push((*i, u.clone()));
                        x.next();
                    } else if j < i {
                        out.push((*j, a.clone() * w));
                        y.next();
                    } else {
                        let mut s = u.clone();
                        s += &(a.clone() * w);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        x.next();
                        y.next();
                    }
                }
                (Some((i, u)), None) => {
                    out.push((*i, u.clone()));
                    x.next();
                }
                (None, Some((j, w))) => {
                    out.push((*j, a.clone() * w));
                    y.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&-F::one(), other)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn dot(&self, other: &Self) -> F {
        let mut acc = F::zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, j) = (self.entries[a].0, other.entries[b].0);
            if i == j {
                acc += &(self.entries[a].1.clone() * &other.entries[b].1);
                a += 1;
                b += 1;
            } else if i < j {
                a += 1;
            } else {
                b += 1;
            }
        }
        acc
    }

    /// Re-index through `map`; indices mapped to `None` are dropped.
    pub fn remap(&self, map: impl Fn(usize) -> Option<usize>) -> Self {
        Self::from_pairs(self.entries.iter().filter_map(|(i, v)| map(*i).map(|j| (j, v.clone()))).collect())
    }

    pub fn shift(&self, offset: usize) -> Self {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect() }
    }

    /// Entries with index in `start..end`, re-based to start at 0.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= start && *i < end)
                .map(|(i, v)| (i - start, v.clone()))
                .collect(),
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for SparseVec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, v)| (i, v))).finish()
    }
}

/// Dense scratch vector that remembers which slots were touched.
pub(crate) struct Accumulator<F> {
    vals: Vec<F>,
    touched: Vec<usize>,
    flag: Vec<bool>,
}

impl<F: Field> Accumulator<F> {
    pub fn new(n: usize) -> Self {
        Accumulator { vals: vec![F::zero(); n], touched: Vec::new(), flag: vec![false; n] }
    }

    pub fn add_scaled(&mut self, a: &F, v: &SparseVec<F>) {
        for (i, x) in v.iter() {
            if !self.flag[*i] {
                self.flag[*i] = true;
                self.touched.push(*i);
            }
            self.vals[*i] += &(a.clone() * x);
        }
    }

    pub fn drain(&mut self) -> SparseVec<F> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.flag[i] = false;
            let v = std::mem::replace(&mut self.vals[i], F::zero());
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        self.touched.clear();
        SparseVec { entries: out }
    }
}
