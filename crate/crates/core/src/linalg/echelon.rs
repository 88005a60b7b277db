use super::sparse::{Accumulator, SparseVec};
use crate::scalars::Field;

/// Row echelon form of a list of vectors. Each row has leading entry 1 at
/// `pivots[i]`, pivots strictly increasing. With tracking on, `combos[i]`
/// writes row i as a combination of the input vectors.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ncols: usize,
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
    combos: Option<Vec<SparseVec<F>>>,
    pivot_row: Vec<Option<usize>>,
    reduced: bool,
}

impl<F: Field> Echelon<F> {
    /// Pivoting: columns left to right; within a column the candidate row
    /// with the fewest nonzeros wins, ties broken by input order.
    pub fn new(ncols: usize, inputs: Vec<SparseVec<F>>, track: bool) -> Self {
        let mut slots: Vec<Option<(SparseVec<F>, SparseVec<F>)>> = inputs
            .into_iter()
            .enumerate()
            .map(|(k, v)| Some((v, if track { SparseVec::unit(k) } else { SparseVec::new() })))
            .collect();
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); ncols];
        for (k, s) in slots.iter().enumerate() {
            if let Some(l) = s.as_ref().and_then(|(v, _)| v.leading()) {
                buckets[l].push(k);
            }
        }
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        let mut combos = Vec::new();
        for c in 0..ncols {
            let ids = std::mem::take(&mut buckets[c]);
            if ids.is_empty() {
                continue;
            }
            let best = *ids
                .iter()
                .min_by_key(|&&k| (slots[k].as_ref().unwrap().0.nnz(), k))
                .unwrap();
            let (mut prow, mut pcombo) = slots[best].take().unwrap();
            let inv = prow.entries()[0].1.inv().expect("nonzero leading entry");
            prow.scale_in_place(&inv);
            if track {
                pcombo.scale_in_place(&inv);
            }
            for &k in &ids {
                if k == best {
                    continue;
                }
                let (v, comb) = slots[k].take().unwrap();
                let f = -v.entries()[0].1.clone();
                let nv = v.axpy(&f, &prow);
                let nc = if track { comb.axpy(&f, &pcombo) } else { comb };
                if let Some(l) = nv.leading() {
                    debug_assert!(l > c);
                    buckets[l].push(k);
                    slots[k] = Some((nv, nc));
                }
            }
            rows.push(prow);
            pivots.push(c);
            combos.push(pcombo);
        }
        let mut pivot_row = vec![None; ncols];
        for (i, &p) in pivots.iter().enumerate() {
            pivot_row[p] = Some(i);
        }
        Echelon { ncols, rows, pivots, combos: track.then_some(combos), pivot_row, reduced: false }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn combos(&self) -> Option<&[SparseVec<F>]> {
        self.combos.as_deref()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Clear every entry above a pivot (reduced row echelon form).
    pub fn reduce(&mut self) {
        if self.reduced {
            return;
        }
        for i in (0..self.rows.len()).rev() {
            let hits: Vec<(usize, F)> = self.rows[i]
                .iter()
                .filter_map(|(c, v)| match self.pivot_row[*c] {
                    Some(j) if j != i => Some((j, v.clone())),
                    _ => None,
                })
                .collect();
            for (j, v) in hits {
                let f = -v;
                self.rows[i] = self.rows[i].axpy(&f, &self.rows[j]);
                if let Some(cs) = self.combos.as_mut() {
                    cs[i] = cs[i].axpy(&f, &cs[j]);
                }
            }
        }
        self.reduced = true;
    }

    /// Reduce `v` against the rows: returns the remainder and the
    /// coefficient of each row used (v = Σ c_i row_i + remainder).
    pub fn reduce_vector(&self, v: &SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        if v.is_zero() || self.rows.is_empty() {
            return (v.clone(), SparseVec::new());
        }
        let mut acc = Accumulator::new(self.ncols);
        acc.add_scaled(&F::one(), v);
        let mut dense = acc.drain().to_dense(self.ncols);
        let mut coeffs = Vec::new();
        for (i, &p) in self.pivots.iter().enumerate() {
            if dense[p].is_zero() {
                continue;
            }
            let f = dense[p].clone();
            for (c, x) in self.rows[i].iter() {
                dense[*c].sub_mul(&f, x);
            }
            coeffs.push((i, f));
        }
        (SparseVec::from_dense(&dense), SparseVec::from_sorted(coeffs))
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce_vector(v).0.is_zero()
    }

    /// Express `v` in terms of the original inputs (needs tracking).
    pub fn solve_in_inputs(&self, v: &SparseVec<F>, n_inputs: usize) -> Option<SparseVec<F>> {
        let combos = self.combos.as_ref().expect("echelon built without tracking");
        let (rem, coeffs) = self.reduce_vector(v);
        if !rem.is_zero() {
            return None;
        }
        let mut acc = Accumulator::new(n_inputs.max(1));
        for (i, c) in coeffs.iter() {
            acc.add_scaled(c, &combos[*i]);
        }
        Some(acc.drain())
    }

    /// Kernel basis of the matrix whose rows were fed in, one vector per
    /// free column: 1 at the free column, minus the RREF column at pivots.
    pub fn nullspace(&mut self) -> (Vec<SparseVec<F>>, Vec<usize>) {
        self.reduce();
        let free: Vec<usize> = (0..self.ncols).filter(|c| self.pivot_row[*c].is_none()).collect();
        let mut cols: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.ncols];
        for (i, row) in self.rows.iter().enumerate() {
            for (c, v) in row.iter() {
                if self.pivot_row[*c].is_none() {
                    cols[*c].push((self.pivots[i], -v.clone()));
                }
            }
        }
        let basis = free
            .iter()
            .map(|&f| {
                let mut e = std::mem::take(&mut cols[f]);
                e.push((f, F::one()));
                SparseVec::from_pairs(e)
            })
            .collect();
        (basis, free)
    }
}
