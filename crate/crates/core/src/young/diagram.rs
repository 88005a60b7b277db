use serde::Serialize;

use crate::error::{NcxError, Result};
use crate::linalg::{SparseVec, Subspace};
use crate::scalars::Field;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.iter().any(|r| *r == 0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(NcxError::Invalid(format!("row lengths {rows:?} must be positive and weakly decreasing")));
        }
        Ok(YoungDiagram { rows })
    }

    /// Y^N_p = ((N-1)^{n_p}, r_p) with p = (N-1) n_p + r_p.
    pub fn maximal(n: usize, p: usize) -> Self {
        let w = n - 1;
        let mut rows = vec![w; p / w];
        if p % w != 0 {
            rows.push(p % w);
        }
        YoungDiagram { rows }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cells(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Column lengths (the conjugate partition).
    pub fn columns(&self) -> Vec<usize> {
        let w = self.rows.first().copied().unwrap_or(0);
        (0..w).map(|j| self.rows.iter().filter(|r| **r > j).count()).collect()
    }

    /// Dimension of the GL_D irreducible of this shape (Weyl's formula).
    pub fn weyl_dimension(&self, d: usize) -> usize {
        if self.rows.len() > d {
            return 0;
        }
        let mut lam = self.rows.clone();
        lam.resize(d, 0);
        let (mut num, mut den) = (1u128, 1u128);
        for i in 0..d {
            for j in i + 1..d {
                num *= (lam[i] - lam[j] + j - i) as u128;
                den *= (j - i) as u128;
            }
        }
        (num / den) as usize
    }

    /// Cell positions (in row-filling order) of each row and each column.
    fn groups(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let mut rows = Vec::new();
        let mut start = 0;
        for r in &self.rows {
            rows.push((start..start + r).collect::<Vec<_>>());
            start += r;
        }
        let cols = (0..self.columns().len())
            .map(|j| rows.iter().filter(|r| r.len() > j).map(|r| r[j]).collect())
            .collect();
        (rows, cols)
    }
}

/// All permutations of `items`, with signs.
fn permutations(items: &[usize]) -> Vec<(Vec<usize>, bool)> {
    if items.len() <= 1 {
        return vec![(items.to_vec(), true)];
    }
    let mut out = Vec::new();
    for (k, first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for (mut p, s) in permutations(&rest) {
            p.insert(0, *first);
            out.push((p, s == (k % 2 == 0)));
        }
    }
    out
}

/// Product group of permutations of the given disjoint position sets, as
/// position maps over 0..p with their signs.
fn product_group(p: usize, sets: &[Vec<usize>]) -> Vec<(Vec<usize>, bool)> {
    let mut group = vec![((0..p).collect::<Vec<_>>(), true)];
    for set in sets {
        let perms = permutations(set);
        let mut next = Vec::with_capacity(group.len() * perms.len());
        for (g, s) in &group {
            for (perm, t) in &perms {
                let mut h = g.clone();
                for (src, dst) in set.iter().zip(perm) {
                    h[*src] = g[*dst];
                }
                next.push((h, s == t));
            }
        }
        group = next;
    }
    group
}

/// Tensors of degree p over ℝ^D, index (μ_1 … μ_p) in base D, μ_1 most significant.
pub(crate) fn encode(t: &[usize], d: usize) -> usize {
    t.iter().fold(0, |acc, x| acc * d + x)
}

pub(crate) fn decode(mut idx: usize, d: usize, p: usize) -> Vec<usize> {
    let mut out = vec![0; p];
    for slot in out.iter_mut().rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

/// The Young symmetrizer: fill the cells row by row, symmetrize rows, then
/// antisymmetrize columns, scaled to be idempotent.
#[derive(Clone, Debug)]
pub struct Symmetrizer<F> {
    diagram: YoungDiagram,
    d: usize,
    rows: Vec<Vec<usize>>,
    cols: Vec<(Vec<usize>, bool)>,
    scale: F,
}

impl<F: Field> Symmetrizer<F> {
    pub fn new(diagram: YoungDiagram, d: usize) -> Self {
        let p = diagram.cells();
        let (rs, cs) = diagram.groups();
        let rows = product_group(p, &rs).into_iter().map(|(g, _)| g).collect();
        let cols = product_group(p, &cs);
        let mut s = Symmetrizer { diagram, d, rows, cols, scale: F::one() };
        s.scale = s.normalization();
        s
    }

    fn normalization(&self) -> F {
        let p = self.degree();
        if self.diagram.rows().len() > self.d {
            return F::one();
        }
        // fill row i with index i: a nonzero image
        let mut t = vec![0; p];
        let mut k = 0;
        for (i, r) in self.diagram.rows().iter().enumerate() {
            for _ in 0..*r {
                t[k] = i;
                k += 1;
            }
        }
        let w = self.raw(&SparseVec::unit(encode(&t, self.d)));
        let ww = self.raw(&w);
        let (i, a) = w.entries().first().expect("nonzero image").clone();
        let lambda = ww.get(i) * &a.inv().unwrap();
        assert!(ww == w.scale(&lambda), "symmetrizer is not quasi-idempotent");
        lambda.inv().expect("nonzero eigenvalue")
    }

    fn permute(&self, v: &SparseVec<F>, group: impl Iterator<Item = (Vec<usize>, F)> + Clone) -> SparseVec<F> {
        let p = self.degree();
        let mut pairs = Vec::new();
        for (idx, c) in v.iter() {
            let t = decode(*idx, self.d, p);
            for (g, s) in group.clone() {
                let u: Vec<usize> = g.iter().map(|k| t[*k]).collect();
                pairs.push((encode(&u, self.d), c.clone() * &s));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    fn raw(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let sym = self.permute(v, self.rows.iter().map(|g| (g.clone(), F::one())));
        self.permute(&sym, self.cols.iter().map(|(g, s)| (g.clone(), if *s { F::one() } else { -F::one() })))
    }

    pub fn diagram(&self) -> &YoungDiagram {
        &self.diagram
    }

    pub fn degree(&self) -> usize {
        self.diagram.cells()
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn scale(&self) -> &F {
        &self.scale
    }

    pub fn apply(&self, v: &SparseVec<F>) -> SparseVec<F> {
        self.raw(v).scale(&self.scale)
    }
}

/// Applies the symmetrizer of `y` to a tensor of degree |y| over ℝ^d.
pub fn symmetrizer_apply<F: Field>(y: &YoungDiagram, d: usize, t: &SparseVec<F>) -> Result<SparseVec<F>> {
    let p = y.cells();
    let full = d.pow(p as u32);
    if t.max_index().map_or(false, |m| m >= full) {
        return Err(NcxError::DimensionMismatch(format!("tensor is not of degree {p} over dimension {d}")));
    }
    Ok(Symmetrizer::new(y.clone(), d).apply(t))
}

/// The image of a Young symmetrizer inside the full tensor space.
#[derive(Clone, Debug)]
pub struct SymmetrySpace<F> {
    pub symmetrizer: Symmetrizer<F>,
    pub basis: Subspace<F>,
}

impl<F: Field> SymmetrySpace<F> {
    pub fn new(y: YoungDiagram, d: usize) -> Result<Self> {
        let sym = Symmetrizer::<F>::new(y, d);
        let p = sym.degree();
        let full = d.pow(p as u32);
        let (rows, cols) = sym.diagram.groups();
        let collect = |semistandard: bool| -> Result<Vec<SparseVec<F>>> {
            let mut gens = Vec::new();
            if sym.diagram.rows().len() > d {
                return Ok(gens);
            }
            for idx in 0..full {
                let t = decode(idx, d, p);
                // the row symmetrization only sees each row as a multiset
                if rows.iter().any(|r| r.windows(2).any(|w| t[w[0]] > t[w[1]])) {
                    continue;
                }
                if semistandard && cols.iter().any(|c| c.windows(2).any(|w| t[w[0]] >= t[w[1]])) {
                    continue;
                }
                let v = sym.apply(&SparseVec::unit(idx));
                if !v.is_zero() {
                    if sym.apply(&v) != v {
                        return Err(NcxError::Invalid("normalized symmetrizer is not idempotent".into()));
                    }
                    gens.push(v);
                }
            }
            Ok(gens)
        };
        // semistandard fillings usually suffice; fall back to every row-sorted filling
        let mut basis = Subspace::span(full, collect(true)?);
        if basis.dim() != sym.diagram.weyl_dimension(d) {
            basis = Subspace::span(full, collect(false)?);
        }
        if basis.dim() != sym.diagram.weyl_dimension(d) {
            return Err(NcxError::Invalid(format!(
                "symmetry space of {:?} has dimension {}, Weyl formula gives {}",
                sym.diagram.rows(),
                basis.dim(),
                sym.diagram.weyl_dimension(d)
            )));
        }
        Ok(SymmetrySpace { symmetrizer: sym, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn degree(&self) -> usize {
        self.symmetrizer.degree()
    }
}
