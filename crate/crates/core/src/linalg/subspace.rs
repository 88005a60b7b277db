use super::echelon::Echelon;
use super::matrix::ExactMatrix;
use super::sparse::SparseVec;
use crate::error::{NcxError, Result};
use crate::scalars::Field;

#[derive(Clone, Debug)]
enum Coords<F> {
    /// basis is the reduced echelon itself: coordinates are the reduction coefficients
    Echelon(Echelon<F>),
    /// kernel basis in free-column form: coordinates are the entries at the free columns
    FreeColumns(Vec<usize>),
    /// arbitrary independent basis with tracked echelon
    Tracked(Echelon<F>),
}

/// Subspace of F^ambient with a fixed basis and a coordinate solver.
#[derive(Clone, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<SparseVec<F>>,
    coords: Coords<F>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), coords: Coords::FreeColumns(Vec::new()) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(SparseVec::unit).collect(), coords: Coords::FreeColumns((0..ambient).collect()) }
    }

    /// Span of arbitrary vectors; the basis is their reduced echelon form.
    pub fn span(ambient: usize, gens: Vec<SparseVec<F>>) -> Self {
        let mut e = Echelon::new(ambient, gens, false);
        e.reduce();
        Subspace { ambient, basis: e.rows().to_vec(), coords: Coords::Echelon(e) }
    }

    /// Keeps the given basis; fails if the vectors are dependent.
    pub fn from_independent(ambient: usize, basis: Vec<SparseVec<F>>) -> Result<Self> {
        let e = Echelon::new(ambient, basis.clone(), true);
        if e.rank() != basis.len() {
            return Err(NcxError::Invalid("basis vectors are linearly dependent".into()));
        }
        Ok(Subspace { ambient, basis, coords: Coords::Tracked(e) })
    }

    pub fn kernel_of(m: &ExactMatrix<F>) -> Self {
        let mut e = Echelon::new(m.cols(), m.row_vecs().to_vec(), false);
        let (basis, free) = e.nullspace();
        Subspace { ambient: m.cols(), basis, coords: Coords::FreeColumns(free) }
    }

    pub fn image_of(m: &ExactMatrix<F>) -> Self {
        Self::span(m.rows(), m.columns())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.basis
    }

    /// Basis as the columns of an ambient x dim matrix.
    pub fn basis_matrix(&self) -> ExactMatrix<F> {
        ExactMatrix::from_columns(self.ambient, &self.basis)
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        match &self.coords {
            Coords::Echelon(e) => {
                let (rem, c) = e.reduce_vector(v);
                rem.is_zero().then_some(c)
            }
            Coords::Tracked(e) => e.solve_in_inputs(v, self.basis.len()),
            Coords::FreeColumns(free) => {
                let c: Vec<(usize, F)> =
                    free.iter().enumerate().map(|(k, &f)| (k, v.get(f))).filter(|(_, x)| !x.is_zero()).collect();
                let c = SparseVec::from_sorted(c);
                (self.combine(&c) == *v).then_some(c)
            }
        }
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        match &self.coords {
            Coords::Echelon(e) | Coords::Tracked(e) => e.contains(v),
            Coords::FreeColumns(_) => self.coordinates(v).is_some(),
        }
    }

    /// Σ c_i basis_i
    pub fn combine(&self, c: &SparseVec<F>) -> SparseVec<F> {
        let mut out = SparseVec::new();
        for (i, x) in c.iter() {
            out = out.axpy(x, &self.basis[*i]);
        }
        out
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum_dim(&self, other: &Subspace<F>) -> usize {
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Echelon::new(self.ambient, gens, false).rank()
    }

    pub fn intersection_dim(&self, other: &Subspace<F>) -> usize {
        self.dim() + other.dim() - self.sum_dim(other)
    }
}

/// Z / B for subspaces B ⊆ Z, with representatives taken from Z's basis:
/// the basis vectors of Z whose coordinate positions are not pivots of B.
#[derive(Clone, Debug)]
pub struct Quotient<F> {
    z: Subspace<F>,
    b: Echelon<F>,
    complement: Vec<usize>,
    b_dim: usize,
}

impl<F: Field> Quotient<F> {
    pub fn new(z: Subspace<F>, b_gens: &[SparseVec<F>]) -> Result<Self> {
        let mut coords = Vec::with_capacity(b_gens.len());
        for v in b_gens {
            coords.push(z.coordinates(v).ok_or(NcxError::NotSubspace)?);
        }
        let mut b = Echelon::new(z.dim(), coords, false);
        b.reduce();
        let complement = (0..z.dim()).filter(|i| !b.pivots().contains(i)).collect();
        let b_dim = b.rank();
        Ok(Quotient { z, b, complement, b_dim })
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn z(&self) -> &Subspace<F> {
        &self.z
    }

    pub fn z_dim(&self) -> usize {
        self.z.dim()
    }

    pub fn b_dim(&self) -> usize {
        self.b_dim
    }

    pub fn ambient(&self) -> usize {
        self.z.ambient()
    }

    /// Representative vector of the i-th basis class.
    pub fn representative(&self, i: usize) -> &SparseVec<F> {
        &self.z.basis()[self.complement[i]]
    }

    pub fn representatives(&self) -> Vec<SparseVec<F>> {
        (0..self.dim()).map(|i| self.representative(i).clone()).collect()
    }

    /// Vector lifted from quotient coordinates.
    pub fn lift(&self, c: &SparseVec<F>) -> SparseVec<F> {
        let mut out = SparseVec::new();
        for (i, x) in c.iter() {
            out = out.axpy(x, self.representative(*i));
        }
        out
    }

    /// Class of `v` in the complement basis; errors if `v ∉ Z`.
    pub fn coordinates(&self, v: &SparseVec<F>) -> Result<SparseVec<F>> {
        let zc = self.z.coordinates(v).ok_or(NcxError::NotMember)?;
        let (rem, _) = self.b.reduce_vector(&zc);
        // after reduction by the RREF of B the pivot slots are zero
        Ok(rem.remap(|i| self.complement.binary_search(&i).ok()))
    }

    pub fn is_zero_class(&self, v: &SparseVec<F>) -> Result<bool> {
        Ok(self.coordinates(v)?.is_zero())
    }
}

pub fn rank<F: Field>(m: &ExactMatrix<F>) -> usize {
    // eliminate along the shorter side
    if m.rows() <= m.cols() {
        Echelon::new(m.cols(), m.row_vecs().to_vec(), false).rank()
    } else {
        Echelon::new(m.rows(), m.columns(), false).rank()
    }
}

pub fn kernel_basis<F: Field>(m: &ExactMatrix<F>) -> Subspace<F> {
    Subspace::kernel_of(m)
}

pub fn image_basis<F: Field>(m: &ExactMatrix<F>) -> Subspace<F> {
    Subspace::image_of(m)
}

/// Some x with M x = b, if one exists.
pub fn solve<F: Field>(m: &ExactMatrix<F>, b: &SparseVec<F>) -> Option<SparseVec<F>> {
    let e = Echelon::new(m.rows(), m.columns(), true);
    e.solve_in_inputs(b, m.cols())
}

pub fn membership<F: Field>(s: &Subspace<F>, v: &SparseVec<F>) -> bool {
    s.contains(v)
}

pub fn quotient_coordinates<F: Field>(z: &Subspace<F>, b: &Subspace<F>, v: &SparseVec<F>) -> Result<SparseVec<F>> {
    Quotient::new(z.clone(), b.basis())?.coordinates(v)
}

/// Matrix of the map Z/B → Z'/B' induced by a linear map on representatives.
pub fn induced_map<F: Field>(
    source: &Quotient<F>,
    target: &Quotient<F>,
    mut f: impl FnMut(&SparseVec<F>) -> SparseVec<F>,
) -> Result<ExactMatrix<F>> {
    let mut cols = Vec::with_capacity(source.dim());
    for i in 0..source.dim() {
        cols.push(target.coordinates(&f(source.representative(i)))?);
    }
    Ok(ExactMatrix::from_columns(target.dim(), &cols))
}

/// A → B → C is exact at B: g∘f = 0 and rank f + rank g = dim B.
pub fn is_exact_at<F: Field>(f: &ExactMatrix<F>, g: &ExactMatrix<F>) -> bool {
    f.rows() == g.cols() && g.mul(f).is_zero() && rank(f) + rank(g) == f.rows()
}
