use std::collections::BTreeMap;

use crate::error::{NcxError, Result};
use crate::linalg::{ExactMatrix, SparseVec};
use crate::poly::{Monomials, Poly};
use crate::scalars::Field;

/// Sign of e^a e^b → e^{a∪b} for ordered exterior monomials, None on overlap.
fn merge_sign(a: u32, b: u32) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(swaps % 2 == 0)
}

/// Element of Poly ⊗ Λ(π) ⊗ Λ(χ): (π-mask, χ-mask) → coefficient, basis f·π^P·χ^C
/// with both exterior monomials in increasing order.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Ghost<F> {
    terms: BTreeMap<(u32, u32), Poly<F>>,
}

impl<F: Field> Ghost<F> {
    pub fn zero() -> Self {
        Ghost { terms: BTreeMap::new() }
    }

    pub fn basis(p: u32, c: u32, f: Poly<F>) -> Self {
        let mut g = Self::zero();
        g.add_poly(p, c, &f);
        g
    }

    pub fn poly(f: Poly<F>) -> Self {
        Self::basis(0, 0, f)
    }

    pub fn constant(d: usize, c: F) -> Self {
        Self::poly(Poly::monomial(vec![0; d], c))
    }

    pub fn pi(d: usize, a: usize) -> Self {
        Self::basis(1 << a, 0, Poly::monomial(vec![0; d], F::one()))
    }

    pub fn chi(d: usize, a: usize) -> Self {
        Self::basis(0, 1 << a, Poly::monomial(vec![0; d], F::one()))
    }

    pub fn add_poly(&mut self, p: u32, c: u32, f: &Poly<F>) {
        if f.is_zero() {
            return;
        }
        let slot = self.terms.entry((p, c)).or_insert_with(Poly::zero);
        *slot = slot.add(f);
        if slot.is_zero() {
            self.terms.remove(&(p, c));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Poly<F>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((p, c), f) in &other.terms {
            out.add_poly(*p, *c, f);
        }
        out
    }

    pub fn scale(&self, a: &F) -> Self {
        let mut out = Self::zero();
        for ((p, c), f) in &self.terms {
            out.add_poly(*p, *c, &f.scale(a));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn mul_poly(&self, g: &Poly<F>) -> Self {
        let mut out = Self::zero();
        for ((p, c), f) in &self.terms {
            out.add_poly(*p, *c, &f.mul(g));
        }
        out
    }

    /// Graded-commutative product; π and χ are odd, polynomials even.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((p1, c1), f1) in &self.terms {
            for ((p2, c2), f2) in &other.terms {
                let (Some(sp), Some(sc)) = (merge_sign(*p1, *p2), merge_sign(*c1, *c2)) else { continue };
                let cross = (c1.count_ones() * p2.count_ones()) % 2 == 0;
                let f = f1.mul(f2);
                let f = if sp == sc && cross || sp != sc && !cross { f } else { f.scale(&-F::one()) };
                out.add_poly(p1 | p2, c1 | c2, &f);
            }
        }
        out
    }

    /// (π count, χ count) if every term has the same one.
    pub fn ghost_numbers(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(|(p, c)| (p.count_ones(), c.count_ones()));
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }
}

/// Integer weights of the generators; every installed map preserves the total weight.
#[derive(Clone, Debug, PartialEq)]
pub struct Weights {
    pub d: usize,
    pub pi: Vec<i64>,
    pub chi: Vec<i64>,
}

impl Weights {
    fn mask_weight(w: &[i64], mask: u32) -> i64 {
        (0..w.len()).filter(|k| mask >> k & 1 == 1).map(|k| w[k]).sum()
    }

    pub fn of_term(&self, p: u32, c: u32, poly_degree: usize) -> i64 {
        poly_degree as i64 + Self::mask_weight(&self.pi, p) + Self::mask_weight(&self.chi, c)
    }

    /// Weight of a ghost element, None if it is zero or not homogeneous.
    pub fn of<F: Field>(&self, g: &Ghost<F>) -> Option<i64> {
        let mut ws = Vec::new();
        for ((p, c), f) in g.terms() {
            for (m, _) in f.terms() {
                ws.push(self.of_term(*p, *c, m.iter().sum::<u32>() as usize));
            }
        }
        let first = *ws.first()?;
        ws.iter().all(|w| *w == first).then_some(first)
    }

    /// Smallest weight any basis element can have.
    pub fn lowest(&self) -> i64 {
        self.pi.iter().chain(&self.chi).filter(|w| **w < 0).sum()
    }
}

/// Odd derivation of the ghost algebra, fixed by its values on x_i, π_α, χ^α'.
#[derive(Clone, Debug, PartialEq)]
pub struct AntiDerivation<F> {
    pub on_x: Vec<Ghost<F>>,
    pub on_pi: Vec<Ghost<F>>,
    pub on_chi: Vec<Ghost<F>>,
}

impl<F: Field> AntiDerivation<F> {
    pub fn zero(d: usize, m: usize, m_prime: usize) -> Self {
        AntiDerivation { on_x: vec![Ghost::zero(); d], on_pi: vec![Ghost::zero(); m], on_chi: vec![Ghost::zero(); m_prime] }
    }

    pub fn is_zero(&self) -> bool {
        self.on_x.iter().chain(&self.on_pi).chain(&self.on_chi).all(|g| g.is_zero())
    }

    fn on_poly(&self, f: &Poly<F>) -> Ghost<F> {
        let mut out = Ghost::zero();
        for (i, gx) in self.on_x.iter().enumerate() {
            if gx.is_zero() {
                continue;
            }
            let df = f.derivative(i);
            if !df.is_zero() {
                out = out.add(&gx.mul_poly(&df));
            }
        }
        out
    }

    pub fn apply(&self, g: &Ghost<F>) -> Ghost<F> {
        let d = self.on_x.len();
        let one = || Poly::monomial(vec![0; d], F::one());
        let mut out = Ghost::zero();
        for ((p, c), f) in g.terms() {
            let (p, c) = (*p, *c);
            out = out.add(&self.on_poly(f).mul(&Ghost::basis(p, c, one())));
            let mut k = 0u32;
            let mut gens: Vec<(bool, usize)> = (0..32).filter(|a| p >> a & 1 == 1).map(|a| (true, a)).collect();
            gens.extend((0..32).filter(|a| c >> a & 1 == 1).map(|a| (false, a)));
            for (is_pi, a) in gens {
                let img = if is_pi { &self.on_pi[a] } else { &self.on_chi[a] };
                if !img.is_zero() {
                    // prefix · δ(generator) · suffix
                    let (pre, suf) = if is_pi {
                        let below = p & ((1u32 << a) - 1);
                        (Ghost::basis(below, 0, one()), Ghost::basis(p & !below & !(1 << a), c, one()))
                    } else {
                        let below = c & ((1u32 << a) - 1);
                        (Ghost::basis(p, below, one()), Ghost::basis(0, c & !below & !(1 << a), one()))
                    };
                    let term = pre.mul(img).mul(&suf).mul_poly(f);
                    out = out.add(&if k % 2 == 0 { term } else { term.neg() });
                }
                k += 1;
            }
        }
        out
    }

    /// Whether every generator image is homogeneous of the generator's weight
    /// with ghost numbers shifted by (π, χ) = (shift_pi, shift_chi).
    pub fn check_bidegree(&self, w: &Weights, shift_pi: i32, shift_chi: u32) -> Result<()> {
        let check = |img: &Ghost<F>, weight: i64, pis: i32, chis: u32, name: String| -> Result<()> {
            if img.is_zero() {
                return Ok(());
            }
            let ok_w = w.of(img) == Some(weight);
            let ok_g = img.ghost_numbers() == Some(((pis + shift_pi) as u32, chis + shift_chi));
            if ok_w && ok_g && pis + shift_pi >= 0 {
                Ok(())
            } else {
                Err(NcxError::Invalid(format!("image of {name} is not homogeneous of the expected bidegree and weight")))
            }
        };
        for (i, g) in self.on_x.iter().enumerate() {
            check(g, 1, 0, 0, format!("x{}", i + 1))?;
        }
        for (a, g) in self.on_pi.iter().enumerate() {
            check(g, w.pi[a], 1, 0, format!("π{}", a + 1))?;
        }
        for (a, g) in self.on_chi.iter().enumerate() {
            check(g, w.chi[a], 0, 1, format!("χ{}", a + 1))?;
        }
        Ok(())
    }
}

/// Generators x_i, π_α, χ^α' as ghost elements.
pub fn generators<F: Field>(d: usize, m: usize, m_prime: usize) -> Vec<Ghost<F>> {
    let mut out: Vec<Ghost<F>> = (0..d)
        .map(|i| {
            let mut e = vec![0; d];
            e[i] = 1;
            Ghost::poly(Poly::monomial(e, F::one()))
        })
        .collect();
    out.extend((0..m).map(|a| Ghost::pi(d, a)));
    out.extend((0..m_prime).map(|a| Ghost::chi(d, a)));
    out
}

/// Σ_{r+s=n} δ_r δ_s evaluated on g, with δ_r = 0 beyond the list.
pub fn tower_sum<F: Field>(deltas: &[AntiDerivation<F>], n: usize, g: &Ghost<F>) -> Ghost<F> {
    let mut out = Ghost::zero();
    for r in 0..=n {
        let s = n - r;
        if r < deltas.len() && s < deltas.len() {
            out = out.add(&deltas[r].apply(&deltas[s].apply(g)));
        }
    }
    out
}

/// δ(ab) = δ(a)b + (−1)^{|a|} a δ(b) on all products of up to three generators.
pub fn leibniz_holds<F: Field>(delta: &AntiDerivation<F>) -> bool {
    let (d, m, mp) = (delta.on_x.len(), delta.on_pi.len(), delta.on_chi.len());
    let gens = generators::<F>(d, m, mp);
    let parity = |i: usize| i >= d;
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            let ab = a.mul(b);
            let sa = if parity(i) { -F::one() } else { F::one() };
            let rhs = delta.apply(a).mul(b).add(&a.mul(&delta.apply(b)).scale(&sa));
            if delta.apply(&ab) != rhs {
                return false;
            }
            for c in &gens {
                let lhs = delta.apply(&ab.mul(c));
                let sab = if parity(i) != parity(j) { -F::one() } else { F::one() };
                if lhs != delta.apply(&ab).mul(c).add(&ab.mul(&delta.apply(c)).scale(&sab)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Basis of one weight space restricted to ghost numbers accepted by `keep(|P|, |C|)`:
/// blocks (P, C, monomials) in mask order, monomials inside.
#[derive(Clone, Debug)]
pub struct GhostBasis {
    blocks: Vec<(u32, u32, Monomials, usize)>,
    dim: usize,
}

impl GhostBasis {
    pub fn new(w: &Weights, weight: i64, keep: impl Fn(u32, u32) -> bool) -> Self {
        let (m, mp) = (w.pi.len(), w.chi.len());
        let mut blocks = Vec::new();
        let mut dim = 0;
        for p in 0..(1u32 << m) {
            for c in 0..(1u32 << mp) {
                if !keep(p.count_ones(), c.count_ones()) {
                    continue;
                }
                let g = weight - w.of_term(p, c, 0);
                if g < 0 {
                    continue;
                }
                let mons = Monomials::new(w.d, g as usize);
                let len = mons.len();
                blocks.push((p, c, mons, dim));
                dim += len;
            }
        }
        GhostBasis { blocks, dim }
    }

    /// Total ghost degree |C| − |P| = n.
    pub fn total(w: &Weights, weight: i64, n: i64) -> Self {
        Self::new(w, weight, |p, c| c as i64 - p as i64 == n)
    }

    /// Bidegree (i, j) = (−|P|, |C|).
    pub fn bidegree(w: &Weights, weight: i64, i: i64, j: i64) -> Self {
        Self::new(w, weight, |p, c| -(p as i64) == i && c as i64 == j)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn element<F: Field>(&self, idx: usize) -> Ghost<F> {
        let (p, c, mons, off) = self.blocks.iter().rev().find(|b| b.3 <= idx).expect("index in range");
        Ghost::basis(*p, *c, Poly::monomial(mons.get(idx - off).to_vec(), F::one()))
    }

    pub fn coordinates<F: Field>(&self, g: &Ghost<F>) -> Result<SparseVec<F>> {
        let mut pairs = Vec::new();
        for ((p, c), f) in g.terms() {
            let (_, _, mons, off) = self
                .blocks
                .iter()
                .find(|b| b.0 == *p && b.1 == *c)
                .ok_or_else(|| NcxError::Invalid("element lies outside the basis".into()))?;
            for (m, x) in f.terms() {
                let k = mons.index_of(m).ok_or_else(|| NcxError::Invalid("element lies outside the basis".into()))?;
                pairs.push((off + k, x.clone()));
            }
        }
        Ok(SparseVec::from_pairs(pairs))
    }

    /// Matrix of `delta` from this basis into `target`.
    pub fn matrix<F: Field>(&self, delta: impl Fn(&Ghost<F>) -> Ghost<F>, target: &GhostBasis) -> Result<ExactMatrix<F>> {
        let cols = (0..self.dim).map(|j| target.coordinates(&delta(&self.element(j)))).collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix::from_columns(target.dim, &cols))
    }
}
