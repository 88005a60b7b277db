//! Seeded random bounded N-complexes built from graded Jordan chains.

use rand::Rng;

use super::{Boundary, GradedNComplex, GradedSes};
use crate::error::Result;
use crate::linalg::{ExactMatrix, SparseVec, Subspace};
use crate::scalars::Field;

/// Chains (start degree, length ≤ N) with d moving one step up each chain.
pub fn complex_from_chains<F: Field>(n: usize, lo: i64, hi: i64, chains: &[(i64, usize)]) -> GradedNComplex<F> {
    let width = (hi - lo + 1) as usize;
    let mut dims = vec![0usize; width];
    // position of each chain element inside its degree
    let mut slots: Vec<Vec<usize>> = Vec::new();
    for &(start, len) in chains {
        let mut s = Vec::new();
        for k in 0..len {
            let i = (start - lo) as usize + k;
            s.push(dims[i]);
            dims[i] += 1;
        }
        slots.push(s);
    }
    let mut trips: Vec<Vec<(usize, usize, F)>> = vec![Vec::new(); width - 1];
    for (c, &(start, len)) in chains.iter().enumerate() {
        for k in 0..len.saturating_sub(1) {
            let i = (start - lo) as usize + k;
            trips[i].push((slots[c][k + 1], slots[c][k], F::one()));
        }
    }
    let maps = trips
        .into_iter()
        .enumerate()
        .map(|(i, t)| ExactMatrix::from_triplets(dims[i + 1], dims[i], t))
        .collect();
    GradedNComplex::with_boundaries(n, lo, dims, maps, Boundary::Zero, Boundary::Zero).expect("chains have length ≤ N")
}

pub fn random_chains<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64, count: usize) -> Vec<(i64, usize)> {
    (0..count)
        .map(|_| {
            let start = rng.gen_range(lo..=hi);
            let len = rng.gen_range(1..=n).min((hi - start + 1) as usize);
            (start, len)
        })
        .collect()
}

/// Per-degree random change of basis by elementary unimodular operations.
pub fn scramble<F: Field, R: Rng>(rng: &mut R, c: &GradedNComplex<F>, ops: usize) -> GradedNComplex<F> {
    let degs: Vec<i64> = c.degrees().collect();
    let mut maps: Vec<Vec<Vec<F>>> = degs[..degs.len() - 1].iter().map(|&d| c.map(d).unwrap().to_dense()).collect();
    let dims: Vec<usize> = degs.iter().map(|&d| c.component_dim(d).unwrap()).collect();
    for _ in 0..ops {
        let k = rng.gen_range(0..degs.len());
        if dims[k] < 2 {
            continue;
        }
        let i = rng.gen_range(0..dims[k]);
        let mut j = rng.gen_range(0..dims[k] - 1);
        if j >= i {
            j += 1;
        }
        let cf = F::from_i64(if rng.gen_bool(0.5) { 1 } else { -1 });
        // basis change E = I + c e_ij in degree k: incoming map gets E·, outgoing gets ·E⁻¹
        if k > 0 {
            let m = &mut maps[k - 1];
            let rj = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(rj.iter()) {
                *x += &(cf.clone() * y);
            }
        }
        if k < maps.len() {
            for row in maps[k].iter_mut() {
                let t = row[i].clone();
                row[j].sub_mul(&cf, &t);
            }
        }
    }
    let maps = maps
        .iter()
        .enumerate()
        .map(|(k, m)| {
            if dims[k] == 0 || dims[k + 1] == 0 {
                ExactMatrix::zeros(dims[k + 1], dims[k])
            } else {
                ExactMatrix::from_dense(m)
            }
        })
        .collect();
    GradedNComplex::with_boundaries(c.n(), c.min_degree(), dims, maps, Boundary::Zero, Boundary::Zero)
        .expect("basis change preserves d^N = 0")
}

/// Subcomplex generated by homogeneous vectors (degree, vector) and the quotient.
pub fn graded_ses_from_generators<F: Field>(f: GradedNComplex<F>, gens: &[(i64, SparseVec<F>)]) -> Result<GradedSes<F>> {
    let n = f.n();
    let degs: Vec<i64> = f.degrees().collect();
    let mut span: Vec<Vec<SparseVec<F>>> = vec![Vec::new(); degs.len()];
    for (deg, g) in gens {
        let mut v = g.clone();
        let mut d = *deg;
        for _ in 0..n {
            if v.is_zero() || !f.degrees().contains(&d) {
                break;
            }
            span[(d - f.min_degree()) as usize].push(v.clone());
            let Some(m) = f.map(d) else { break };
            v = m.apply(&v);
            d += 1;
        }
    }
    let subs: Vec<Subspace<F>> =
        degs.iter().enumerate().map(|(i, &d)| Subspace::span(f.component_dim(d).unwrap(), span[i].clone())).collect();
    let mut phi = Vec::new();
    let mut psi = Vec::new();
    let mut lifts = Vec::new();
    for (i, &d) in degs.iter().enumerate() {
        let dim = f.component_dim(d).unwrap();
        let basis = subs[i].basis().to_vec();
        phi.push(ExactMatrix::from_columns(dim, &basis));
        let pivots: Vec<usize> = basis.iter().map(|b| b.leading().unwrap()).collect();
        let comp: Vec<usize> = (0..dim).filter(|k| !pivots.contains(k)).collect();
        let mut cols = vec![SparseVec::new(); dim];
        for (pos, &k) in comp.iter().enumerate() {
            cols[k] = SparseVec::unit(pos);
        }
        for (b, &p) in basis.iter().zip(&pivots) {
            cols[p] = b.remap(|k| comp.binary_search(&k).ok()).neg();
        }
        psi.push(ExactMatrix::from_columns(comp.len(), &cols));
        lifts.push(ExactMatrix::from_columns(dim, &comp.iter().map(|&k| SparseVec::unit(k)).collect::<Vec<_>>()));
    }
    let mut e_maps = Vec::new();
    let mut g_maps = Vec::new();
    for (i, &d) in degs[..degs.len() - 1].iter().enumerate() {
        let m = f.map(d).unwrap();
        let cols: Vec<SparseVec<F>> = subs[i]
            .basis()
            .iter()
            .map(|b| subs[i + 1].coordinates(&m.apply(b)).expect("span is d-stable"))
            .collect();
        e_maps.push(ExactMatrix::from_columns(subs[i + 1].dim(), &cols));
        g_maps.push(psi[i + 1].mul(&m).mul(&lifts[i]));
    }
    let e_dims = subs.iter().map(|s| s.dim()).collect();
    let g_dims = psi.iter().map(|p| p.rows()).collect();
    let lo = f.min_degree();
    let e = GradedNComplex::with_boundaries(n, lo, e_dims, e_maps, Boundary::Zero, Boundary::Zero)?;
    let g = GradedNComplex::with_boundaries(n, lo, g_dims, g_maps, Boundary::Zero, Boundary::Zero)?;
    GradedSes::new(e, f, g, phi, psi)
}

pub fn random_graded_ses<F: Field, R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64, chains: usize) -> GradedSes<F> {
    let base = complex_from_chains::<F>(n, lo, hi, &random_chains(rng, n, lo, hi, chains));
    let f = scramble(rng, &base, 40);
    let k = rng.gen_range(1..=3);
    let mut gens = Vec::new();
    for _ in 0..k {
        let d = rng.gen_range(lo..=hi);
        let dim = f.component_dim(d).unwrap();
        if dim == 0 {
            continue;
        }
        let pairs = (0..2).map(|_| (rng.gen_range(0..dim), F::from_i64(rng.gen_range(-2..=2)))).collect();
        gens.push((d, SparseVec::from_pairs(pairs)));
    }
    graded_ses_from_generators(f, &gens).expect("subcomplex construction is exact")
}
