use crate::error::{NcxError, Result};
use crate::graded::{Boundary, GradedNComplex};
use crate::linalg::ExactMatrix;
use crate::scalars::Field;

use super::{AlgebraData, Bimodule, CosimplicialData, Representation};

/// Digits of `idx` in base `base`, most significant first.
pub(crate) fn decode(mut idx: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % base;
        idx /= base;
    }
    out
}

pub(crate) fn encode(digits: &[usize], base: usize) -> usize {
    digits.iter().fold(0, |acc, d| acc * base + d)
}

/// Every level k, every coface and codegeneracy the identity.
pub fn constant_module<F: Field>(n_max: usize) -> CosimplicialData<F> {
    let id = ExactMatrix::<F>::identity(1);
    let cof = (0..n_max).map(|n| vec![id.clone(); n + 2]).collect();
    let codeg = (0..n_max).map(|n| vec![id.clone(); n + 1]).collect();
    CosimplicialData::new(vec![1; n_max + 1], cof, Some(codeg)).unwrap()
}

/// M-valued Hochschild cochains of A on levels 0..=n_max. A cochain of degree n is
/// stored by its values ω(e_{x_1}, …, e_{x_n}) ∈ M at index (x_1…x_n) · dim M + k.
pub fn hochschild<F: Field>(a: &AlgebraData<F>, m: &Bimodule<F>, n_max: usize) -> Result<CosimplicialData<F>> {
    if a.is_lie() {
        return Err(NcxError::Invalid("Hochschild cochains need an associative algebra".into()));
    }
    let unit = a.unit().ok_or_else(|| NcxError::Invalid("algebra has no unit".into()))?.clone();
    let (da, dm) = (a.dim(), m.dim());
    let dims: Vec<usize> = (0..=n_max).map(|n| dm * da.pow(n as u32)).collect();
    let mut cofaces = Vec::with_capacity(n_max);
    let mut codegs = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let mut level = Vec::with_capacity(n + 2);
        for i in 0..=n + 1 {
            let mut trip = Vec::new();
            for row_t in 0..da.pow(n as u32 + 1) {
                let y = decode(row_t, da, n + 1);
                for k in 0..dm {
                    let row = row_t * dm + k;
                    if i == 0 {
                        let src = encode(&y[1..], da);
                        for (l, c) in m.left(y[0]).row(k).iter() {
                            trip.push((row, src * dm + l, c.clone()));
                        }
                    } else if i == n + 1 {
                        let src = encode(&y[..n], da);
                        for (l, c) in m.right(y[n]).row(k).iter() {
                            trip.push((row, src * dm + l, c.clone()));
                        }
                    } else {
                        let mut x: Vec<usize> = y[..i - 1].to_vec();
                        x.push(0);
                        x.extend_from_slice(&y[i + 1..]);
                        for (t, c) in a.basis_product(y[i - 1], y[i]).iter() {
                            x[i - 1] = *t;
                            trip.push((row, encode(&x, da) * dm + k, c.clone()));
                        }
                    }
                }
            }
            level.push(ExactMatrix::from_triplets(dims[n + 1], dims[n], trip));
        }
        cofaces.push(level);
        // s_i: level n+1 → n, inserts the unit after the first i arguments
        let mut level = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut trip = Vec::new();
            for row_t in 0..da.pow(n as u32) {
                let y = decode(row_t, da, n);
                for k in 0..dm {
                    for (u, c) in unit.iter() {
                        let mut x = y[..i].to_vec();
                        x.push(*u);
                        x.extend_from_slice(&y[i..]);
                        trip.push((row_t * dm + k, encode(&x, da) * dm + k, c.clone()));
                    }
                }
            }
            level.push(ExactMatrix::from_triplets(dims[n], dims[n + 1], trip));
        }
        codegs.push(level);
    }
    CosimplicialData::new(dims, cofaces, Some(codegs))
}

/// Strictly increasing index tuples of length n from 0..d, in lexicographic order.
pub(crate) fn increasing_tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(d, n, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Chevalley–Eilenberg complex on levels 0..=p_max; a cochain of degree n is stored by
/// its values on e_{i_0} ∧ … ∧ e_{i_{n-1}}, i_0 < … < i_{n-1}.
pub fn chevalley_eilenberg<F: Field>(
    g: &AlgebraData<F>,
    r: &Representation<F>,
    p_max: usize,
) -> Result<GradedNComplex<F>> {
    if !g.is_lie() {
        return Err(NcxError::Invalid("Chevalley–Eilenberg needs a Lie algebra".into()));
    }
    let (dg, dr) = (g.dim(), r.dim());
    let tuples: Vec<Vec<Vec<usize>>> = (0..=p_max + 1).map(|n| increasing_tuples(dg, n)).collect();
    let index = |t: &[usize]| tuples[t.len()].binary_search_by(|x| x.as_slice().cmp(t)).unwrap();
    let dims: Vec<usize> = (0..=p_max).map(|n| tuples[n].len() * dr).collect();
    let mut maps = Vec::with_capacity(p_max);
    for n in 0..p_max {
        let mut trip = Vec::new();
        for (ti, x) in tuples[n + 1].iter().enumerate() {
            for k in 0..=n {
                let rest: Vec<usize> = x.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, v)| *v).collect();
                let col0 = index(&rest) * dr;
                let sign = if k % 2 == 0 { F::one() } else { -F::one() };
                for a in 0..dr {
                    for (b, c) in r.action(x[k]).row(a).iter() {
                        trip.push((ti * dr + a, col0 + b, sign.clone() * c));
                    }
                }
            }
            for s in 1..=n {
                for rr in 0..s {
                    let rest: Vec<usize> =
                        x.iter().enumerate().filter(|(j, _)| *j != rr && *j != s).map(|(_, v)| *v).collect();
                    let sign = if (rr + s) % 2 == 0 { F::one() } else { -F::one() };
                    for (t, c) in g.basis_product(x[rr], x[s]).iter() {
                        if rest.contains(t) {
                            continue;
                        }
                        // sort t into place; each element passed flips the sign
                        let pos = rest.iter().filter(|v| *v < t).count();
                        let mut args = rest.clone();
                        args.insert(pos, *t);
                        let coef = if pos % 2 == 0 { sign.clone() * c } else { -(sign.clone() * c) };
                        let col0 = index(&args) * dr;
                        for a in 0..dr {
                            trip.push((ti * dr + a, col0 + a, coef.clone()));
                        }
                    }
                }
            }
        }
        maps.push(ExactMatrix::from_triplets(dims[n + 1], dims[n], trip));
    }
    let above = if p_max >= dg { Boundary::Zero } else { Boundary::Truncated };
    GradedNComplex::with_boundaries(2, 0, dims, maps, Boundary::Zero, above)
}
