use serde::{Deserialize, Serialize};

use super::Field;
use crate::error::{NcxError, Result};

/// [n]_q = 1 + q + ... + q^{n-1}, with [0]_q = 0.
pub fn q_int<F: Field>(n: usize, q: &F) -> F {
    let mut acc = F::zero();
    let mut p = F::one();
    for _ in 0..n {
        acc += &p;
        p *= q;
    }
    acc
}

/// [n]_q! = [1]_q [2]_q ... [n]_q.
pub fn q_factorial<F: Field>(n: usize, q: &F) -> F {
    (1..=n).fold(F::one(), |acc, k| acc * &q_int(k, q))
}

/// q-binomial coefficient from the recursion
/// [n+1, m+1] = [n, m] + q^{m+1} [n, m+1] with [n, 0] = [n, n] = 1.
pub fn q_binomial<F: Field>(n: usize, m: usize, q: &F) -> Result<F> {
    if m > n {
        return Err(NcxError::Invalid(format!("q_binomial needs m <= n, got n={n}, m={m}")));
    }
    Ok(q_binomial_row(n, q).swap_remove(m))
}

/// The whole row [n, 0], ..., [n, n].
pub fn q_binomial_row<F: Field>(n: usize, q: &F) -> Vec<F> {
    let qp: Vec<F> = (0..=n).map(|k| q.pow(k as u64)).collect();
    let mut row = vec![F::one()];
    for k in 0..n {
        // row holds [k, *]; build [k+1, *]
        let mut next = Vec::with_capacity(k + 2);
        next.push(F::one());
        for m in 0..k {
            next.push(row[m].clone() + &(qp[m + 1].clone() * &row[m + 1]));
        }
        next.push(F::one());
        row = next;
    }
    row
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Assumption {
    A1,
    A0,
    None,
}

impl Assumption {
    pub fn holds_a0(self) -> bool {
        matches!(self, Assumption::A0 | Assumption::A1)
    }
}

pub fn check_assumptions<F: Field>(q: &F, n: usize) -> Assumption {
    assert!(n >= 2, "N must be at least 2");
    if !q_int(n, q).is_zero() {
        return Assumption::None;
    }
    if (1..n).all(|k| !q_int(k, q).is_zero()) {
        Assumption::A1
    } else {
        Assumption::A0
    }
}

#[derive(Debug, Clone)]
pub struct QContext<F: Field> {
    pub q: F,
    pub n: usize,
    pub assumption: Assumption,
}

impl<F: Field> QContext<F> {
    pub fn new(q: F, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(NcxError::Invalid(format!("N must be at least 2, got {n}")));
        }
        let assumption = check_assumptions(&q, n);
        Ok(QContext { q, n, assumption })
    }

    pub fn require_a1(&self) -> Result<()> {
        if self.assumption != Assumption::A1 {
            return Err(NcxError::Assumption(format!("(q, N={}) does not satisfy A1", self.n)));
        }
        Ok(())
    }
}
