use std::collections::{BTreeMap, HashMap};

use serde_json::Value;

use crate::error::{NcxError, Result};
use crate::scalars::Field;

/// Exponent vectors of total degree w in d variables, in lexicographically decreasing order.
#[derive(Clone, Debug)]
pub struct Monomials {
    d: usize,
    w: usize,
    list: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl Monomials {
    pub fn new(d: usize, w: usize) -> Self {
        fn rec(d: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() + 1 == d {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for e in (0..=left).rev() {
                cur.push(e);
                rec(d, left - e, cur, out);
                cur.pop();
            }
        }
        let mut list = Vec::new();
        if d == 0 {
            if w == 0 {
                list.push(Vec::new());
            }
        } else {
            rec(d, w as u32, &mut Vec::new(), &mut list);
        }
        let index = list.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Monomials { d, w, list, index }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.w
    }

    pub fn vars(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize) -> &[u32] {
        &self.list[i]
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.list.iter()
    }
}

/// Number of monomials of degree w in d variables.
pub fn monomial_count(d: usize, w: usize) -> usize {
    if d == 0 {
        return usize::from(w == 0);
    }
    let (n, k) = (w + d - 1, d - 1);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Polynomial in D variables: exponent vector → coefficient.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Poly<F> {
    terms: BTreeMap<Vec<u32>, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn monomial(exps: Vec<u32>, c: F) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c);
        p
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: F) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_insert_with(F::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &F)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, a: &F) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * a);
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m[var] > 0 {
                let mut m2 = m.clone();
                m2[var] -= 1;
                out.add_term(m2, c.clone() * &F::from_i64(m[var] as i64));
            }
        }
        out
    }

    /// Homogeneous parts by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<usize, Poly<F>> {
        let mut out: BTreeMap<usize, Poly<F>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let deg = m.iter().sum::<u32>() as usize;
            out.entry(deg).or_insert_with(Self::zero).add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn coeff(&self, m: &[u32]) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.iter().zip(mb).map(|(x, y)| x + y).collect(), ca.clone() * cb);
            }
        }
        out
    }

    /// The common degree of all terms; None for the zero polynomial or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>() as usize);
        let first = degs.next()?;
        degs.all(|g| g == first).then_some(first)
    }

    /// `{"e1,e2,…": "c"}`
    pub fn to_json(&self) -> Value {
        let map: serde_json::Map<String, Value> = self
            .terms
            .iter()
            .map(|(m, c)| (m.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","), Value::String(c.to_string())))
            .collect();
        Value::Object(map)
    }

    pub fn from_json(v: &Value, d: usize) -> Result<Self> {
        let bad = |m: String| NcxError::Parse(format!("polynomial JSON: {m}"));
        let obj = v.as_object().ok_or_else(|| bad("expected an object of exponent keys".into()))?;
        let mut p = Self::zero();
        for (k, c) in obj {
            let exps: Vec<u32> = if k.trim().is_empty() {
                Vec::new()
            } else {
                k.split(',').map(|e| e.trim().parse::<u32>().map_err(|_| bad(format!("bad exponent in {k:?}")))).collect::<Result<_>>()?
            };
            if exps.len() != d {
                return Err(bad(format!("key {k:?} must have {d} exponents")));
            }
            p.add_term(exps, crate::cosimplicial::parse_scalar(c)?);
        }
        Ok(p)
    }
}
