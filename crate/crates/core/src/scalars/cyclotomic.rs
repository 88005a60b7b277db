use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Zero};
use smallvec::{smallvec, SmallVec};

use super::rational::Rational;
use crate::error::NcxError;

pub const MAX_ORDER: u32 = 1024;

pub(crate) struct CycloData {
    pub phi: usize,
    /// Coefficients of Φ_M, constant term first, monic.
    pub poly: Vec<i64>,
}

static TABLE: [OnceLock<CycloData>; MAX_ORDER as usize + 1] = [const { OnceLock::new() }; MAX_ORDER as usize + 1];

/// Φ_M by dividing x^M - 1 by Φ_d for every proper divisor d of M.
fn compute_poly(m: u32) -> Vec<i64> {
    let mut num: Vec<i64> = vec![0; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let (q, r) = div_monic(&num, &data(d).poly);
            assert!(r.iter().all(|&c| c == 0), "Phi_{d} does not divide");
            num = q;
        }
    }
    num
}

/// Long division by a monic integer polynomial; returns (quotient, remainder).
pub(crate) fn div_monic(num: &[i64], den: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let dn = den.len() - 1;
    if num.len() <= dn {
        return (vec![0], num.to_vec());
    }
    let mut rem = num.to_vec();
    let mut quo = vec![0i64; num.len() - dn];
    for k in (dn..num.len()).rev() {
        let c = rem[k];
        if c != 0 {
            quo[k - dn] = c;
            for (j, &dj) in den.iter().enumerate() {
                rem[k - dn + j] -= c * dj;
            }
        }
    }
    rem.truncate(dn);
    (quo, rem)
}

pub(crate) fn data(m: u32) -> &'static CycloData {
    assert!(m >= 1 && m <= MAX_ORDER, "cyclotomic order {m} out of range");
    TABLE[m as usize].get_or_init(|| {
        let poly = compute_poly(m);
        CycloData { phi: poly.len() - 1, poly }
    })
}

pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    data(m).poly.clone()
}

pub fn totient(m: u32) -> usize {
    data(m).phi
}

type Coeffs = SmallVec<[Rational; 4]>;

/// Element of ℚ(ζ_M): a residue of degree < φ(M) with rational coefficients.
/// Rational values are always stored with order 1.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    c: Coeffs,
}

fn reduce(m: u32, mut v: Vec<Rational>) -> Coeffs {
    let d = data(m);
    let phi = d.phi;
    for k in (phi..v.len()).rev() {
        if v[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut v[k], Rational::zero());
        for j in 0..phi {
            let pj = d.poly[j];
            if pj != 0 {
                v[k - phi + j].sub_mul(&c, &Rational::from_int(pj));
            }
        }
    }
    v.resize(phi, Rational::zero());
    Coeffs::from_vec(v)
}

impl Cyclotomic {
    fn normalized(order: u32, c: Coeffs) -> Self {
        if order == 1 || c.iter().skip(1).all(|x| x.is_zero()) {
            let c0 = c.into_iter().next().unwrap_or_else(Rational::zero);
            return Cyclotomic { order: 1, c: smallvec![c0] };
        }
        Cyclotomic { order, c }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { order: 1, c: smallvec![r] }
    }

    /// Coefficients (constant first) of a polynomial in ζ_M, reduced mod Φ_M.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Self {
        Self::normalized(order, reduce(order, coeffs))
    }

    /// ζ_M^k.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = Rational::one();
        Self::from_coeffs(order, v)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.order == 1).then(|| &self.c[0])
    }

    /// Same value written over ℚ(ζ_L), L a multiple of the current order.
    fn lifted(&self, l: u32) -> Coeffs {
        if self.order == l {
            return self.c.clone();
        }
        let step = (l / self.order) as usize;
        let mut v = vec![Rational::zero(); (self.c.len() - 1) * step + 1];
        for (i, ci) in self.c.iter().enumerate() {
            v[i * step] = ci.clone();
        }
        reduce(l, v)
    }

    fn common(&self, other: &Self) -> (u32, Coeffs, Coeffs) {
        let l = self.order.lcm(&other.order);
        (l, self.lifted(l), other.lifted(l))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.order == 1 {
            return self.c[0].recip().map(Self::from_rational);
        }
        // solve (self * y) = 1 as a φ x φ linear system over ℚ
        let phi = self.c.len();
        let mut cols: Vec<Coeffs> = Vec::with_capacity(phi);
        for j in 0..phi {
            let mut v = vec![Rational::zero(); j + phi];
            for (i, ci) in self.c.iter().enumerate() {
                v[i + j] = ci.clone();
            }
            cols.push(reduce(self.order, v));
        }
        let mut a: Vec<Vec<Rational>> = (0..phi)
            .map(|r| {
                let mut row: Vec<Rational> = (0..phi).map(|j| cols[j][r].clone()).collect();
                row.push(if r == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..phi {
            let p = (col..phi).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            let inv = a[col][col].recip()?;
            for x in a[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..phi {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pivot = a[col].clone();
                    for (x, y) in a[r].iter_mut().zip(pivot.iter()) {
                        x.sub_mul(&f, y);
                    }
                }
            }
        }
        let sol: Vec<Rational> = a.into_iter().map(|row| row[phi].clone()).collect();
        Some(Self::normalized(self.order, Coeffs::from_vec(sol)))
    }

    /// Complex conjugation, ζ ↦ ζ⁻¹.
    pub fn conjugate(&self) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        let m = self.order as usize;
        let mut v = vec![Rational::zero(); m];
        for (i, ci) in self.c.iter().enumerate() {
            v[(m - i) % m] += ci;
        }
        Self::from_coeffs(self.order, v)
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.order == 1 && self.c[0].is_zero()
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.c == other.c;
        }
        if self.order == 1 || other.order == 1 {
            return false;
        }
        let (_, a, b) = self.common(other);
        a == b
    }
}
impl Eq for Cyclotomic {}

impl Add<&Cyclotomic> for Cyclotomic {
    type Output = Cyclotomic;
    fn add(mut self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.order == rhs.order {
            for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
                *a += b;
            }
            return Self::normalized(self.order, self.c);
        }
        let (l, mut a, b) = self.common(rhs);
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x += y;
        }
        Self::normalized(l, a)
    }
}

impl Sub<&Cyclotomic> for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs.clone())
    }
}

impl Mul<&Cyclotomic> for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(mut self, rhs: &Cyclotomic) -> Cyclotomic {
        if rhs.order == 1 {
            let r = &rhs.c[0];
            if r.is_zero() {
                return Self::zero();
            }
            for a in self.c.iter_mut() {
                *a *= r;
            }
            return self;
        }
        if self.order == 1 {
            let r = self.c[0].clone();
            return rhs.clone() * &Self::from_rational(r);
        }
        let (l, a, b) = if self.order == rhs.order {
            (self.order, self.c, rhs.c.clone())
        } else {
            self.common(rhs)
        };
        let mut v = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += &(x.clone() * y);
                }
            }
        }
        Self::normalized(l, reduce(l, v))
    }
}

impl Div<&Cyclotomic> for Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: &Cyclotomic) -> Cyclotomic {
        self * &rhs.inverse().expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic { $tr::<&Cyclotomic>::$m(self, &rhs) }
        }
        impl<'a> $tr<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic { $tr::<&Cyclotomic>::$m(self.clone(), rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(mut self) -> Cyclotomic {
        for a in self.c.iter_mut() {
            *a = -std::mem::replace(a, Rational::zero());
        }
        self
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = std::mem::replace(self, Cyclotomic::zero()) + rhs;
    }
}
impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        *self = std::mem::replace(self, Cyclotomic::zero()) - rhs;
    }
}
impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = std::mem::replace(self, Cyclotomic::zero()) * rhs;
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            return write!(f, "{}", self.c[0]);
        }
        write!(f, "[")?;
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "] mod Phi({})", self.order)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Cyclotomic {
    type Err = NcxError;
    fn from_str(s: &str) -> Result<Self, NcxError> {
        let s = s.trim();
        if !s.starts_with('[') {
            return Ok(Self::from_rational(s.parse()?));
        }
        let bad = || NcxError::Parse(format!("not a cyclotomic scalar: {s:?}"));
        let close = s.find(']').ok_or_else(bad)?;
        let body = &s[1..close];
        let tail = s[close + 1..].trim();
        let order: u32 = tail
            .strip_prefix("mod")
            .map(str::trim)
            .and_then(|t| t.strip_prefix("Phi("))
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?
            .trim()
            .parse()
            .map_err(|_| bad())?;
        if order == 0 || order > MAX_ORDER {
            return Err(bad());
        }
        let coeffs = body
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.parse::<Rational>())
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() > totient(order) {
            return Err(bad());
        }
        Ok(Self::from_coeffs(order, coeffs))
    }
}
