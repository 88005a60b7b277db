//! Exact scalar fields (ℚ and ℚ(ζ_M)) and q-combinatorics.

mod cyclotomic;
mod qnum;
mod rational;

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use cyclotomic::{cyclotomic_polynomial, totient, Cyclotomic, MAX_ORDER};
pub use qnum::{check_assumptions, q_binomial, q_binomial_row, q_factorial, q_int, Assumption, QContext};
pub use rational::Rational;

use crate::error::NcxError;

/// Exact field arithmetic used by every algorithm in the crate.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + FromStr<Err = NcxError>
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// Multiplicative inverse; `None` exactly for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;
    /// Complex conjugation (identity on ℚ).
    fn conj(&self) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_int(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::new(num, den))
    }

    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= &(a.clone() * b);
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            Some(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    fn div(&self, other: &Self) -> Option<Self> {
        Some(self.clone() * &other.inv()?)
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        Rational::sub_mul(self, a, b)
    }
}

impl Field for Cyclotomic {
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
    fn from_rational(r: &Rational) -> Self {
        Cyclotomic::from_rational(r.clone())
    }
    fn conj(&self) -> Self {
        self.conjugate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Rationals,
    Cyclotomic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub kind: FieldKind,
    pub order: u32,
    /// Coefficients of Φ_M, constant term first.
    pub minimal_polynomial: Vec<i64>,
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor { kind: FieldKind::Rationals, order: 1, minimal_polynomial: vec![-1, 1] }
    }

    pub fn degree(&self) -> usize {
        self.minimal_polynomial.len() - 1
    }

    /// Primitive M-th root of unity of this field as a scalar.
    pub fn zeta(&self) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.order, 1)
    }

    pub fn name(&self) -> String {
        match self.kind {
            FieldKind::Rationals => "Q".to_string(),
            FieldKind::Cyclotomic => format!("Q(zeta_{})", self.order),
        }
    }

    pub fn parse_name(s: &str) -> Result<Self, NcxError> {
        let s = s.trim();
        if s == "Q" || s == "rationals" {
            return Ok(Self::rationals());
        }
        let m = s
            .strip_prefix("Q(zeta_")
            .and_then(|t| t.strip_suffix(')'))
            .and_then(|t| t.parse::<u32>().ok())
            .filter(|&m| m >= 1 && m <= MAX_ORDER)
            .ok_or_else(|| NcxError::Parse(format!("unknown field {s:?}")))?;
        Ok(make_cyclotomic(m))
    }
}

pub fn make_cyclotomic(m: u32) -> FieldDescriptor {
    FieldDescriptor { kind: FieldKind::Cyclotomic, order: m, minimal_polynomial: cyclotomic_polynomial(m) }
}
