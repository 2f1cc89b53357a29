use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible cyclotomic orders {0} and {1} (promotion disabled)")]
    IncompatibleOrder(u32, u32),
    #[error("not a rational number: {0}")]
    NotRational(String),
}

/// A commutative field with exact, canonical arithmetic.
///
/// Every coefficient domain in the crate implements this: [`Rational`], the
/// cyclotomic scalars [`crate::scalars::Cyc`], and rational functions over
/// another field, which is what makes towers like `Q(q2)(q1)` work.
pub trait Field:
    Sized
    + Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self, ArithError>;
    fn from_rational(r: &Rational) -> Self;
    /// The value as a rational number, if it is one.
    fn to_rational(&self) -> Option<Rational>;

    fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|r| One::is_one(&r))
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&int(n))
    }

    fn div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self.clone() * &other.inv()?)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Result<Self, ArithError> {
        if Zero::is_zero(self) {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

/// Format `coeff * body` as a signed term; `body` empty means a bare constant.
/// Returns (is_negative, text-without-leading-sign).
pub(crate) fn signed_term<F: Field>(coeff: &F, body: &str) -> (bool, String) {
    if let Some(r) = coeff.to_rational() {
        let neg = r.is_negative();
        let a = r.abs();
        let s = if body.is_empty() {
            a.to_string()
        } else if One::is_one(&a) {
            body.to_string()
        } else {
            format!("{a}*{body}")
        };
        (neg, s)
    } else {
        let c = coeff.to_string();
        if body.is_empty() {
            (false, c)
        } else {
            (false, format!("({c})*{body}"))
        }
    }
}

/// Join signed terms as `a + b - c`; empty list prints `0`.
pub(crate) fn join_terms(terms: &[(bool, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, t)) in terms.iter().enumerate() {
        match (i, neg) {
            (0, true) => {
                out.push('-');
                out.push_str(t);
            }
            (0, false) => out.push_str(t),
            (_, true) => {
                out.push_str(" - ");
                out.push_str(t);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
    }
    out
}
