//! Exact coefficient rings shared by series, polynomials and matrices.
//!
//! Everything in this crate is generic over [`CoefficientRing`], which is
//! implemented for arbitrary-precision integers, rationals, and integer
//! Laurent polynomials in `q` (see [`crate::laurent`]).

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// A commutative ring with exact arithmetic.
pub trait CoefficientRing:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_integer(n: &Integer) -> Self;

    /// Embeds a rational scalar, or `None` when the ring does not contain it.
    fn try_from_rational(r: &Rational) -> Option<Self>;

    /// Inverse of a unit; `None` for non-units.
    fn unit_inverse(&self) -> Option<Self>;

    /// Parses the exact string form produced by `Display`.
    fn parse_exact(s: &str) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(&Integer::from(n))
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Integer power; negative exponents need a unit.
    fn pow_i(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow_u(e as u64))
        } else {
            self.unit_inverse().map(|inv| inv.pow_u(e.unsigned_abs()))
        }
    }
}

impl CoefficientRing for BigInt {
    fn from_integer(n: &Integer) -> Self {
        n.clone()
    }

    fn try_from_rational(r: &Rational) -> Option<Self> {
        r.is_integer().then(|| r.to_integer())
    }

    fn unit_inverse(&self) -> Option<Self> {
        (self.abs().is_one()).then(|| self.clone())
    }

    fn parse_exact(s: &str) -> Option<Self> {
        BigInt::from_str(s.trim()).ok()
    }
}

impl CoefficientRing for BigRational {
    fn from_integer(n: &Integer) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn try_from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }

    fn unit_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn parse_exact(s: &str) -> Option<Self> {
        parse_rational(s)
    }
}

/// Parses `"p/q"`, `"p"`, or a terminating decimal such as `"0.5"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).ok()?;
        let den = BigInt::from_str(den.trim()).ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.starts_with('-');
        let int_val = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).ok()?.abs()
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_val = BigInt::from_str(frac).ok()?;
        let value = BigRational::new(int_val * &scale + frac_val, scale);
        return Some(if negative { -value } else { value });
    }
    BigInt::from_str(s).ok().map(BigRational::from_integer)
}

pub fn rational(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Integer {
    BigInt::from(n)
}

pub fn factorial(n: u64) -> Integer {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient `C(n, k)` for nonnegative `n`.
pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i);
        acc = acc / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial `C(x, k) = x(x-1)...(x-k+1)/k!` for a rational `x`.
pub fn binomial_rational(x: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * (x - Rational::from_integer(BigInt::from(i)));
        acc = acc / Rational::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// Multiset coefficient `C(g + k - 1, k)` for any integer `g`, negative included.
pub fn multichoose(g: &Integer, k: u64) -> Integer {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= g + BigInt::from(i);
    }
    let (q, r) = acc.div_rem(&factorial(k));
    debug_assert!(r.is_zero());
    q
}

/// Exact rational power; `None` for `0^e` with `e < 0`.
pub fn rational_pow(base: &Rational, e: i64) -> Option<Rational> {
    base.pow_i(e)
}

/// A JSON number when the value fits in `i64`, otherwise a decimal string.
pub fn int_to_json(c: &Integer) -> serde_json::Value {
    match i64::try_from(c) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::String(c.to_string()),
    }
}

pub fn int_from_json(v: &serde_json::Value) -> Option<Integer> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}
