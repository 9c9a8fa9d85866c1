//! Integer Laurent polynomials in one indeterminate `q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::ring::{int_from_json, int_to_json, CoefficientRing, Integer, Rational};

/// A finite sum `Σ c_e q^e` with integer `c_e` and `e ∈ ℤ`. Zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<i64, BigInt>,
}

pub type QPolynomial = Laurent;

impl Laurent {
    pub fn monomial(coef: impl Into<BigInt>, exp: i64) -> Self {
        let coef = coef.into();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        Laurent { terms }
    }

    /// The indeterminate itself.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut out = Laurent::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exp: i64, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `q^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    /// Substitutes `q ↦ q^k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().is_some_and(|c| c.abs().is_one())
    }

    /// Evaluates at `q = 1`.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Evaluates at a rational `q`; `None` at `q = 0` when a negative exponent is present.
    pub fn eval(&self, q: &Rational) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let p = q.pow_i(*e)?;
            acc += p * Rational::from_integer(c.clone());
        }
        Some(acc)
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.min_exp().is_some_and(|e| e < 0)
    }
}

impl Zero for Laurent {
    fn zero() -> Self {
        Laurent::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Laurent {
    fn one() -> Self {
        Laurent::monomial(1, 0)
    }
}

impl Add for Laurent {
    type Output = Laurent;

    fn add(mut self, rhs: Laurent) -> Laurent {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<'a> Add<&'a Laurent> for &'a Laurent {
    type Output = Laurent;

    fn add(self, rhs: &Laurent) -> Laurent {
        self.clone() + rhs.clone()
    }
}

impl Sub for Laurent {
    type Output = Laurent;

    fn sub(mut self, rhs: Laurent) -> Laurent {
        for (e, c) in rhs.terms {
            self.add_term(e, -c);
        }
        self
    }
}

impl Neg for Laurent {
    type Output = Laurent;

    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for Laurent {
    type Output = Laurent;

    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

impl<'a> Mul<&'a Laurent> for &'a Laurent {
    type Output = Laurent;

    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl CoefficientRing for Laurent {
    fn from_integer(n: &Integer) -> Self {
        Laurent::monomial(n.clone(), 0)
    }

    fn try_from_rational(r: &Rational) -> Option<Self> {
        r.is_integer().then(|| Laurent::monomial(r.to_integer(), 0))
    }

    fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Laurent::monomial(c.clone(), -e))
    }

    fn parse_exact(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}

impl fmt::Display for Laurent {
    /// Ascending exponents, e.g. `2*q^-1+1` or `-q+3*q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let term = if *e == 0 {
                c.to_string()
            } else {
                let power = if *e == 1 { "q".to_string() } else { format!("q^{e}") };
                if c.is_one() {
                    power
                } else if (-c).is_one() {
                    format!("-{power}")
                } else {
                    format!("{c}*{power}")
                }
            };
            if idx > 0 && !term.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed Laurent polynomial: {0:?}")]
pub struct ParseLaurentError(pub String);

impl std::str::FromStr for Laurent {
    type Err = ParseLaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseLaurentError(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        // split into signed terms; a sign directly after '^' belongs to the exponent
        let mut pieces = Vec::new();
        let mut current = String::new();
        let mut prev = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !current.is_empty() && prev != Some('^') {
                pieces.push(std::mem::take(&mut current));
            }
            current.push(ch);
            prev = Some(ch);
        }
        pieces.push(current);

        let mut out = Laurent::zero();
        for piece in pieces {
            let (negative, body) = match piece.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            let (coef, power) = match body.split_once('*') {
                Some((c, p)) => (c.parse::<BigInt>().map_err(|_| err())?, Some(p)),
                None if body.starts_with('q') => (BigInt::one(), Some(body)),
                None => (body.parse::<BigInt>().map_err(|_| err())?, None),
            };
            let exp = match power {
                None => 0,
                Some("q") => 1,
                Some(p) => p
                    .strip_prefix("q^")
                    .ok_or_else(err)?
                    .parse::<i64>()
                    .map_err(|_| err())?,
            };
            out.add_term(exp, if negative { -coef } else { coef });
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: i64,
    /// A JSON number when it fits in `i64`, otherwise a decimal string.
    coef: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for Laurent {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        LaurentRepr {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr { exp: *e, coef: int_to_json(c) })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Laurent {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = LaurentRepr::deserialize(deserializer)?;
        let mut out = Laurent::zero();
        for t in repr.terms {
            let c = int_from_json(&t.coef)
                .ok_or_else(|| serde::de::Error::custom("coefficient must be an integer"))?;
            out.add_term(t.exp, c);
        }
        Ok(out)
    }
}
