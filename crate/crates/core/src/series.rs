//! Truncated formal power series with exact coefficients.
//!
//! A [`Series`] carries its truncation order `M` explicitly and every
//! coefficient of degree `0..=M`. Binary operations refuse operands of
//! different order or flavor instead of silently re-truncating.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::moebius;
use crate::poly::Poly;
use crate::ring::{binomial, factorial, CoefficientRing, Integer, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// `Σ a_m t^m`
    Ogf,
    /// `Σ a_m t^m / m!`, storing the raw `a_m`.
    Egf,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("flavors differ: {left:?} vs {right:?}")]
    FlavorMismatch { left: Flavor, right: Flavor },
    #[error("constant term {value} is not a unit")]
    NonUnitConstant { value: String },
    #[error("constant term must be {expected}, found {found}")]
    InvalidConstantTerm { expected: &'static str, found: String },
    #[error("coefficient of degree {degree} is not an integer: {value}")]
    NonIntegral { degree: usize, value: String },
    #[error("g_{degree} = {value} is negative, so no Hopf algebra has this dimension sequence")]
    NotRealizable { degree: usize, value: Integer },
    #[error("malformed series: {0}")]
    Malformed(String),
}

impl SeriesError {
    pub fn name(&self) -> &'static str {
        match self {
            SeriesError::TruncationMismatch { .. } => "TruncationMismatch",
            SeriesError::FlavorMismatch { .. } => "FlavorMismatch",
            SeriesError::NonUnitConstant { .. } => "NonUnitConstant",
            SeriesError::InvalidConstantTerm { .. } => "InvalidConstantTerm",
            SeriesError::NonIntegral { .. } => "NonIntegral",
            SeriesError::NotRealizable { .. } => "NotRealizable",
            SeriesError::Malformed(_) => "Malformed",
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct Series<R> {
    coeffs: Vec<R>,
    flavor: Flavor,
}

impl<R: CoefficientRing> Series<R> {
    /// Builds a series of order `truncation`, padding with zeros or dropping
    /// coefficients beyond it.
    pub fn new(mut coeffs: Vec<R>, truncation: usize, flavor: Flavor) -> Self {
        coeffs.resize(truncation + 1, R::zero());
        Series { coeffs, flavor }
    }

    pub fn ogf(coeffs: Vec<R>, truncation: usize) -> Self {
        Self::new(coeffs, truncation, Flavor::Ogf)
    }

    pub fn egf(coeffs: Vec<R>, truncation: usize) -> Self {
        Self::new(coeffs, truncation, Flavor::Egf)
    }

    pub fn from_fn(truncation: usize, flavor: Flavor, f: impl Fn(usize) -> R) -> Self {
        Series { coeffs: (0..=truncation).map(f).collect(), flavor }
    }

    pub fn zero(truncation: usize, flavor: Flavor) -> Self {
        Self::new(Vec::new(), truncation, flavor)
    }

    pub fn one(truncation: usize, flavor: Flavor) -> Self {
        Self::new(vec![R::one()], truncation, flavor)
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &R {
        &self.coeffs[m]
    }

    pub fn map<S: CoefficientRing>(&self, f: impl Fn(&R) -> S) -> Series<S> {
        Series { coeffs: self.coeffs.iter().map(f).collect(), flavor: self.flavor }
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.truncation() != other.truncation() {
            return Err(SeriesError::TruncationMismatch {
                left: self.truncation(),
                right: other.truncation(),
            });
        }
        if self.flavor != other.flavor {
            return Err(SeriesError::FlavorMismatch { left: self.flavor, right: other.flavor });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a.clone() + b.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a.clone() - b.clone()))
    }

    fn zip(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        Series {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
            flavor: self.flavor,
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    /// Product of the modeled functions: Cauchy convolution for ordinary
    /// series, binomial convolution for exponential ones.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let m = self.truncation();
        let mut out = vec![R::zero(); m + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=m - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = a.clone() * b.clone();
                out[i + j] = out[i + j].clone()
                    + match self.flavor {
                        Flavor::Ogf => term,
                        Flavor::Egf => term * R::from_integer(&binomial((i + j) as u64, i as u64)),
                    };
            }
        }
        Ok(Series { coeffs: out, flavor: self.flavor })
    }

    /// Multiplicative inverse; the constant term must be a unit of the ring.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let inv0 = self.coeffs[0]
            .unit_inverse()
            .ok_or_else(|| SeriesError::NonUnitConstant { value: self.coeffs[0].to_string() })?;
        let m = self.truncation();
        let mut out: Vec<R> = Vec::with_capacity(m + 1);
        out.push(inv0.clone());
        for n in 1..=m {
            let mut acc = R::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if a.is_zero() {
                    continue;
                }
                let term = a.clone() * out[n - k].clone();
                acc = acc
                    + match self.flavor {
                        Flavor::Ogf => term,
                        Flavor::Egf => term * R::from_integer(&binomial(n as u64, k as u64)),
                    };
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(Series { coeffs: out, flavor: self.flavor })
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        self.mul(&other.inverse()?)
    }

    pub fn pow_int(&self, e: i64) -> Result<Self, SeriesError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Series::one(self.truncation(), self.flavor);
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Substitutes `t ↦ t^k` (ordinary flavor).
    pub fn substitute_power(&self, k: usize) -> Self {
        assert_eq!(self.flavor, Flavor::Ogf, "t ↦ t^k is only meaningful for ordinary series");
        let m = self.truncation();
        Series::from_fn(m, Flavor::Ogf, |i| {
            if i % k == 0 {
                self.coeffs[i / k].clone()
            } else {
                R::zero()
            }
        })
    }

    /// Substitutes `t ↦ c·t`.
    pub fn rescale(&self, c: &R) -> Self {
        let mut power = R::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * power.clone());
            power = power * c.clone();
        }
        Series { coeffs: out, flavor: self.flavor }
    }

    pub fn with_truncation(&self, truncation: usize) -> Self {
        Series::new(self.coeffs.clone(), truncation, self.flavor)
    }
}

impl Series<Rational> {
    pub fn from_ints(coeffs: &[i64], truncation: usize, flavor: Flavor) -> Self {
        Series::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(), truncation, flavor)
    }

    pub fn from_integers(coeffs: &[Integer], truncation: usize, flavor: Flavor) -> Self {
        Series::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect(), truncation, flavor)
    }

    /// Coefficients as integers, or the first non-integral degree.
    pub fn integer_coeffs(&self) -> Result<Vec<Integer>, SeriesError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(d, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(SeriesError::NonIntegral { degree: d, value: c.to_string() })
                }
            })
            .collect()
    }

    /// The same function as an ordinary series (`a_m / m!` for exponential input).
    pub fn to_ogf(&self) -> Self {
        match self.flavor {
            Flavor::Ogf => self.clone(),
            Flavor::Egf => Series {
                coeffs: self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(m, a)| a / Rational::from_integer(factorial(m as u64)))
                    .collect(),
                flavor: Flavor::Ogf,
            },
        }
    }

    /// Reinterprets an ordinary series as exponential (`a_m ↦ m! a_m`).
    pub fn ogf_to_egf(&self) -> Self {
        assert_eq!(self.flavor, Flavor::Ogf);
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, a)| a * Rational::from_integer(factorial(m as u64)))
                .collect(),
            flavor: Flavor::Egf,
        }
    }

    fn restore_flavor(&self, flavor: Flavor) -> Self {
        match flavor {
            Flavor::Ogf => self.clone(),
            Flavor::Egf => self.ogf_to_egf(),
        }
    }

    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::InvalidConstantTerm { expected: "0", found: self.coeffs[0].to_string() });
        }
        let a = self.to_ogf();
        let m = self.truncation();
        // n b_n = Σ_{k=1}^n k a_k b_{n-k}
        let mut b = vec![Rational::one()];
        for n in 1..=m {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !a.coeffs[k].is_zero() {
                    acc += Rational::from_integer(k.into()) * &a.coeffs[k] * &b[n - k];
                }
            }
            b.push(acc / Rational::from_integer(n.into()));
        }
        Ok(Series { coeffs: b, flavor: Flavor::Ogf }.restore_flavor(self.flavor))
    }

    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::InvalidConstantTerm { expected: "1", found: self.coeffs[0].to_string() });
        }
        let a = self.to_ogf();
        let m = self.truncation();
        // n c_n = n a_n - Σ_{k=1}^{n-1} k c_k a_{n-k}
        let mut c = vec![Rational::zero()];
        for n in 1..=m {
            let mut acc = Rational::from_integer(n.into()) * &a.coeffs[n];
            for k in 1..n {
                if !c[k].is_zero() {
                    acc -= Rational::from_integer(k.into()) * &c[k] * &a.coeffs[n - k];
                }
            }
            c.push(acc / Rational::from_integer(n.into()));
        }
        Ok(Series { coeffs: c, flavor: Flavor::Ogf }.restore_flavor(self.flavor))
    }
}

impl<R: CoefficientRing> fmt::Display for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + O(t^{})", parts.join(", "), self.truncation() + 1)
    }
}

impl<R: CoefficientRing> fmt::Debug for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series<{:?}>{self}", self.flavor)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    flavor: Flavor,
    truncation: usize,
    coeffs: Vec<String>,
}

impl<R: CoefficientRing> Serialize for Series<R> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesRepr {
            flavor: self.flavor,
            truncation: self.truncation(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, R: CoefficientRing> Deserialize<'de> for Series<R> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.coeffs.len() != repr.truncation + 1 {
            return Err(serde::de::Error::custom(format!(
                "expected {} coefficients, found {}",
                repr.truncation + 1,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| R::parse_exact(s).ok_or_else(|| serde::de::Error::custom(format!("bad coefficient {s:?}"))))
            .collect::<Result<Vec<R>, _>>()?;
        Ok(Series { coeffs, flavor: repr.flavor })
    }
}

/// A power series in two variables `s, t`, stored as one [`Series`] in `t`
/// per power of `s`.
#[derive(Clone, PartialEq, Debug)]
pub struct BivariateSeries<R: CoefficientRing> {
    rows: Vec<Series<R>>,
}

impl<R: CoefficientRing> BivariateSeries<R> {
    /// All rows must share truncation and flavor.
    pub fn from_rows(rows: Vec<Series<R>>) -> Self {
        assert!(!rows.is_empty(), "at least the s^0 row is required");
        let (m, f) = (rows[0].truncation(), rows[0].flavor());
        assert!(rows.iter().all(|r| r.truncation() == m && r.flavor() == f), "rows must agree in order and flavor");
        BivariateSeries { rows }
    }

    pub fn s_truncation(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn t_truncation(&self) -> usize {
        self.rows[0].truncation()
    }

    pub fn row(&self, k: usize) -> &Series<R> {
        &self.rows[k]
    }

    /// `[s^k t^m]`.
    pub fn coeff(&self, k: usize, m: usize) -> &R {
        self.rows[k].coeff(m)
    }

    /// Substitutes a value for `s`.
    pub fn at_s(&self, s: &R) -> Series<R> {
        let mut acc = Series::zero(self.t_truncation(), self.rows[0].flavor());
        let mut power = R::one();
        for row in &self.rows {
            acc = acc.add(&row.scale(&power)).expect("rows share order and flavor");
            power = power * s.clone();
        }
        acc
    }
}

impl<R: CoefficientRing> Serialize for BivariateSeries<R> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("BivariateSeries", 3)?;
        st.serialize_field("s_truncation", &self.s_truncation())?;
        st.serialize_field("t_truncation", &self.t_truncation())?;
        st.serialize_field("rows", &self.rows)?;
        st.end()
    }
}

/// `Π_{i≥1} (1 - t^i)^{-g_i}` truncated at `truncation`; `g[0]` is `g_1`.
///
/// Uses the power-sum recurrence `N h_N = Σ_{k=1}^N c_k h_{N-k}` with
/// `c_k = Σ_{d|k} d g_d`.
pub fn euler_transform(g: &[Integer], truncation: usize) -> Series<Rational> {
    let gi = |i: usize| g.get(i - 1).cloned().unwrap_or_else(BigInt::zero);
    let c: Vec<Integer> = (0..=truncation)
        .map(|k| {
            if k == 0 {
                return BigInt::zero();
            }
            (1..=k).filter(|d| k % d == 0).map(|d| gi(d) * BigInt::from(d)).sum()
        })
        .collect();
    let mut h: Vec<Integer> = vec![BigInt::one()];
    for n in 1..=truncation {
        let acc: Integer = (1..=n).map(|k| &c[k] * &h[n - k]).sum();
        debug_assert!((&acc % BigInt::from(n)).is_zero());
        h.push(acc / BigInt::from(n));
    }
    Series::from_integers(&h, truncation, Flavor::Ogf)
}

/// Result of inverting the Euler transform: the `g_i` plus whether they are
/// all nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerInverse {
    pub g: Vec<Integer>,
    pub realizable: bool,
}

impl EulerInverse {
    pub fn first_negative(&self) -> Option<(usize, &Integer)> {
        self.g.iter().enumerate().find(|(_, v)| v.sign() == num_bigint::Sign::Minus).map(|(i, v)| (i + 1, v))
    }

    pub fn require_realizable(self) -> Result<Vec<Integer>, SeriesError> {
        match self.first_negative() {
            Some((degree, value)) => Err(SeriesError::NotRealizable { degree, value: value.clone() }),
            None => Ok(self.g),
        }
    }
}

/// The unique `g_1..g_M` with `Π (1 - t^i)^{-g_i} ≡ h(t) mod t^{M+1}`, via
/// `c_n = n [t^n] log h` and Möbius inversion of `c_n = Σ_{d|n} d g_d`.
pub fn inverse_euler_transform(h: &Series<Rational>) -> Result<EulerInverse, SeriesError> {
    if h.flavor() != Flavor::Ogf {
        return Err(SeriesError::FlavorMismatch { left: h.flavor(), right: Flavor::Ogf });
    }
    h.integer_coeffs()?;
    let log = h.log()?;
    let m = h.truncation();
    let c: Vec<Rational> = (0..=m).map(|n| Rational::from_integer(n.into()) * log.coeff(n)).collect();
    let mut g = Vec::with_capacity(m);
    for n in 1..=m {
        let mut acc = Rational::zero();
        for d in (1..=n).filter(|d| n % d == 0) {
            let mu = moebius(n / d);
            if mu != 0 {
                acc += Rational::from_integer(mu.into()) * &c[d];
            }
        }
        let value = acc / Rational::from_integer(n.into());
        if !value.is_integer() {
            return Err(SeriesError::NonIntegral { degree: n, value: value.to_string() });
        }
        g.push(value.to_integer());
    }
    let realizable = g.iter().all(|v| v.sign() != num_bigint::Sign::Minus);
    Ok(EulerInverse { g, realizable })
}

/// A reduced quotient of rational polynomials with denominator constant term 1.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalFunction {
    numerator: Poly<Rational>,
    denominator: Poly<Rational>,
}

impl RationalFunction {
    pub fn new(numerator: Poly<Rational>, denominator: Poly<Rational>) -> Result<Self, SeriesError> {
        let g = numerator.gcd(&denominator);
        let (num, den) = if g.degree().unwrap_or(0) > 0 {
            (numerator.exact_div(&g), denominator.exact_div(&g))
        } else {
            (numerator, denominator)
        };
        let d0 = den.coeff(0);
        if d0.is_zero() {
            return Err(SeriesError::NonUnitConstant { value: "0".into() });
        }
        let inv = d0.recip();
        Ok(RationalFunction { numerator: num.scale(&inv), denominator: den.scale(&inv) })
    }

    pub fn from_ints(numerator: &[i64], denominator: &[i64]) -> Result<Self, SeriesError> {
        Self::new(Poly::from_ints(numerator), Poly::from_ints(denominator))
    }

    pub fn numerator(&self) -> &Poly<Rational> {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly<Rational> {
        &self.denominator
    }

    /// `f(t^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        RationalFunction {
            numerator: self.numerator.substitute_power(k),
            denominator: self.denominator.substitute_power(k),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.numerator.mul(&other.numerator), self.denominator.mul(&other.denominator))
            .expect("product of canonical fractions keeps a unit constant term")
    }

    /// Reciprocal; fails when the numerator vanishes at 0.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        Self::new(self.denominator.clone(), self.numerator.clone())
    }

    pub fn eval(&self, z: &Rational) -> Option<Rational> {
        let d = self.denominator.eval(z);
        (!d.is_zero()).then(|| self.numerator.eval(z) / d)
    }

    /// Taylor coefficients at 0 through degree `truncation`, by long division.
    pub fn taylor_expand(&self, truncation: usize) -> Series<Rational> {
        let den: Vec<Rational> = (0..=truncation).map(|i| self.denominator.coeff(i)).collect();
        let mut out: Vec<Rational> = Vec::with_capacity(truncation + 1);
        for n in 0..=truncation {
            let mut acc = self.numerator.coeff(n);
            for k in 1..=n {
                if !den[k].is_zero() {
                    acc -= &den[k] * &out[n - k];
                }
            }
            out.push(acc);
        }
        Series::ogf(out, truncation)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}
