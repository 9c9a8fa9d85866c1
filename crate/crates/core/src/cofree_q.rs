//! Antipode spectra of Hopf algebras that are cofree as graded coalgebras,
//! at `q = 1` and with a formal parameter `q`.
//!
//! Only the alphabet `v_n = dim V_n` of the primitive space enters: the
//! spectrum is read off palindromic words and their inversion statistic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{pal_table, weighted_compositions, CombinatoricsError, WeightedAlphabet};
use crate::laurent::Laurent;
use crate::poly::Poly;
use crate::ring::{binomial, int_to_json, CoefficientRing, Integer, Rational};
use crate::series::{BivariateSeries, Flavor, Series, SeriesError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CofreeError {
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("nonpalindromic words with q-exponent {q_exp} number {count}, which is odd")]
    OddNonpalindromes { q_exp: u64, count: Integer },
}

impl CofreeError {
    pub fn name(&self) -> &'static str {
        match self {
            CofreeError::Combinatorics(e) => e.name(),
            CofreeError::Series(e) => e.name(),
            CofreeError::OddNonpalindromes { .. } => "OddNonpalindromes",
        }
    }
}

/// `(x - 1)^{epal} (x + 1)^{opal} (x² - 1)^{nopal/2}` on `H_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CofreeSpectrum {
    pub m: usize,
    pub epal: Integer,
    pub opal: Integer,
    pub nopal: Integer,
}

impl CofreeSpectrum {
    /// Distinct eigenvalues `±1` with multiplicities.
    pub fn eigenvalues(&self) -> BTreeMap<Rational, Integer> {
        let half = &self.nopal / BigInt::from(2);
        let mut out = BTreeMap::new();
        for (e, mult) in [(1, &self.epal + &half), (-1, &self.opal + &half)] {
            if !mult.is_zero() {
                out.insert(Rational::from_integer(e.into()), mult);
            }
        }
        out
    }

    pub fn degree(&self) -> Integer {
        &self.epal + &self.opal + &self.nopal
    }

    pub fn trace(&self) -> Integer {
        &self.epal - &self.opal
    }
}

pub fn cofree_char_poly(v: &WeightedAlphabet, m: usize) -> CofreeSpectrum {
    let t = pal_table(v, m);
    CofreeSpectrum { m, epal: t.epal(m), opal: t.opal(m), nopal: t.nopal(m) }
}

/// `Σ_k (-1)^k pal(k, m)`.
pub fn cofree_trace(v: &WeightedAlphabet, m: usize) -> Integer {
    pal_table(v, m).table.alternating_column_sum(m)
}

/// Even and odd palindrome generating functions: `[s^k t^m]` is
/// `pal(2k, m)` resp. `pal(2k+1, m)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PalGfs<R: CoefficientRing> {
    pub even: BivariateSeries<R>,
    pub odd: BivariateSeries<R>,
}

fn alphabet_series(v: &WeightedAlphabet, max_degree: usize) -> Series<Rational> {
    Series::from_fn(max_degree, Flavor::Ogf, |n| Rational::from_integer(v.count(n)))
}

/// Closed forms `1/(1 - s v(t²))` and `v(t)/(1 - s v(t²))`, expanded in `s`.
pub fn pal_gfs(v: &WeightedAlphabet, max_degree: usize) -> PalGfs<Rational> {
    let vt = alphabet_series(v, max_degree);
    let vt2 = vt.substitute_power(2);
    let mut even = Vec::with_capacity(max_degree + 1);
    let mut odd = Vec::with_capacity(max_degree + 1);
    let mut power = Series::one(max_degree, Flavor::Ogf);
    for _ in 0..=max_degree {
        odd.push(vt.mul(&power).expect("same order"));
        even.push(power.clone());
        power = power.mul(&vt2).expect("same order");
    }
    PalGfs { even: BivariateSeries::from_rows(even), odd: BivariateSeries::from_rows(odd) }
}

/// Factor `(x - sign·q^{q_exp})^{mult}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QLinearFactor {
    pub sign: i8,
    pub q_exp: u64,
    pub mult: Integer,
}

/// Factor `(x² - q^{q_exp})^{mult}`, where `q_exp = 2 inv(α)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QQuadraticFactor {
    pub q_exp: u64,
    pub mult: Integer,
}

/// The q-deformed antipode characteristic polynomial on `H_m`, aggregated
/// over compositions sharing a sign and inversion number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSpectrumFactorization {
    pub m: usize,
    pub linear: Vec<QLinearFactor>,
    pub quadratic: Vec<QQuadraticFactor>,
}

impl QSpectrumFactorization {
    pub fn degree(&self) -> Integer {
        let lin: Integer = self.linear.iter().map(|f| &f.mult).sum();
        let quad: Integer = self.quadratic.iter().map(|f| &f.mult).sum();
        lin + quad * BigInt::from(2)
    }

    /// Specializes `q = 1`.
    pub fn at_q_one(&self) -> CofreeSpectrum {
        let mut epal = BigInt::zero();
        let mut opal = BigInt::zero();
        for f in &self.linear {
            if f.sign > 0 {
                epal += &f.mult;
            } else {
                opal += &f.mult;
            }
        }
        let nopal: Integer = self.quadratic.iter().map(|f| &f.mult * BigInt::from(2)).sum();
        CofreeSpectrum { m: self.m, epal, opal, nopal }
    }

    /// The expanded characteristic polynomial over `ℤ[q, q^{-1}]`.
    pub fn to_poly(&self) -> Poly<Laurent> {
        let mut acc = Poly::one();
        for f in &self.linear {
            let root = Laurent::monomial(f.sign as i64, f.q_exp as i64);
            acc = acc.mul(&Poly::linear(root).pow(u64::try_from(&f.mult).expect("small multiplicity")));
        }
        for f in &self.quadratic {
            let quad = Poly::new(vec![-Laurent::q_pow(f.q_exp as i64), Laurent::zero(), Laurent::one()]);
            acc = acc.mul(&quad.pow(u64::try_from(&f.mult).expect("small multiplicity")));
        }
        acc
    }
}

impl Serialize for QSpectrumFactorization {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Factor {
            kind: &'static str,
            sign: i8,
            q_exp: u64,
            mult: serde_json::Value,
        }
        #[derive(Serialize)]
        struct Repr {
            m: usize,
            factors: Vec<Factor>,
        }
        let mut factors: Vec<Factor> = self
            .linear
            .iter()
            .map(|f| Factor { kind: "linear", sign: f.sign, q_exp: f.q_exp, mult: int_to_json(&f.mult) })
            .collect();
        factors.extend(
            self.quadratic
                .iter()
                .map(|f| Factor { kind: "quadratic", sign: 1, q_exp: f.q_exp, mult: int_to_json(&f.mult) }),
        );
        Repr { m: self.m, factors }.serialize(serializer)
    }
}

pub fn q_char_poly(v: &WeightedAlphabet, m: usize, cap: u64) -> Result<QSpectrumFactorization, CofreeError> {
    let mut linear: BTreeMap<(i8, u64), Integer> = BTreeMap::new();
    let mut quadratic: BTreeMap<u64, Integer> = BTreeMap::new();
    for c in weighted_compositions(v, m, cap)? {
        let sign = if c.alpha.length() % 2 == 0 { 1 } else { -1 };
        if !c.pal.is_zero() {
            *linear.entry((sign, c.inv)).or_insert_with(BigInt::zero) += &c.pal;
        }
        if !c.nopal.is_zero() {
            *quadratic.entry(c.inv).or_insert_with(BigInt::zero) += &c.nopal;
        }
    }
    let mut quad = Vec::with_capacity(quadratic.len());
    for (inv, count) in quadratic {
        if !(&count % BigInt::from(2)).is_zero() {
            return Err(CofreeError::OddNonpalindromes { q_exp: 2 * inv, count });
        }
        quad.push(QQuadraticFactor { q_exp: 2 * inv, mult: count / BigInt::from(2) });
    }
    Ok(QSpectrumFactorization {
        m,
        linear: linear.into_iter().map(|((sign, q_exp), mult)| QLinearFactor { sign, q_exp, mult }).collect(),
        quadratic: quad,
    })
}

/// `Σ_α (-1)^{ℓ(α)} pal(α) q^{inv(α)}`.
pub fn q_trace(v: &WeightedAlphabet, m: usize, cap: u64) -> Result<Laurent, CofreeError> {
    let mut acc = Laurent::zero();
    for c in weighted_compositions(v, m, cap)? {
        if !c.pal.is_zero() {
            let sign = if c.alpha.length() % 2 == 0 { c.pal } else { -c.pal };
            acc = acc + Laurent::monomial(sign, c.inv as i64);
        }
    }
    Ok(acc)
}

/// q-palindrome generating functions, normalized by `q^{-C(m,2)}` in degree `m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QPalGfs {
    pub even: BivariateSeries<Laurent>,
    pub odd: BivariateSeries<Laurent>,
    /// `(1 - v_q(t)) / (1 - v_{q²}(t²))`.
    pub trace: Series<Laurent>,
}

/// `v_q(t) = Σ v_n t^n q^{-C(n,2)}`; `q_power = 2` gives `v_{q²}`.
fn q_alphabet_series(v: &WeightedAlphabet, max_degree: usize, q_power: i64) -> Series<Laurent> {
    Series::from_fn(max_degree, Flavor::Ogf, |n| {
        if n == 0 {
            return Laurent::zero();
        }
        let c = binomial(n as u64, 2);
        Laurent::monomial(v.count(n), -q_power * i64::try_from(&c).expect("small degree"))
    })
}

pub fn q_pal_gfs(v: &WeightedAlphabet, max_degree: usize) -> Result<QPalGfs, CofreeError> {
    let vq = q_alphabet_series(v, max_degree, 1);
    let vq2t2 = q_alphabet_series(v, max_degree, 2).substitute_power(2);
    let mut even = Vec::with_capacity(max_degree + 1);
    let mut odd = Vec::with_capacity(max_degree + 1);
    let mut power = Series::one(max_degree, Flavor::Ogf);
    for _ in 0..=max_degree {
        odd.push(vq.mul(&power)?);
        even.push(power.clone());
        power = power.mul(&vq2t2)?;
    }
    let one = Series::one(max_degree, Flavor::Ogf);
    let trace = one.sub(&vq)?.div(&one.sub(&vq2t2)?)?;
    Ok(QPalGfs { even: BivariateSeries::from_rows(even), odd: BivariateSeries::from_rows(odd), trace })
}

/// `q^{-C(m,2)}`.
pub fn q_normalizer(m: usize) -> Laurent {
    Laurent::q_pow(-i64::try_from(&binomial(m as u64, 2)).expect("small degree"))
}

/// Evaluates a q-trace at a rational `q`. At `q = 0` the polynomial value is
/// returned, but the normalized generating functions do not specialize there.
pub fn eval_q_trace(trace: &Laurent, q: &Rational) -> Option<Rational> {
    trace.eval(q)
}
