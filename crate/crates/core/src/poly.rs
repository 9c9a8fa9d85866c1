//! Dense univariate polynomials over an exact coefficient ring.
//!
//! Coefficients are stored in ascending order with no trailing zeros, so the
//! zero polynomial is the empty vector.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::ring::{CoefficientRing, Rational};

#[derive(Clone, PartialEq)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: CoefficientRing> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    /// The monic linear factor `x - root`.
    pub fn linear(root: R) -> Self {
        Poly::new(vec![-root, R::one()])
    }

    pub fn x() -> Self {
        Poly::new(vec![R::zero(), R::one()])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, e: u64) -> Self {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * R::from_i64(i as i64))
                .collect(),
        )
    }

    /// Substitutes `x ↦ -x`.
    pub fn reflect(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Substitutes `x ↦ x^k`.
    pub fn substitute_power(&self, k: usize) -> Self {
        let mut out = vec![R::zero(); (self.coeffs.len().max(1) - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        Poly::new(out)
    }

    pub fn map<S: CoefficientRing>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Product `Π (x - root)^mult`.
    pub fn from_roots<'a, I>(roots: I) -> Self
    where
        I: IntoIterator<Item = (&'a R, u64)>,
    {
        roots
            .into_iter()
            .fold(Poly::one(), |acc, (r, m)| acc.mul(&Poly::linear(r.clone()).pow(m)))
    }
}

impl<R: CoefficientRing> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<R: CoefficientRing> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{self}]")
    }
}

impl Poly<Rational> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Poly::zero(),
        }
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = &rem[i] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &c * d;
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact quotient; panics when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Yun's squarefree factorization: returns `(P_1, P_2, ...)` with
    /// `self = c · Π P_i^i`, each `P_i` monic squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<Self> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0);
        let mut c = fp.exact_div(&a0);
        let mut d = c.sub(&b.derivative());
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            out.push(a.clone());
            b = b.exact_div(&a);
            c = d.exact_div(&a);
            d = c.sub(&b.derivative());
        }
        while out.last().is_some_and(|p| p.degree() == Some(0)) {
            out.pop();
        }
        out
    }

    pub fn squarefree_part(&self) -> Self {
        self.squarefree_decomposition()
            .into_iter()
            .fold(Poly::one(), |acc, p| acc.mul(&p))
    }

    /// Multiplicity of `root` as a zero of `self` (0 if not a root).
    pub fn root_multiplicity(&self, root: &Rational) -> usize {
        let lin = Poly::linear(root.clone());
        let mut p = self.clone();
        let mut mult = 0;
        while !p.is_zero() {
            let (q, r) = p.div_rem(&lin);
            if !r.is_zero() {
                break;
            }
            p = q;
            mult += 1;
        }
        mult
    }

    /// All distinct rational roots, found by the rational root theorem on the
    /// primitive integer multiple of the squarefree part.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut roots = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let mut p = self.squarefree_part();
        if p.coeff(0).is_zero() {
            roots.push(Rational::zero());
            p = p.exact_div(&Poly::x());
        }
        let ints = p.primitive_integer_coeffs();
        let (Some(a0), Some(an)) = (ints.first(), ints.last()) else {
            return roots;
        };
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        for num in divisors(&a0.abs()) {
            for den in divisors(&an.abs()) {
                for sign in [1, -1] {
                    let cand = Rational::new(BigInt::from(sign) * &num, den.clone());
                    if !roots.contains(&cand) && p.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Scales to integer coefficients with content 1 (positive leading coefficient).
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() {
            return ints;
        }
        let sign = if ints.last().is_some_and(|c| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }

    fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&-Rational::one()));
        }
        seq
    }

    fn sign_changes(seq: &[Self], x: &Rational) -> usize {
        let signs: Vec<i8> = seq
            .iter()
            .map(|p| {
                let v = p.eval(x);
                if v.is_positive() {
                    1
                } else if v.is_negative() {
                    -1
                } else {
                    0
                }
            })
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Cauchy bound: every complex root has modulus strictly below it.
    pub fn root_bound(&self) -> Rational {
        let lc = self.leading().expect("zero polynomial has no root bound").abs();
        let max = self
            .coeffs
            .iter()
            .take(self.coeffs.len() - 1)
            .map(|c| c.abs() / &lc)
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
        max + Rational::one()
    }

    /// Isolating intervals `(a, b]` for the distinct real roots in `(lo, hi]`,
    /// each refined until `b - a <= width`.
    pub fn isolate_real_roots(&self, lo: &Rational, hi: &Rational, width: &Rational) -> Vec<(Rational, Rational)> {
        let p = self.squarefree_part();
        if p.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let seq = p.sturm_sequence();
        let count = |a: &Rational, b: &Rational| Self::sign_changes(&seq, a) - Self::sign_changes(&seq, b);
        let mut out = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone())];
        let two = Rational::from_integer(2.into());
        while let Some((a, b)) = stack.pop() {
            let n = count(&a, &b);
            if n == 0 {
                continue;
            }
            if n == 1 && &b - &a <= *width {
                out.push((a, b));
                continue;
            }
            let mid = (&a + &b) / &two;
            stack.push((mid.clone(), b));
            stack.push((a, mid));
        }
        out.sort();
        out
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}
