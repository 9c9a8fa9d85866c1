//! Counting kernels: partitions, multisets of weighted primitives, Lyndon
//! counts over weighted alphabets, and palindromic words.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::ring::{multichoose, Integer, Rational};
use crate::table::Table;

/// Default cap on the number of words per degree for enumerations.
pub const DEFAULT_WORD_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombinatoricsError {
    #[error("degree {degree} has {count} words, above the cap of {cap}")]
    TooLarge { degree: usize, count: Integer, cap: u64 },
    #[error("alphabet count v_{index} = {value} is negative")]
    NegativeCount { index: usize, value: Integer },
    #[error("Lyndon count for weight {degree} came out non-integral: {value}")]
    NonIntegral { degree: usize, value: String },
}

impl CombinatoricsError {
    pub fn name(&self) -> &'static str {
        match self {
            CombinatoricsError::TooLarge { .. } => "TooLarge",
            CombinatoricsError::NegativeCount { .. } => "NegativeCount",
            CombinatoricsError::NonIntegral { .. } => "NonIntegral",
        }
    }
}

pub fn moebius(n: usize) -> i64 {
    assert!(n >= 1, "Möbius function is defined for n ≥ 1");
    let (mut n, mut sign, mut p) = (n, 1i64, 2usize);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

/// A partition `1^{k_1} 2^{k_2} ... r^{k_r}` stored by multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    multiplicities: Vec<usize>,
}

impl Partition {
    pub fn from_multiplicities(mut multiplicities: Vec<usize>) -> Self {
        while multiplicities.last() == Some(&0) {
            multiplicities.pop();
        }
        Partition { multiplicities }
    }

    pub fn from_parts(parts: &[usize]) -> Self {
        let mut mult = vec![0; parts.iter().copied().max().unwrap_or(0)];
        for &p in parts {
            assert!(p > 0, "partition parts are positive");
            mult[p - 1] += 1;
        }
        Partition::from_multiplicities(mult)
    }

    /// `k_i`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.multiplicities.get(i - 1).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn size(&self) -> usize {
        self.multiplicities.iter().enumerate().map(|(i, k)| (i + 1) * k).sum()
    }

    pub fn length(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    pub fn largest_part(&self) -> usize {
        self.multiplicities.len()
    }

    /// Parts in weakly decreasing order.
    pub fn parts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length());
        for (i, &k) in self.multiplicities.iter().enumerate().rev() {
            out.extend(std::iter::repeat(i + 1).take(k));
        }
        out
    }

    pub fn conjugate(&self) -> Partition {
        let r = self.multiplicities.len();
        let mut mult = vec![0; self.length()];
        let mut tail = 0;
        for j in (0..r).rev() {
            tail += self.multiplicities[j];
            if tail > 0 {
                mult[tail - 1] += 1;
            }
        }
        Partition::from_multiplicities(mult)
    }

    pub fn even_part_count(&self) -> usize {
        self.multiplicities.iter().skip(1).step_by(2).sum()
    }

    pub fn is_strict(&self) -> bool {
        self.multiplicities.iter().all(|&k| k <= 1)
    }

    pub fn has_only_odd_parts(&self) -> bool {
        self.even_part_count() == 0
    }
}

/// All partitions of `m`, each generated exactly once.
pub fn partitions(m: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, mult: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_multiplicities(mult.clone()));
            return;
        }
        if max_part == 0 {
            return;
        }
        for k in (0..=remaining / max_part).rev() {
            mult[max_part - 1] = k;
            rec(remaining - k * max_part, max_part - 1, mult, out);
        }
        mult[max_part - 1] = 0;
    }
    let mut out = Vec::new();
    let mut mult = vec![0; m];
    rec(m, m, &mut mult, &mut out);
    out
}

/// `p_k(m)`, partitions of `m` into exactly `k` parts, by the recurrence
/// `p_k(m) = p_{k-1}(m-1) + p_k(m-k)`.
pub fn partitions_by_length(m: usize, k: usize) -> Integer {
    if k > m {
        return BigInt::zero();
    }
    let mut table = vec![vec![BigInt::zero(); m + 1]; k + 1];
    table[0][0] = BigInt::one();
    for j in 1..=k {
        for n in j..=m {
            table[j][n] = &table[j - 1][n - 1] + &table[j][n - j];
        }
    }
    table[k][m].clone()
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PartitionStatistics {
    pub total: u64,
    /// Self-conjugate partitions.
    pub self_conjugate: u64,
    /// Partitions with an even number of even parts.
    pub even_even_parts: u64,
    /// Partitions with an odd number of even parts.
    pub odd_even_parts: u64,
    pub even_length: u64,
    pub odd_length: u64,
    pub strict: u64,
    pub odd_parts: u64,
}

pub fn partition_statistics(m: usize) -> PartitionStatistics {
    let mut s = PartitionStatistics::default();
    for p in partitions(m) {
        s.total += 1;
        s.self_conjugate += u64::from(p.conjugate() == p);
        if p.even_part_count() % 2 == 0 {
            s.even_even_parts += 1;
        } else {
            s.odd_even_parts += 1;
        }
        if p.length() % 2 == 0 {
            s.even_length += 1;
        } else {
            s.odd_length += 1;
        }
        s.strict += u64::from(p.is_strict());
        s.odd_parts += u64::from(p.has_only_odd_parts());
    }
    s
}

/// `Π_i C(g_i + k_i - 1, k_i)`: multisets of primitives with weight profile `λ`.
/// `g[0]` is `g_1`.
pub fn multiset_coefficient(g: &[Integer], lambda: &Partition) -> Integer {
    lambda
        .multiplicities()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| multichoose(&g.get(i).cloned().unwrap_or_default(), k as u64))
        .product()
}

/// `mul(k, m)`: multisets of cardinality `k` and weight `m` drawn from `g_i`
/// objects of weight `i`, as the coefficient array of `Π_i (1 - s t^i)^{-g_i}`.
pub fn mul_table(g: &[Integer], max_degree: usize) -> Table {
    let m_max = max_degree;
    let mut t = vec![vec![BigInt::zero(); m_max + 1]; m_max + 1];
    t[0][0] = BigInt::one();
    for i in 1..=m_max {
        let gi = g.get(i - 1).cloned().unwrap_or_default();
        if gi.is_zero() {
            continue;
        }
        let factors: Vec<Integer> = (0..=m_max / i).map(|j| multichoose(&gi, j as u64)).collect();
        let prev = t.clone();
        for k in 0..=m_max {
            for m in 0..=m_max {
                let mut acc = BigInt::zero();
                for (j, f) in factors.iter().enumerate() {
                    if j > k || i * j > m {
                        break;
                    }
                    if !f.is_zero() {
                        acc += f * &prev[k - j][m - i * j];
                    }
                }
                t[k][m] = acc;
            }
        }
    }
    let mut table = Table::zeros(m_max);
    for (k, row) in t.into_iter().enumerate() {
        for (m, v) in row.into_iter().enumerate() {
            table.set(k, m, v);
        }
    }
    table
}

/// `v_n` letters of weight `n`, for `n = 1..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedAlphabet {
    counts: Vec<Integer>,
}

impl WeightedAlphabet {
    pub fn new(counts: Vec<Integer>) -> Result<Self, CombinatoricsError> {
        if let Some((i, v)) = counts.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(CombinatoricsError::NegativeCount { index: i + 1, value: v.clone() });
        }
        Ok(WeightedAlphabet { counts })
    }

    pub fn from_u64(counts: &[u64]) -> Self {
        WeightedAlphabet { counts: counts.iter().map(|&c| BigInt::from(c)).collect() }
    }

    /// `v_n`; zero beyond the stored range and at `n = 0`.
    pub fn count(&self, n: usize) -> Integer {
        if n == 0 {
            return BigInt::zero();
        }
        self.counts.get(n - 1).cloned().unwrap_or_default()
    }

    pub fn counts(&self) -> &[Integer] {
        &self.counts
    }

    pub fn total_letters(&self) -> Integer {
        self.counts.iter().sum()
    }

    /// Number of words of each weight `0..=max_degree`: coefficients of `1/(1 - v(t))`.
    pub fn word_counts(&self, max_degree: usize) -> Vec<Integer> {
        let mut h = vec![BigInt::one()];
        for m in 1..=max_degree {
            let acc: Integer = (1..=m).map(|a| self.count(a) * &h[m - a]).sum();
            h.push(acc);
        }
        h
    }
}

/// Witt's formula: `g_n = Σ_{d|n} μ(d)/d Σ_{λ ⊢ n/d} (ℓ(λ)-1)!/λ! v^λ`, the
/// number of Lyndon words of weight `n` for `n = 1..=max_degree`.
pub fn witt_counts(v: &WeightedAlphabet, max_degree: usize) -> Result<Vec<Integer>, CombinatoricsError> {
    // inner[j] = Σ_{λ ⊢ j} (ℓ-1)!/λ! v^λ = [t^j] -log(1 - v(t)) = Σ_ℓ [t^j] v(t)^ℓ / ℓ
    let vt: Vec<Integer> = (0..=max_degree).map(|i| if i == 0 { Integer::zero() } else { v.count(i) }).collect();
    let mut inner = vec![Rational::zero(); max_degree + 1];
    let mut power = vt.clone();
    for l in 1..=max_degree {
        for (j, c) in power.iter().enumerate().skip(l) {
            if !c.is_zero() {
                inner[j] += Rational::new(c.clone(), Integer::from(l));
            }
        }
        let mut next = vec![Integer::zero(); max_degree + 1];
        for (i, a) in power.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (k, b) in vt.iter().enumerate().take(max_degree + 1 - i).filter(|(_, b)| !b.is_zero()) {
                next[i + k] += a * b;
            }
        }
        power = next;
    }
    (1..=max_degree)
        .map(|n| {
            let mut acc = Rational::zero();
            for d in (1..=n).filter(|d| n % d == 0) {
                let mu = moebius(d);
                if mu != 0 {
                    acc += Rational::new(mu.into(), d.into()) * &inner[n / d];
                }
            }
            if acc.is_integer() {
                Ok(acc.to_integer())
            } else {
                Err(CombinatoricsError::NonIntegral { degree: n, value: acc.to_string() })
            }
        })
        .collect()
}

/// Palindrome counts over a weighted alphabet through a maximum degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PalTable {
    /// `pal(k, m)`.
    pub table: Table,
    /// Words of weight `m`: `h_m = [t^m] 1/(1 - v(t))`.
    pub words: Vec<Integer>,
}

impl PalTable {
    pub fn max_degree(&self) -> usize {
        self.table.max_degree()
    }

    pub fn pal_km(&self, k: usize, m: usize) -> Integer {
        self.table.get(k, m)
    }

    pub fn pal(&self, m: usize) -> Integer {
        self.table.column_sum(m)
    }

    pub fn epal(&self, m: usize) -> Integer {
        self.table.parity_column_sum(m, 0)
    }

    pub fn opal(&self, m: usize) -> Integer {
        self.table.parity_column_sum(m, 1)
    }

    pub fn nopal(&self, m: usize) -> Integer {
        &self.words[m] - self.pal(m)
    }
}

/// `pal(k, m)` via `pal(k, m) = Σ_a v_a pal(k-2, m-2a)`, seeded with the
/// empty palindrome `pal(0,0) = 1` and single letters `pal(1,m) = v_m`.
pub fn pal_table(v: &WeightedAlphabet, max_degree: usize) -> PalTable {
    let mut table = Table::zeros(max_degree);
    table.set(0, 0, BigInt::one());
    if max_degree >= 1 {
        for m in 1..=max_degree {
            table.set(1, m, v.count(m));
        }
    }
    for k in 2..=max_degree {
        for m in 0..=max_degree {
            let acc: Integer = (1..=m / 2).map(|a| v.count(a) * table.get(k - 2, m - 2 * a)).sum();
            table.set(k, m, acc);
        }
    }
    PalTable { table, words: v.word_counts(max_degree) }
}

/// A composition `α = (a_1, ..., a_k)` of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightedComposition {
    parts: Vec<usize>,
}

impl WeightedComposition {
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(parts.iter().all(|&a| a > 0), "composition parts are positive");
        WeightedComposition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn reversed(&self) -> WeightedComposition {
        WeightedComposition { parts: self.parts.iter().rev().copied().collect() }
    }

    pub fn is_palindrome(&self) -> bool {
        self.parts.iter().eq(self.parts.iter().rev())
    }

    /// `inv(α) = Σ_{i<j} a_i a_j`.
    pub fn inv(&self) -> u64 {
        let mut acc = 0u64;
        let mut prefix = 0u64;
        for &a in &self.parts {
            acc += prefix * a as u64;
            prefix += a as u64;
        }
        acc
    }
}

/// One weighted composition with its word statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionCount {
    pub alpha: WeightedComposition,
    /// Words of multiweight `α`: `Π v_{a_i}`.
    pub words: Integer,
    pub pal: Integer,
    pub nopal: Integer,
    pub inv: u64,
}

impl CompositionCount {
    fn of(v: &WeightedAlphabet, alpha: WeightedComposition) -> Self {
        let words: Integer = alpha.parts().iter().map(|&a| v.count(a)).product();
        let pal = palindromes_of_multiweight(v, &alpha);
        let inv = alpha.inv();
        CompositionCount { nopal: &words - &pal, words, pal, inv, alpha }
    }
}

/// Streams every composition of `m` whose parts all carry at least one
/// letter, with palindrome counts and inversion statistic.
pub struct WeightedCompositions {
    alphabet: WeightedAlphabet,
    support: Vec<usize>,
    stack: Vec<(Vec<usize>, usize)>,
}

impl Iterator for WeightedCompositions {
    type Item = CompositionCount;

    fn next(&mut self) -> Option<CompositionCount> {
        while let Some((parts, remaining)) = self.stack.pop() {
            if remaining == 0 {
                return Some(CompositionCount::of(&self.alphabet, WeightedComposition::new(parts)));
            }
            for &a in self.support.iter().rev() {
                if a <= remaining {
                    let mut next = parts.clone();
                    next.push(a);
                    self.stack.push((next, remaining - a));
                }
            }
        }
        None
    }
}

/// Fails with `TooLarge` when the total number of words of weight `m`
/// exceeds `cap`.
pub fn weighted_compositions(v: &WeightedAlphabet, m: usize, cap: u64) -> Result<WeightedCompositions, CombinatoricsError> {
    let count = v.word_counts(m)[m].clone();
    if count > BigInt::from(cap) {
        return Err(CombinatoricsError::TooLarge { degree: m, count, cap });
    }
    let support = (1..=m).filter(|&a| !v.count(a).is_zero()).collect();
    Ok(WeightedCompositions { alphabet: v.clone(), support, stack: vec![(Vec::new(), m)] })
}

/// Palindromic compositions of `m` whose parts all carry at least one letter,
/// built as `β · (c) · rev β` with an optional middle part `c`.
pub fn palindromic_compositions(v: &WeightedAlphabet, m: usize) -> Vec<WeightedComposition> {
    fn halves(support: &[usize], w: usize) -> Vec<Vec<usize>> {
        if w == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for &a in support.iter().filter(|&&a| a <= w) {
            for mut tail in halves(support, w - a) {
                tail.insert(0, a);
                out.push(tail);
            }
        }
        out
    }
    let support: Vec<usize> = (1..=m).filter(|&a| !v.count(a).is_zero()).collect();
    let mut out = Vec::new();
    for w in 0..=m / 2 {
        let middle = m - 2 * w;
        if middle > 0 && !support.contains(&middle) {
            continue;
        }
        for half in halves(&support, w) {
            let mut parts = half.clone();
            if middle > 0 {
                parts.push(middle);
            }
            parts.extend(half.iter().rev());
            out.push(WeightedComposition::new(parts));
        }
    }
    out
}

/// `pal(α) = Π_{i ≤ ⌈k/2⌉} v_{a_i}` for palindromic `α`, else 0.
pub fn palindromes_of_multiweight(v: &WeightedAlphabet, alpha: &WeightedComposition) -> Integer {
    if !alpha.is_palindrome() {
        return BigInt::zero();
    }
    alpha.parts()[..alpha.length().div_ceil(2)].iter().map(|&a| v.count(a)).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{binomial, factorial, int};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| int(x)).collect()
    }

    /// Brute-force word enumeration over an alphabet given as letter weights.
    fn words_of_weight(letters: &[usize], m: usize) -> Vec<Vec<usize>> {
        if m == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for (idx, &w) in letters.iter().enumerate() {
            if w <= m {
                for mut tail in words_of_weight(letters, m - w) {
                    tail.insert(0, idx);
                    out.push(tail);
                }
            }
        }
        out
    }

    fn letters_of(v: &[u64]) -> Vec<usize> {
        v.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat(i + 1).take(c as usize)).collect()
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(4), 0);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(7), -1);
        assert_eq!(moebius(6), 1);
    }

    #[test]
    fn partition_counts() {
        for k in 1..=3 {
            assert_eq!(partitions_by_length(3, k), int(1));
        }
        assert_eq!(partitions_by_length(5, 0), int(0));
        assert_eq!(partitions_by_length(0, 0), int(1));
        assert_eq!(partitions(6).len(), 11);
        let total: Integer = (0..=6).map(|k| partitions_by_length(6, k)).sum();
        assert_eq!(total, int(11));
        let p = Partition::from_parts(&[4, 2, 2, 1]);
        assert_eq!(p.size(), 9);
        assert_eq!(p.length(), 4);
        assert_eq!(p.conjugate().parts(), vec![4, 3, 1, 1]);
        assert_eq!(p.conjugate().conjugate(), p);
    }

    #[test]
    fn statistics_small() {
        let s = partition_statistics(4);
        assert_eq!((s.self_conjugate, s.even_even_parts, s.odd_even_parts), (1, 3, 2));
        let z = partition_statistics(0);
        assert_eq!((z.self_conjugate, z.even_even_parts, z.odd_even_parts), (1, 1, 0));
    }

    #[test]
    fn multisets() {
        let ones = ints(&[1; 6]);
        for p in partitions(6) {
            assert_eq!(multiset_coefficient(&ones, &p), int(1));
        }
        assert_eq!(multiset_coefficient(&ones, &Partition::from_parts(&[])), int(1));
        assert_eq!(multiset_coefficient(&ints(&[2, 1]), &Partition::from_parts(&[1, 1, 1])), int(4));
    }

    #[test]
    fn mul_tables() {
        let t = mul_table(&ints(&[1; 8]), 8);
        for m in 0..=8 {
            for k in 0..=8 {
                assert_eq!(t.get(k, m), partitions_by_length(m, k));
            }
        }
        let t = mul_table(&ints(&[1, 1, 4, 17, 92, 572]), 6);
        assert_eq!(t.row(1)[1..], ints(&[1, 1, 4, 17, 92, 572])[..]);
        assert_eq!(t.column(3)[1..4], ints(&[4, 1, 1])[..]);
        assert_eq!(t.get(2, 6), int(119));
        assert_eq!(t.get(3, 6), int(22));
        let z = mul_table(&[], 4);
        assert_eq!(z.get(0, 0), int(1));
        assert!((0..=4).all(|m| z.column_sum(m) == int(if m == 0 { 1 } else { 0 })));
    }

    /// The partition sum inside Witt's formula, term by term.
    fn witt_inner_by_partitions(v: &WeightedAlphabet, j: usize) -> Rational {
        partitions(j)
            .iter()
            .map(|lambda| {
                let mut weight = Integer::one();
                let mut denom = Integer::one();
                for (i, &k) in lambda.multiplicities().iter().enumerate() {
                    if k > 0 {
                        weight *= v.count(i + 1).pow(k as u32);
                        denom *= factorial(k as u64);
                    }
                }
                Rational::new(factorial(lambda.length() as u64 - 1) * weight, denom)
            })
            .sum()
    }

    #[test]
    fn witt_series_matches_partition_sum() {
        let v = WeightedAlphabet::from_u64(&[2, 1, 0, 3, 1]);
        let n = 12;
        let via_partitions: Vec<Integer> = (1..=n)
            .map(|m| {
                let acc: Rational = (1..=m)
                    .filter(|d| m % d == 0)
                    .map(|d| Rational::new(moebius(d).into(), d.into()) * witt_inner_by_partitions(&v, m / d))
                    .sum();
                acc.to_integer()
            })
            .collect();
        assert_eq!(witt_counts(&v, n).unwrap(), via_partitions);
    }

    #[test]
    fn witt_examples() {
        let q = WeightedAlphabet::from_u64(&[1; 6]);
        assert_eq!(witt_counts(&q, 6).unwrap(), ints(&[1, 1, 2, 3, 6, 9]));
        let s = WeightedAlphabet::from_u64(&[1, 1, 3, 13, 71, 461]);
        assert_eq!(witt_counts(&s, 6).unwrap(), ints(&[1, 1, 4, 17, 92, 572]));
        let one = WeightedAlphabet::from_u64(&[1]);
        assert_eq!(witt_counts(&one, 5).unwrap(), ints(&[1, 0, 0, 0, 0]));
    }

    #[test]
    fn pal_tables() {
        let s = pal_table(&WeightedAlphabet::from_u64(&[1, 1, 3, 13, 71, 461]), 6);
        assert_eq!(s.pal_km(3, 5), int(4));
        assert_eq!(s.pal_km(2, 6), int(3));
        assert_eq!(s.pal_km(4, 6), int(2));
        assert_eq!(s.table.row(1)[1..], ints(&[1, 1, 3, 13, 71, 461])[..]);
        assert_eq!(s.words, ints(&[1, 1, 2, 6, 24, 120, 720]));

        let q = pal_table(&WeightedAlphabet::from_u64(&[1; 12]), 12);
        for m in 1..=12u64 {
            for k in 1..=12u64 {
                let expected = if m % 2 == 0 || k % 2 == 1 {
                    binomial(m.div_ceil(2) - 1, k.div_ceil(2) - 1)
                } else {
                    int(0)
                };
                assert_eq!(q.pal_km(k as usize, m as usize), expected, "k={k} m={m}");
            }
        }

        let e = pal_table(&WeightedAlphabet::from_u64(&[]), 5);
        assert_eq!(e.pal_km(0, 0), int(1));
        assert!((0..=5).all(|m| e.pal(m) == int(if m == 0 { 1 } else { 0 })));
    }

    #[test]
    fn compositions() {
        let v = WeightedAlphabet::from_u64(&[1, 1]);
        let mut got: Vec<_> = weighted_compositions(&v, 3, DEFAULT_WORD_CAP).unwrap().collect();
        got.sort_by(|a, b| a.alpha.cmp(&b.alpha));
        let summary: Vec<_> = got
            .iter()
            .map(|c| (c.alpha.parts().to_vec(), c.pal.clone(), c.nopal.clone(), c.inv))
            .collect();
        assert_eq!(
            summary,
            vec![
                (vec![1, 1, 1], int(1), int(0), 3),
                (vec![1, 2], int(0), int(1), 2),
                (vec![2, 1], int(0), int(1), 2),
            ]
        );
        let r = WeightedAlphabet::from_u64(&[3]);
        let only: Vec<_> = weighted_compositions(&r, 5, DEFAULT_WORD_CAP).unwrap().collect();
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].inv, 10);
        assert_eq!(only[0].pal, int(27));
        let single = WeightedComposition::new(vec![4]);
        assert_eq!(single.inv(), 0);
        let big = WeightedAlphabet::from_u64(&[10]);
        assert_eq!(weighted_compositions(&big, 7, 1000).err().unwrap().name(), "TooLarge");
    }

    #[test]
    fn palindromic_compositions_match_table() {
        for v in [vec![1u64, 1], vec![1, 1, 3, 13], vec![0, 2, 1], vec![3]] {
            let alphabet = WeightedAlphabet::from_u64(&v);
            let table = pal_table(&alphabet, 14);
            for m in 0..=14 {
                let mut by_len = vec![BigInt::zero(); m + 1];
                for alpha in palindromic_compositions(&alphabet, m) {
                    assert!(alpha.is_palindrome());
                    by_len[alpha.length()] += palindromes_of_multiweight(&alphabet, &alpha);
                }
                for (k, count) in by_len.into_iter().enumerate() {
                    assert_eq!(table.pal_km(k, m), count, "v={v:?} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn pal_matches_word_enumeration() {
        for v in [vec![1u64, 1], vec![2], vec![1, 0, 2], vec![2, 1, 1]] {
            let letters = letters_of(&v);
            let table = pal_table(&WeightedAlphabet::from_u64(&v), 10);
            for m in 0..=10 {
                let words = words_of_weight(&letters, m);
                assert_eq!(int(words.len() as i64), table.words[m]);
                for k in 0..=m {
                    let count = words.iter().filter(|w| w.len() == k && w.iter().eq(w.iter().rev())).count();
                    assert_eq!(table.pal_km(k, m), int(count as i64), "v={v:?} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn statistics_identities_to_40() {
        for m in 0..=40 {
            let s = partition_statistics(m);
            assert_eq!(s.self_conjugate as i64, s.even_even_parts as i64 - s.odd_even_parts as i64);
            assert_eq!(s.strict, s.odd_parts);
            let alt: Integer = (0..=m)
                .map(|k| if k % 2 == 0 { partitions_by_length(m, k) } else { -partitions_by_length(m, k) })
                .sum();
            let sign = if m % 2 == 0 { 1 } else { -1 };
            assert_eq!(alt, int(sign * s.self_conjugate as i64));
            assert_eq!(int(s.even_length as i64 - s.odd_length as i64), alt);
        }
    }

    proptest! {
        #[test]
        fn mul_column_sums_are_euler(g in proptest::collection::vec(0i64..=6, 1..=18)) {
            let m = g.len();
            let g = ints(&g);
            let h = crate::series::euler_transform(&g, m).integer_coeffs().unwrap();
            let t = mul_table(&g, m);
            for d in 0..=m {
                prop_assert_eq!(t.column_sum(d), h[d].clone());
            }
        }

        #[test]
        fn pal_parity_and_pairing(v in proptest::collection::vec(0u64..=3, 0..=5)) {
            let t = pal_table(&WeightedAlphabet::from_u64(&v), 12);
            for m in 0..=12 {
                for k in (0..=12).step_by(2) {
                    if m % 2 == 1 {
                        prop_assert!(t.pal_km(k, m).is_zero());
                    }
                }
                prop_assert!((t.nopal(m) % BigInt::from(2)).is_zero());
            }
        }

        #[test]
        fn witt_matches_inverse_euler(v in proptest::collection::vec(0u64..=4, 1..=12)) {
            let n = 12;
            let alphabet = WeightedAlphabet::from_u64(&v);
            let h = crate::series::Series::from_integers(&alphabet.word_counts(n), n, crate::series::Flavor::Ogf);
            let g = crate::series::inverse_euler_transform(&h).unwrap().g;
            prop_assert_eq!(witt_counts(&alphabet, n).unwrap(), g);
        }

        #[test]
        fn inv_statistics(parts in proptest::collection::vec(1usize..=6, 0..=8)) {
            let a = WeightedComposition::new(parts.clone());
            prop_assert_eq!(a.inv(), a.reversed().inv());
            let m = a.weight() as u64;
            let sq: u64 = parts.iter().map(|&x| (x * x) as u64).sum();
            prop_assert_eq!(a.inv(), (m * m - sq) / 2);
        }

        #[test]
        fn compositions_cover_words(v in proptest::collection::vec(0u64..=3, 1..=4), m in 0usize..=8) {
            let alphabet = WeightedAlphabet::from_u64(&v);
            let total: Integer = weighted_compositions(&alphabet, m, DEFAULT_WORD_CAP)
                .unwrap()
                .map(|c| {
                    prop_assert!(c.alpha.is_palindrome() || c.pal.is_zero());
                    Ok(c.pal + c.nopal)
                })
                .collect::<Result<Vec<_>, TestCaseError>>()?
                .into_iter()
                .sum();
            prop_assert_eq!(total, alphabet.word_counts(m)[m].clone());
        }
    }
}
