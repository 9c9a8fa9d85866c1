//! Public API against brute-force enumeration of words and set partitions.

use adams_core::cofree_q::{cofree_trace, q_trace};
use adams_core::combinatorics::{pal_table, WeightedAlphabet, DEFAULT_WORD_CAP};
use adams_core::ring::{int, rational};
use adams_core::species::{species_antipode_trace, SpeciesProfile};
use adams_core::spectra::{char_poly_adams, trace_adams, DimensionProfile};
use adams_core::{Integer, Rational};

const COUNTS: [u64; 3] = [2, 1, 1];
const MAX: usize = 8;

/// Letters as (weight, index); `COUNTS[w - 1]` letters of weight `w`.
fn letters() -> Vec<(usize, u64)> {
    COUNTS.iter().enumerate().flat_map(|(i, &c)| (0..c).map(move |j| (i + 1, j))).collect()
}

/// Every word of total weight `m`.
fn words(m: usize) -> Vec<Vec<(usize, u64)>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for l in letters() {
        if l.0 <= m {
            for mut w in words(m - l.0) {
                w.insert(0, l);
                out.push(w);
            }
        }
    }
    out
}

/// Strictly smaller than every proper rotation.
fn is_lyndon(w: &[(usize, u64)]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &[&w[i..], &w[..i]].concat()[..])
}

#[test]
fn dimensions_and_lyndon_words() {
    let a = WeightedAlphabet::from_u64(&COUNTS);
    let p = DimensionProfile::from_v(&a, MAX).unwrap();
    for m in 0..=MAX {
        let ws = words(m);
        assert_eq!(p.h()[m], int(ws.len() as i64), "h_{m}");
        if m > 0 {
            let lyndon = ws.iter().filter(|w| is_lyndon(w)).count();
            assert_eq!(p.g()[m - 1], int(lyndon as i64), "g_{m}");
        }
    }
}

#[test]
fn palindromes_by_length() {
    let a = WeightedAlphabet::from_u64(&COUNTS);
    let t = pal_table(&a, MAX).table;
    for m in 0..=MAX {
        let ws = words(m);
        for k in 0..=m {
            let direct = ws.iter().filter(|w| w.len() == k && w.iter().eq(w.iter().rev())).count();
            assert_eq!(t.get(k, m), int(direct as i64), "pal({k}, {m})");
        }
        // the antipode reverses words up to sign, so its trace counts signed palindromes
        let signed: Integer = ws.iter().filter(|w| w.iter().eq(w.iter().rev())).map(|w| if w.len() % 2 == 0 { int(1) } else { int(-1) }).sum();
        assert_eq!(cofree_trace(&a, m), signed, "m = {m}");
        let p = DimensionProfile::from_v(&a, MAX).unwrap();
        assert_eq!(trace_adams(&p, &rational(-1, 1), m).unwrap(), Rational::from_integer(signed));
    }
}

#[test]
fn q_trace_at_one_counts_signed_palindromes() {
    let a = WeightedAlphabet::from_u64(&COUNTS);
    for m in 0..=6 {
        let tr = q_trace(&a, m, DEFAULT_WORD_CAP).unwrap();
        let signed: i64 = words(m).iter().filter(|w| w.iter().eq(w.iter().rev())).map(|w| if w.len() % 2 == 0 { 1 } else { -1 }).sum();
        assert_eq!(tr.at_one(), int(signed));
    }
}

#[test]
fn small_char_polys() {
    let ssym = DimensionProfile::preset("ssym", 4).unwrap();
    let f = char_poly_adams(&ssym, &rational(-1, 1), 3).unwrap();
    let eig = f.eigenvalues();
    assert_eq!(eig.get(&rational(1, 1)), Some(&int(1)));
    assert_eq!(eig.get(&rational(-1, 1)), Some(&int(5)));
    let peak = DimensionProfile::preset("peak", 8).unwrap();
    let traces: Vec<_> = (0..=8).map(|m| trace_adams(&peak, &rational(-1, 1), m).unwrap()).collect();
    assert_eq!(traces, [1, -1, 1, -2, 1, -3, 2, -5, 3].map(|x| rational(x, 1)));
}

/// Bell numbers by counting restricted growth strings.
fn set_partitions(m: usize) -> i64 {
    fn go(pos: usize, m: usize, blocks: usize) -> i64 {
        if pos == m {
            return 1;
        }
        (0..=blocks).map(|b| go(pos + 1, m, blocks.max(b + 1))).sum()
    }
    go(0, m, 0)
}

#[test]
fn species_dimensions() {
    let pi = SpeciesProfile::preset("Pi", 9).unwrap();
    for m in 0..=9 {
        assert_eq!(pi.h().coeff(m), &rational(set_partitions(m), 1), "m = {m}");
    }
    let sigma = SpeciesProfile::preset("Sigma", 6).unwrap();
    let tr = species_antipode_trace(&sigma, 6).unwrap();
    assert!((1..=6).all(|m| tr.values[m] == rational(-1, 1)));
}
