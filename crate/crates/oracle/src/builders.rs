//! Concrete instances: (q-)shuffle algebras, Sym on power sums, QSym on
//! monomials.

use std::collections::{BTreeMap, HashMap};

use adams_core::combinatorics::WeightedAlphabet;
use adams_core::ring::binomial;
use adams_core::CoefficientRing;

use crate::instance::{finish_sparse, BuildOptions, CoproductTerm, HopfInstance, InstanceKind, OracleError, SparseVec};

fn letter_name(weight: usize, index: usize, count: usize) -> String {
    if count == 1 {
        format!("x{weight}")
    } else if count <= 26 {
        format!("x{weight}{}", (b'a' + index as u8) as char)
    } else {
        format!("x{weight}_{index}")
    }
}

/// Graded families of basis objects plus index lookup.
struct Basis<T> {
    items: Vec<Vec<T>>,
    index: Vec<HashMap<T, usize>>,
}

impl<T: Clone + Eq + std::hash::Hash> Basis<T> {
    fn new(items: Vec<Vec<T>>) -> Self {
        let index = items.iter().map(|d| d.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect()).collect();
        Basis { items, index }
    }

    fn dim(&self, m: usize) -> usize {
        self.items[m].len()
    }

    fn find(&self, m: usize, t: &T) -> usize {
        self.index[m][t]
    }
}

fn check_dims(dims: &[usize], opts: BuildOptions) -> Result<(), OracleError> {
    if opts.force {
        return Ok(());
    }
    match dims.iter().enumerate().find(|(_, &d)| d > opts.dimension_cap) {
        Some((degree, &dim)) => Err(OracleError::TooLarge { degree, dim, cap: opts.dimension_cap }),
        None => Ok(()),
    }
}

/// Builds `product[p][r]` from a rule returning `(degree p+r item, coefficient)` pairs.
fn product_table<T, R, F>(basis: &Basis<T>, top: usize, mut rule: F) -> Vec<Vec<Vec<SparseVec<R>>>>
where
    T: Clone + Eq + std::hash::Hash,
    R: CoefficientRing,
    F: FnMut(&T, &T) -> Vec<(T, R)>,
{
    (0..=top)
        .map(|p| {
            (0..=top - p)
                .map(|r| {
                    let mut block = Vec::with_capacity(basis.dim(p) * basis.dim(r));
                    for x in &basis.items[p] {
                        for y in &basis.items[r] {
                            let mut acc = BTreeMap::new();
                            for (z, c) in rule(x, y) {
                                let e = acc.entry(basis.find(p + r, &z)).or_insert_with(R::zero);
                                *e = e.clone() + c;
                            }
                            block.push(finish_sparse(acc));
                        }
                    }
                    block
                })
                .collect()
        })
        .collect()
}

/// Deconcatenation of sequences whose entries carry a degree.
fn deconcatenation<T, R, W>(basis: &Basis<Vec<T>>, top: usize, weight: W) -> Vec<Vec<Vec<CoproductTerm<R>>>>
where
    T: Clone + Eq + std::hash::Hash,
    R: CoefficientRing,
    W: Fn(&T) -> usize,
{
    (0..=top)
        .map(|m| {
            basis.items[m]
                .iter()
                .map(|w| {
                    let mut p = 0;
                    let mut terms = Vec::with_capacity(w.len() + 1);
                    for cut in 0..=w.len() {
                        if cut > 0 {
                            p += weight(&w[cut - 1]);
                        }
                        let (a, b) = (w[..cut].to_vec(), w[cut..].to_vec());
                        terms.push(CoproductTerm { p, a: basis.find(p, &a), b: basis.find(m - p, &b), coef: R::one() });
                    }
                    terms
                })
                .collect()
        })
        .collect()
}

/// `Σ_σ q^{inv_x(σ)} σ(u, w)`: a letter `y` of `w` placed before the remaining
/// letters of `u` contributes `|y|` times their total weight.
fn q_shuffles(u: &[usize], w: &[usize], weights: &[usize]) -> Vec<(Vec<usize>, u64)> {
    fn go(u: &[usize], w: &[usize], weights: &[usize], u_rest: u64, prefix: &mut Vec<usize>, exp: u64, out: &mut Vec<(Vec<usize>, u64)>) {
        if u.is_empty() && w.is_empty() {
            out.push((prefix.clone(), exp));
            return;
        }
        if let Some((&x, rest)) = u.split_first() {
            prefix.push(x);
            go(rest, w, weights, u_rest - weights[x] as u64, prefix, exp, out);
            prefix.pop();
        }
        if let Some((&y, rest)) = w.split_first() {
            prefix.push(y);
            go(u, rest, weights, u_rest, prefix, exp + weights[y] as u64 * u_rest, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    let total: u64 = u.iter().map(|&x| weights[x] as u64).sum();
    go(u, w, weights, total, &mut Vec::new(), 0, &mut out);
    out
}

/// The shuffle algebra on words over `v`, deformed by `q` (use `q = 1` for
/// the ordinary shuffle Hopf algebra), with deconcatenation coproduct.
pub fn build_shuffle<R: CoefficientRing>(
    v: &WeightedAlphabet,
    q: R,
    max_degree: usize,
    opts: BuildOptions,
) -> Result<HopfInstance<R>, OracleError> {
    let counts = v.word_counts(max_degree);
    let dims: Vec<usize> = counts
        .iter()
        .enumerate()
        .map(|(degree, c)| {
            usize::try_from(c).map_err(|_| OracleError::TooLarge { degree, dim: usize::MAX, cap: opts.dimension_cap })
        })
        .collect::<Result<_, _>>()?;
    check_dims(&dims, opts)?;
    let mut letter_weights = Vec::new();
    let mut names = Vec::new();
    for n in 1..=max_degree {
        let c = usize::try_from(&v.count(n)).map_err(|_| OracleError::TooLarge { degree: n, dim: usize::MAX, cap: opts.dimension_cap })?;
        for j in 0..c {
            letter_weights.push(n);
            names.push(letter_name(n, j, c));
        }
    }
    let mut words: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for m in 1..=max_degree {
        let mut level = Vec::new();
        for (x, &w) in letter_weights.iter().enumerate() {
            if w <= m {
                for tail in &words[m - w] {
                    let mut word = vec![x];
                    word.extend_from_slice(tail);
                    level.push(word);
                }
            }
        }
        words.push(level);
    }
    let labels = words
        .iter()
        .map(|d| {
            d.iter()
                .map(|w| if w.is_empty() { "1".to_string() } else { w.iter().map(|&x| names[x].as_str()).collect::<Vec<_>>().join(" ") })
                .collect()
        })
        .collect();
    let basis = Basis::new(words.clone());
    let product = product_table(&basis, max_degree, |u, w| {
        q_shuffles(u, w, &letter_weights).into_iter().map(|(z, e)| (z, q.pow_u(e))).collect()
    });
    let coproduct = deconcatenation(&basis, max_degree, |&x| letter_weights[x]);
    let kind = InstanceKind::Shuffle { letter_weights: letter_weights.clone(), words };
    HopfInstance::new(labels, product, coproduct, q, kind, opts)
}

fn partitions_desc(m: usize, max_part: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(m)).rev() {
        for mut rest in partitions_desc(m - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Sym in the power-sum basis: `p_λ p_μ = p_{λ∪μ}`, every `p_n` primitive.
pub fn build_sym_powersum<R: CoefficientRing>(max_degree: usize, opts: BuildOptions) -> Result<HopfInstance<R>, OracleError> {
    let partitions: Vec<Vec<Vec<usize>>> = (0..=max_degree).map(|m| partitions_desc(m, m)).collect();
    check_dims(&partitions.iter().map(Vec::len).collect::<Vec<_>>(), opts)?;
    let labels = partitions
        .iter()
        .map(|d| {
            d.iter()
                .map(|l| if l.is_empty() { "1".to_string() } else { format!("p[{}]", l.iter().map(usize::to_string).collect::<Vec<_>>().join(",")) })
                .collect()
        })
        .collect();
    let basis = Basis::new(partitions.clone());
    let product = product_table(&basis, max_degree, |a, b| {
        let mut z: Vec<usize> = a.iter().chain(b).copied().collect();
        z.sort_unstable_by(|x, y| y.cmp(x));
        vec![(z, R::one())]
    });
    let coproduct = (0..=max_degree)
        .map(|m| {
            partitions[m]
                .iter()
                .map(|lambda| {
                    // multiplicities of each distinct part
                    let mut mult: Vec<(usize, usize)> = Vec::new();
                    for &part in lambda {
                        match mult.last_mut() {
                            Some((x, c)) if *x == part => *c += 1,
                            _ => mult.push((part, 1)),
                        }
                    }
                    let mut terms = Vec::new();
                    let mut choice = vec![0usize; mult.len()];
                    loop {
                        let mut left = Vec::new();
                        let mut right = Vec::new();
                        let mut coef = R::one();
                        for ((part, c), &j) in mult.iter().zip(&choice) {
                            left.extend(std::iter::repeat(*part).take(j));
                            right.extend(std::iter::repeat(*part).take(c - j));
                            coef = coef * R::from_integer(&binomial(*c as u64, j as u64));
                        }
                        let p: usize = left.iter().sum();
                        terms.push(CoproductTerm { p, a: basis.find(p, &left), b: basis.find(m - p, &right), coef });
                        let mut i = 0;
                        while i < choice.len() && choice[i] == mult[i].1 {
                            choice[i] = 0;
                            i += 1;
                        }
                        if i == choice.len() {
                            break;
                        }
                        choice[i] += 1;
                    }
                    terms
                })
                .collect()
        })
        .collect();
    HopfInstance::new(labels, product, coproduct, R::one(), InstanceKind::SymPowerSum { partitions }, opts)
}

pub(crate) fn compositions(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=m {
        for mut rest in compositions(m - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Overlapping shuffles: at each step take the head of `a`, of `b`, or merge
/// both heads into one part.
fn quasi_shuffles(a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
    match (a.split_first(), b.split_first()) {
        (None, _) => vec![b.to_vec()],
        (_, None) => vec![a.to_vec()],
        (Some((&x, ra)), Some((&y, rb))) => {
            let mut out = Vec::new();
            for (head, rest) in [(x, quasi_shuffles(ra, b)), (y, quasi_shuffles(a, rb)), (x + y, quasi_shuffles(ra, rb))] {
                for mut r in rest {
                    r.insert(0, head);
                    out.push(r);
                }
            }
            out
        }
    }
}

/// QSym in the monomial basis: quasi-shuffle product, deconcatenation coproduct.
pub fn build_qsym_monomial<R: CoefficientRing>(max_degree: usize, opts: BuildOptions) -> Result<HopfInstance<R>, OracleError> {
    let comps: Vec<Vec<Vec<usize>>> = (0..=max_degree).map(compositions).collect();
    check_dims(&comps.iter().map(Vec::len).collect::<Vec<_>>(), opts)?;
    let labels = comps
        .iter()
        .map(|d| {
            d.iter()
                .map(|a| if a.is_empty() { "1".to_string() } else { format!("M({})", a.iter().map(usize::to_string).collect::<Vec<_>>().join(",")) })
                .collect()
        })
        .collect();
    let basis = Basis::new(comps.clone());
    let product = product_table(&basis, max_degree, |a, b| quasi_shuffles(a, b).into_iter().map(|z| (z, R::one())).collect());
    let coproduct = deconcatenation(&basis, max_degree, |&part| part);
    HopfInstance::new(labels, product, coproduct, R::one(), InstanceKind::QSymMonomial { compositions: comps }, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use adams_core::ring::int;
    use adams_core::{Laurent, Rational};
    use num_traits::One;

    fn one() -> Rational {
        Rational::from_integer(int(1))
    }

    #[test]
    fn shuffle_dimensions_and_products() {
        let a = build_shuffle(&WeightedAlphabet::from_u64(&[1]), one(), 3, BuildOptions::default()).unwrap();
        assert_eq!(a.dims(), vec![1, 1, 1, 1]);
        assert_eq!(a.mul_basis(1, 0, 1, 0), &vec![(0, Rational::from_integer(int(2)))]);
        let b = build_shuffle(&WeightedAlphabet::from_u64(&[2]), one(), 4, BuildOptions::default()).unwrap();
        assert_eq!(b.dims(), vec![1, 2, 4, 8, 16]);
        assert!(a.is_commutative() && b.is_commutative());
        assert!(!b.is_cocommutative());
    }

    #[test]
    fn q_shuffle_statistic() {
        let inst = build_shuffle(&WeightedAlphabet::from_u64(&[1, 1]), Laurent::q(), 4, BuildOptions::default()).unwrap();
        assert_eq!(inst.labels(1), ["x1"]);
        assert_eq!(inst.labels(3), ["x1 x1 x1", "x1 x2", "x2 x1"]);
        // x1 · x2 = x1x2 + q^{1·2} x2x1
        let prod = inst.mul_basis(1, 0, 2, 1);
        assert_eq!(prod, &vec![(1, Laurent::one()), (2, Laurent::q_pow(2))]);
        assert!(!inst.is_commutative());
    }

    #[test]
    fn sym_and_qsym() {
        let sym = build_sym_powersum::<Rational>(6, BuildOptions::default()).unwrap();
        assert_eq!(sym.dims(), vec![1, 1, 2, 3, 5, 7, 11]);
        assert!(sym.is_commutative() && sym.is_cocommutative());
        // p_(3) is primitive
        assert_eq!(sym.coproduct_of(3, 0).len(), 2);
        let qs = build_qsym_monomial::<Rational>(4, BuildOptions::default()).unwrap();
        assert_eq!(qs.dims(), vec![1, 1, 2, 4, 8]);
        // M(1)·M(1) = 2 M(1,1) + M(2)
        let labels = qs.labels(2);
        let prod: Vec<(String, String)> = qs.mul_basis(1, 0, 1, 0).iter().map(|(k, c)| (labels[*k].clone(), c.to_string())).collect();
        assert_eq!(prod, vec![("M(1,1)".to_string(), "2".to_string()), ("M(2)".to_string(), "1".to_string())]);
        assert!(qs.is_commutative());
    }

    #[test]
    fn caps_and_axiom_failures() {
        let opts = BuildOptions { dimension_cap: 10, ..BuildOptions::default() };
        let err = build_shuffle(&WeightedAlphabet::from_u64(&[2]), one(), 5, opts).unwrap_err();
        assert_eq!(err.name(), "TooLarge");
        assert!(build_shuffle(&WeightedAlphabet::from_u64(&[2]), one(), 5, BuildOptions { force: true, ..opts }).is_ok());
        let mut bad = build_qsym_monomial::<Rational>(3, BuildOptions::default()).unwrap();
        bad.product[1][1][0] = vec![(0, one())];
        assert_eq!(bad.verify_axioms().unwrap_err().name(), "AxiomViolated");
    }

    #[test]
    fn json_round_trip() {
        let inst = build_shuffle(&WeightedAlphabet::from_u64(&[1, 1]), Laurent::q(), 3, BuildOptions::default()).unwrap();
        let js = inst.to_json();
        let back = HopfInstance::<Laurent>::from_json(&js, BuildOptions::default()).unwrap();
        assert_eq!(back.dims(), inst.dims());
        assert_eq!(back.to_json(), js);
        assert_eq!(HopfInstance::<Rational>::from_json(&js, BuildOptions::default()).unwrap_err().name(), "Malformed");
    }
}
