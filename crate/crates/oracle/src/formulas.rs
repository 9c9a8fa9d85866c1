//! Basis-level antipode formulas and closed-form comparisons for built
//! instances.

use adams_core::spectra::{char_poly_adams, DimensionProfile, SpectraError};
use adams_core::{CoefficientRing, Integer, Poly, Rational};
use serde::Serialize;

use crate::builders::compositions;
use crate::convolution::adams_matrices;
use crate::instance::{HopfInstance, InstanceKind, OracleError};
use crate::matrix::{char_poly_exact, Matrix};

/// Compositions obtained from `alpha` by merging runs of adjacent parts.
pub fn coarsenings(alpha: &[usize]) -> Vec<Vec<usize>> {
    if alpha.is_empty() {
        return vec![Vec::new()];
    }
    // each of the ℓ-1 gaps is either kept or merged
    let gaps = alpha.len() - 1;
    (0u64..1 << gaps)
        .map(|mask| {
            let mut out = vec![alpha[0]];
            for (g, &a) in alpha[1..].iter().enumerate() {
                if mask >> g & 1 == 1 {
                    *out.last_mut().expect("nonempty") += a;
                } else {
                    out.push(a);
                }
            }
            out
        })
        .collect()
}

/// The antipode on `H_m` predicted by the basis-level formula of the
/// instance's family, or `None` for imported instances:
///
/// * words: `S(x_1…x_k) = (-1)^k q^{Σ_{a<b}|x_a||x_b|} x_k…x_1`;
/// * power sums: `S(p_λ) = (-1)^{ℓ(λ)} p_λ`;
/// * monomials: `S(M_α) = (-1)^{ℓ(α)} Σ_{β coarsening α} M_{rev β}`.
pub fn antipode_formula<R: CoefficientRing>(inst: &HopfInstance<R>, m: usize) -> Option<Matrix<R>> {
    let d = inst.dim(m);
    let mut out = Matrix::zeros(d, d);
    let sign = |len: usize| if len % 2 == 0 { R::one() } else { -R::one() };
    match inst.kind() {
        InstanceKind::Shuffle { letter_weights, words } => {
            for (x, w) in words[m].iter().enumerate() {
                let mut inv = 0u64;
                for a in 0..w.len() {
                    for b in a + 1..w.len() {
                        inv += (letter_weights[w[a]] * letter_weights[w[b]]) as u64;
                    }
                }
                let rev: Vec<usize> = w.iter().rev().copied().collect();
                let y = words[m].iter().position(|u| *u == rev).expect("reversal is a word");
                out.set(y, x, sign(w.len()) * inst.braid().pow_u(inv));
            }
        }
        InstanceKind::SymPowerSum { partitions } => {
            for (x, l) in partitions[m].iter().enumerate() {
                out.set(x, x, sign(l.len()));
            }
        }
        InstanceKind::QSymMonomial { compositions: comps } => {
            debug_assert_eq!(comps[m], compositions(m));
            for (x, alpha) in comps[m].iter().enumerate() {
                for beta in coarsenings(alpha) {
                    let rev: Vec<usize> = beta.into_iter().rev().collect();
                    let y = comps[m].iter().position(|c| *c == rev).expect("composition of m");
                    out.add_to(y, x, sign(alpha.len()));
                }
            }
        }
        InstanceKind::Custom => return None,
    }
    Some(out)
}

/// The dimension profile `h_m = dim H_m` of an instance.
pub fn dimension_profile<R: CoefficientRing>(inst: &HopfInstance<R>) -> Result<DimensionProfile, SpectraError> {
    DimensionProfile::from_h(inst.dims().into_iter().map(Integer::from).collect(), false)
}

/// One comparison of an oracle characteristic polynomial with the closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharPolyCheck {
    pub n: String,
    pub m: usize,
    pub oracle: String,
    pub closed_form: String,
    pub ok: bool,
}

/// `char_poly_exact(Ψ_n|H_m)` against `Π_k (x - n^k)^{mul(k, m)}` for every
/// `n` in `ns` and `m ≤ max_degree`.
pub fn check_adams_char_polys(
    inst: &HopfInstance<Rational>,
    ns: &[Rational],
    max_degree: usize,
) -> Result<Vec<CharPolyCheck>, OracleError> {
    let profile = dimension_profile(inst).map_err(|e| OracleError::NotApplicable(e.to_string()))?;
    let mut out = Vec::new();
    for m in 0..=max_degree {
        let mats = adams_matrices(inst, ns, m)?;
        for (n, a) in ns.iter().zip(mats) {
            let oracle: Poly<Rational> = char_poly_exact(&a);
            let closed = char_poly_adams(&profile, n, m)
                .map_err(|e| OracleError::NotApplicable(e.to_string()))?
                .to_poly();
            out.push(CharPolyCheck {
                n: n.to_string(),
                m,
                ok: oracle == closed,
                oracle: oracle.to_string(),
                closed_form: closed.to_string(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_qsym_monomial, build_shuffle};
    use crate::convolution::antipode_matrix;
    use crate::instance::BuildOptions;
    use adams_core::combinatorics::WeightedAlphabet;
    use adams_core::ring::int;
    use adams_core::Laurent;

    #[test]
    fn coarsening_counts() {
        assert_eq!(coarsenings(&[1, 2, 1]).len(), 4);
        assert_eq!(coarsenings(&[3]), vec![vec![3]]);
    }

    #[test]
    fn qsym_degree_three() {
        let inst = build_qsym_monomial::<Rational>(3, BuildOptions::default()).unwrap();
        assert_eq!(antipode_matrix(&inst, 3).unwrap(), antipode_formula(&inst, 3).unwrap());
    }

    #[test]
    fn q_shuffle_degree_three() {
        let inst = build_shuffle(&WeightedAlphabet::from_u64(&[1, 1]), Laurent::q(), 3, BuildOptions::default()).unwrap();
        let s = antipode_matrix(&inst, 3).unwrap();
        assert_eq!(s, antipode_formula(&inst, 3).unwrap());
        // S(x1 x1 x1) = -q^3 x1 x1 x1
        assert_eq!(s.get(0, 0), &Laurent::monomial(-1, 3));
    }

    #[test]
    fn shuffle_adams_example() {
        let inst = build_shuffle(&WeightedAlphabet::from_u64(&[1, 1]), Rational::from_integer(int(1)), 3, BuildOptions::default()).unwrap();
        let checks = check_adams_char_polys(&inst, &[Rational::from_integer(int(3))], 3).unwrap();
        assert!(checks.iter().all(|c| c.ok), "{checks:?}");
        let a = crate::convolution::adams_matrix(&inst, &Rational::from_integer(int(3)), 3).unwrap();
        // h_3 = 3 and g = (1, 1, 1): one eigenvalue each of 3, 9, 27
        let expected = Poly::from_ints(&[-3, 1]).mul(&Poly::from_ints(&[-9, 1])).mul(&Poly::from_ints(&[-27, 1]));
        assert_eq!(char_poly_exact(&a), expected);
    }
}
