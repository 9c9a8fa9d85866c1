//! The convolution algebra `End(H)` and everything built from it: Adams
//! operators, the Takeuchi antipode and the Eulerian idempotents.

use adams_core::ring::binomial_rational;
use adams_core::{CoefficientRing, Integer, Rational};

use crate::instance::{HopfInstance, OracleError};
use crate::matrix::Matrix;

/// A degree-preserving linear map, one square block per degree `0..=top`.
/// Columns are images of basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedEndomorphism<R: CoefficientRing> {
    blocks: Vec<Matrix<R>>,
}

impl<R: CoefficientRing> GradedEndomorphism<R> {
    pub fn new(blocks: Vec<Matrix<R>>) -> Self {
        assert!(blocks.iter().all(Matrix::is_square));
        GradedEndomorphism { blocks }
    }

    pub fn identity(inst: &HopfInstance<R>, top: usize) -> Self {
        GradedEndomorphism { blocks: (0..=top).map(|m| Matrix::identity(inst.dim(m))).collect() }
    }

    /// `ι ∘ ε`.
    pub fn unit_counit(inst: &HopfInstance<R>, top: usize) -> Self {
        let mut blocks: Vec<Matrix<R>> = (0..=top).map(|m| Matrix::zeros(inst.dim(m), inst.dim(m))).collect();
        blocks[0] = Matrix::identity(1);
        GradedEndomorphism { blocks }
    }

    pub fn top(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn block(&self, m: usize) -> &Matrix<R> {
        &self.blocks[m]
    }

    pub fn into_block(mut self, m: usize) -> Matrix<R> {
        self.blocks.swap_remove(m)
    }

    pub fn add(&self, o: &Self) -> Self {
        GradedEndomorphism { blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GradedEndomorphism { blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &R) -> Self {
        GradedEndomorphism { blocks: self.blocks.iter().map(|a| a.scale(c)).collect() }
    }

    /// Composition `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Self {
        GradedEndomorphism { blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.mul(b)).collect() }
    }

    fn check(&self, inst: &HopfInstance<R>) -> Result<(), OracleError> {
        let expected = inst.max_degree() + 1;
        if self.blocks.len() > expected || self.blocks.iter().enumerate().any(|(m, b)| b.rows() != inst.dim(m)) {
            return Err(OracleError::DimensionMismatch { expected, found: self.blocks.len() });
        }
        Ok(())
    }
}

/// `μ ∘ (A ⊗ B) ∘ Δ` on degrees up to the shorter of the two.
pub fn convolution<R: CoefficientRing>(
    a: &GradedEndomorphism<R>,
    b: &GradedEndomorphism<R>,
    inst: &HopfInstance<R>,
) -> Result<GradedEndomorphism<R>, OracleError> {
    a.check(inst)?;
    b.check(inst)?;
    if a.top() != b.top() {
        return Err(OracleError::DimensionMismatch { expected: a.top() + 1, found: b.top() + 1 });
    }
    let blocks = (0..=a.top())
        .map(|m| {
            let mut out = Matrix::zeros(inst.dim(m), inst.dim(m));
            for x in 0..inst.dim(m) {
                for t in inst.coproduct_of(m, x) {
                    let r = m - t.p;
                    let ab = a.block(t.p);
                    let bb = b.block(r);
                    for i in 0..inst.dim(t.p) {
                        let ai = ab.get(i, t.a);
                        if ai.is_zero() {
                            continue;
                        }
                        let ci = t.coef.clone() * ai.clone();
                        for j in 0..inst.dim(r) {
                            let bj = bb.get(j, t.b);
                            if bj.is_zero() {
                                continue;
                            }
                            let c = ci.clone() * bj.clone();
                            for (k, mu) in inst.mul_basis(t.p, i, r, j) {
                                out.add_to(*k, x, c.clone() * mu.clone());
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    Ok(GradedEndomorphism { blocks })
}

/// Convolution powers `(id - ι∘ε)^{*k}` for `k = 0..=m` on degrees `0..=m`.
/// The `k`-th power vanishes below degree `k`.
pub fn augmentation_powers<R: CoefficientRing>(inst: &HopfInstance<R>, m: usize) -> Result<Vec<GradedEndomorphism<R>>, OracleError> {
    inst.check_degree(m)?;
    let e = GradedEndomorphism::unit_counit(inst, m);
    let j = GradedEndomorphism::identity(inst, m).sub(&e);
    let mut out = vec![e];
    for _ in 0..m {
        let next = convolution(out.last().expect("nonempty"), &j, inst)?;
        out.push(next);
    }
    Ok(out)
}

fn embed<R: CoefficientRing>(r: &Rational) -> Result<R, OracleError> {
    R::try_from_rational(r).ok_or_else(|| OracleError::NotInRing(r.to_string()))
}

/// `Ψ_n|H_m = Σ_k C(n, k) (id - ι∘ε)^{*k}` for several `n` at once.
pub fn adams_matrices<R: CoefficientRing>(inst: &HopfInstance<R>, ns: &[Rational], m: usize) -> Result<Vec<Matrix<R>>, OracleError> {
    let powers = augmentation_powers(inst, m)?;
    ns.iter()
        .map(|n| {
            let mut acc = Matrix::zeros(inst.dim(m), inst.dim(m));
            for (k, pk) in powers.iter().enumerate() {
                acc = acc.add(&pk.block(m).scale(&embed(&binomial_rational(n, k as u64))?));
            }
            Ok(acc)
        })
        .collect()
}

pub fn adams_matrix<R: CoefficientRing>(inst: &HopfInstance<R>, n: &Rational, m: usize) -> Result<Matrix<R>, OracleError> {
    Ok(adams_matrices(inst, std::slice::from_ref(n), m)?.remove(0))
}

/// Graded version of [`adams_matrix`] on degrees `0..=m`.
pub fn adams_endomorphism<R: CoefficientRing>(inst: &HopfInstance<R>, n: &Rational, m: usize) -> Result<GradedEndomorphism<R>, OracleError> {
    let powers = augmentation_powers(inst, m)?;
    let mut acc = GradedEndomorphism::unit_counit(inst, m).scale(&R::zero());
    for (k, pk) in powers.iter().enumerate() {
        acc = acc.add(&pk.scale(&embed(&binomial_rational(n, k as u64))?));
    }
    Ok(acc)
}

/// Takeuchi: `S = Σ_{k=0}^m (ι∘ε - id)^{*k}` on degrees `0..=m`.
pub fn antipode<R: CoefficientRing>(inst: &HopfInstance<R>, m: usize) -> Result<GradedEndomorphism<R>, OracleError> {
    let powers = augmentation_powers(inst, m)?;
    let mut acc = GradedEndomorphism::unit_counit(inst, m).scale(&R::zero());
    for (k, pk) in powers.iter().enumerate() {
        acc = if k % 2 == 0 { acc.add(pk) } else { acc.sub(pk) };
    }
    Ok(acc)
}

pub fn antipode_matrix<R: CoefficientRing>(inst: &HopfInstance<R>, m: usize) -> Result<Matrix<R>, OracleError> {
    Ok(antipode(inst, m)?.into_block(m))
}

/// `id^{*n}` for `n ≥ 0`, `S^{*|n|}` for `n < 0`, by repeated convolution.
pub fn convolution_power<R: CoefficientRing>(inst: &HopfInstance<R>, n: i64, m: usize) -> Result<GradedEndomorphism<R>, OracleError> {
    inst.check_degree(m)?;
    let base = if n >= 0 { GradedEndomorphism::identity(inst, m) } else { antipode(inst, m)? };
    let mut acc = GradedEndomorphism::unit_counit(inst, m);
    for _ in 0..n.unsigned_abs() {
        acc = convolution(&acc, &base, inst)?;
    }
    Ok(acc)
}

/// `E^{(0)}, …, E^{(k_max)}` on degrees `0..=m`, from `E^{(1)} = log(id)`
/// and `E^{(k)} = (E^{(1)})^{*k} / k!`.
pub fn eulerian_idempotents<R: CoefficientRing>(
    inst: &HopfInstance<R>,
    k_max: usize,
    m: usize,
) -> Result<Vec<GradedEndomorphism<R>>, OracleError> {
    if !inst.is_commutative() && !inst.is_cocommutative() {
        return Err(OracleError::NotApplicable("instance is neither commutative nor cocommutative".into()));
    }
    let powers = augmentation_powers(inst, m)?;
    let mut e1 = GradedEndomorphism::unit_counit(inst, m).scale(&R::zero());
    for (k, pk) in powers.iter().enumerate().skip(1) {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        e1 = e1.add(&pk.scale(&embed(&Rational::new(Integer::from(sign), Integer::from(k)))?));
    }
    let mut out = vec![GradedEndomorphism::unit_counit(inst, m)];
    let mut power = GradedEndomorphism::unit_counit(inst, m);
    let mut factorial = Integer::from(1);
    for k in 1..=k_max {
        power = convolution(&power, &e1, inst)?;
        factorial *= k;
        out.push(power.scale(&embed(&Rational::new(Integer::from(1), factorial.clone()))?));
    }
    Ok(out)
}

/// Least `d ≥ 1` with `(S² - id)^d = 0` on `H_m`.
pub fn nilpotency_order<R: CoefficientRing>(inst: &HopfInstance<R>, m: usize) -> Result<usize, OracleError> {
    let s = antipode_matrix(inst, m)?;
    let n = s.mul(&s).sub(&Matrix::identity(inst.dim(m)));
    let bound = m.max(1);
    let mut power = n.clone();
    for d in 1..=bound {
        if power.is_zero() {
            return Ok(d);
        }
        power = power.mul(&n);
    }
    Err(OracleError::NotNilpotent { m })
}
