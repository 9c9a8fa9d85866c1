//! Graded connected (q-)bialgebras given by explicit structure constants.

use std::collections::BTreeMap;

use adams_core::combinatorics::CombinatoricsError;
use adams_core::{CoefficientRing, Integer, Laurent, Rational};
use serde::{Deserialize, Serialize};

/// Refuse instances with any graded piece larger than this unless forced.
pub const DEFAULT_DIMENSION_CAP: usize = 2000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("degree {degree} has dimension {dim}, above the cap {cap}")]
    TooLarge { degree: usize, dim: usize, cap: usize },
    #[error("{axiom} fails: {detail}")]
    AxiomViolated { axiom: &'static str, detail: String },
    #[error("endomorphism has {found} graded pieces or wrong block sizes, instance needs {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("{0} is not an element of the coefficient ring")]
    NotInRing(String),
    #[error("(S^2 - id) is not nilpotent of order at most {m} on degree {m}")]
    NotNilpotent { m: usize },
    #[error("degree {m} exceeds the instance's maximum degree {max}")]
    DegreeOutOfRange { m: usize, max: usize },
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}

impl OracleError {
    pub fn name(&self) -> &'static str {
        match self {
            OracleError::TooLarge { .. } => "TooLarge",
            OracleError::AxiomViolated { .. } => "AxiomViolated",
            OracleError::DimensionMismatch { .. } => "DimensionMismatch",
            OracleError::NotApplicable(_) => "NotApplicable",
            OracleError::NotInRing(_) => "NotInRing",
            OracleError::NotNilpotent { .. } => "NotNilpotent",
            OracleError::DegreeOutOfRange { .. } => "DegreeOutOfRange",
            OracleError::Malformed(_) => "Malformed",
            OracleError::Combinatorics(e) => e.name(),
        }
    }
}

/// Sparse vector: `(basis index, coefficient)` pairs, no zeros, sorted.
pub type SparseVec<R> = Vec<(usize, R)>;

/// One term `coef · a ⊗ b` with `a ∈ H_p`, `b ∈ H_{m-p}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoproductTerm<R> {
    pub p: usize,
    pub a: usize,
    pub b: usize,
    pub coef: R,
}

/// What the basis of a built instance consists of.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceKind {
    /// Words, as lists of letter indices; `letter_weights[i]` is `|x_i|`.
    Shuffle { letter_weights: Vec<usize>, words: Vec<Vec<Vec<usize>>> },
    /// Power sums `p_λ`, parts in weakly decreasing order.
    SymPowerSum { partitions: Vec<Vec<Vec<usize>>> },
    /// Monomial quasisymmetric functions `M_α`.
    QSymMonomial { compositions: Vec<Vec<Vec<usize>>> },
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub verify_axioms: bool,
    pub dimension_cap: usize,
    /// Ignore the dimension cap.
    pub force: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { verify_axioms: true, dimension_cap: DEFAULT_DIMENSION_CAP, force: false }
    }
}

/// A graded connected bialgebra in a braided category with braiding
/// `x ⊗ y ↦ braid^{|x||y|} y ⊗ x` (`braid = 1` is the ordinary case).
#[derive(Debug, Clone, PartialEq)]
pub struct HopfInstance<R: CoefficientRing> {
    pub(crate) labels: Vec<Vec<String>>,
    /// `product[p][r][i * dim(r) + j]` is `μ(e_i ⊗ e_j)` in degree `p + r`.
    pub(crate) product: Vec<Vec<Vec<SparseVec<R>>>>,
    pub(crate) coproduct: Vec<Vec<Vec<CoproductTerm<R>>>>,
    pub(crate) braid: R,
    pub(crate) kind: InstanceKind,
}

fn add_sparse<R: CoefficientRing>(acc: &mut BTreeMap<usize, R>, i: usize, c: R) {
    let e = acc.entry(i).or_insert_with(R::zero);
    *e = e.clone() + c;
}

pub(crate) fn finish_sparse<R: CoefficientRing>(acc: BTreeMap<usize, R>) -> SparseVec<R> {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl<R: CoefficientRing> HopfInstance<R> {
    /// Assembles and (optionally) validates an instance.
    pub fn new(
        labels: Vec<Vec<String>>,
        product: Vec<Vec<Vec<SparseVec<R>>>>,
        coproduct: Vec<Vec<Vec<CoproductTerm<R>>>>,
        braid: R,
        kind: InstanceKind,
        opts: BuildOptions,
    ) -> Result<Self, OracleError> {
        let inst = HopfInstance { labels, product, coproduct, braid, kind };
        inst.check_shape(opts)?;
        if opts.verify_axioms {
            inst.verify_axioms()?;
        }
        Ok(inst)
    }

    pub fn max_degree(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn dim(&self, m: usize) -> usize {
        self.labels[m].len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, m: usize) -> &[String] {
        &self.labels[m]
    }

    pub fn braid(&self) -> &R {
        &self.braid
    }

    pub fn kind(&self) -> &InstanceKind {
        &self.kind
    }

    /// `μ(e_i ⊗ e_j)` for `e_i ∈ H_p`, `e_j ∈ H_r`.
    pub fn mul_basis(&self, p: usize, i: usize, r: usize, j: usize) -> &SparseVec<R> {
        &self.product[p][r][i * self.dim(r) + j]
    }

    pub fn coproduct_of(&self, m: usize, x: usize) -> &[CoproductTerm<R>] {
        &self.coproduct[m][x]
    }

    pub(crate) fn check_degree(&self, m: usize) -> Result<(), OracleError> {
        if m > self.max_degree() {
            return Err(OracleError::DegreeOutOfRange { m, max: self.max_degree() });
        }
        Ok(())
    }

    fn check_shape(&self, opts: BuildOptions) -> Result<(), OracleError> {
        let bad = |s: String| Err(OracleError::Malformed(s));
        if self.labels.is_empty() || self.labels[0].len() != 1 {
            return bad("degree 0 must be one-dimensional".into());
        }
        if !opts.force {
            for (degree, l) in self.labels.iter().enumerate() {
                if l.len() > opts.dimension_cap {
                    return Err(OracleError::TooLarge { degree, dim: l.len(), cap: opts.dimension_cap });
                }
            }
        }
        let top = self.max_degree();
        if self.product.len() != top + 1 || self.coproduct.len() != top + 1 {
            return bad("structure tensors do not cover every degree".into());
        }
        for p in 0..=top {
            if self.product[p].len() != top + 1 - p {
                return bad(format!("product row {p} has the wrong length"));
            }
            for r in 0..=top - p {
                if self.product[p][r].len() != self.dim(p) * self.dim(r) {
                    return bad(format!("product block ({p},{r}) has the wrong size"));
                }
                for v in &self.product[p][r] {
                    if v.iter().any(|(k, _)| *k >= self.dim(p + r)) {
                        return bad(format!("product block ({p},{r}) indexes outside degree {}", p + r));
                    }
                }
            }
            if self.coproduct[p].len() != self.dim(p) {
                return bad(format!("coproduct of degree {p} has the wrong length"));
            }
            for terms in &self.coproduct[p] {
                for t in terms {
                    if t.p > p || t.a >= self.dim(t.p) || t.b >= self.dim(p - t.p) {
                        return bad(format!("coproduct term out of range in degree {p}"));
                    }
                }
            }
        }
        Ok(())
    }

    fn degree0_unit(&self) -> Result<(), OracleError> {
        let one = vec![(0usize, R::one())];
        if self.product[0][0][0] != one {
            return Err(OracleError::AxiomViolated { axiom: "unit", detail: "1·1 ≠ 1".into() });
        }
        Ok(())
    }

    /// Associativity, unit, coassociativity, counit and compatibility of
    /// product and coproduct (braided by `braid^{|b||c|}`).
    pub fn verify_axioms(&self) -> Result<(), OracleError> {
        let top = self.max_degree();
        self.degree0_unit()?;
        for p in 0..=top {
            for i in 0..self.dim(p) {
                let e = vec![(i, R::one())];
                if self.mul_basis(0, 0, p, i) != &e || self.mul_basis(p, i, 0, 0) != &e {
                    return Err(OracleError::AxiomViolated {
                        axiom: "unit",
                        detail: format!("1 is not a two-sided unit on {}", self.labels[p][i]),
                    });
                }
            }
        }
        self.check_associativity()?;
        self.check_counit()?;
        self.check_coassociativity()?;
        self.check_compatibility()
    }

    fn mul_sparse(&self, p: usize, x: &SparseVec<R>, r: usize, y: &SparseVec<R>) -> SparseVec<R> {
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                for (k, c) in self.mul_basis(p, *i, r, *j) {
                    add_sparse(&mut acc, *k, a.clone() * b.clone() * c.clone());
                }
            }
        }
        finish_sparse(acc)
    }

    fn check_associativity(&self) -> Result<(), OracleError> {
        let top = self.max_degree();
        for p in 1..=top {
            for r in 1..=top - p {
                for s in 1..=top - p - r {
                    for i in 0..self.dim(p) {
                        for j in 0..self.dim(r) {
                            let ij = self.mul_basis(p, i, r, j);
                            for k in 0..self.dim(s) {
                                let ek = vec![(k, R::one())];
                                let left = self.mul_sparse(p + r, ij, s, &ek);
                                let jk = self.mul_basis(r, j, s, k).clone();
                                let right = self.mul_sparse(p, &vec![(i, R::one())], r + s, &jk);
                                if left != right {
                                    return Err(OracleError::AxiomViolated {
                                        axiom: "associativity",
                                        detail: format!(
                                            "({}·{})·{} ≠ {}·({}·{})",
                                            self.labels[p][i], self.labels[r][j], self.labels[s][k],
                                            self.labels[p][i], self.labels[r][j], self.labels[s][k]
                                        ),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Coproduct as a map `(p, a, b) -> coef`.
    fn coproduct_map(&self, m: usize, x: usize) -> BTreeMap<(usize, usize, usize), R> {
        let mut out = BTreeMap::new();
        for t in &self.coproduct[m][x] {
            let e = out.entry((t.p, t.a, t.b)).or_insert_with(R::zero);
            *e = e.clone() + t.coef.clone();
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn check_counit(&self) -> Result<(), OracleError> {
        for m in 0..=self.max_degree() {
            for x in 0..self.dim(m) {
                let d = self.coproduct_map(m, x);
                let left = d.get(&(0, 0, x));
                let right = d.get(&(m, x, 0));
                let ok = if m == 0 {
                    left == Some(&R::one())
                } else {
                    left == Some(&R::one()) && right == Some(&R::one())
                };
                if !ok {
                    return Err(OracleError::AxiomViolated {
                        axiom: "counit",
                        detail: format!("Δ({}) lacks 1⊗x + x⊗1", self.labels[m][x]),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_coassociativity(&self) -> Result<(), OracleError> {
        for m in 0..=self.max_degree() {
            for x in 0..self.dim(m) {
                // keys (p, r, a, b, c) with a ∈ H_p, b ∈ H_r, c ∈ H_{m-p-r}
                let mut left: BTreeMap<(usize, usize, usize, usize, usize), R> = BTreeMap::new();
                let mut right = BTreeMap::new();
                for t in &self.coproduct[m][x] {
                    for u in &self.coproduct[t.p][t.a] {
                        let e = left.entry((u.p, t.p - u.p, u.a, u.b, t.b)).or_insert_with(R::zero);
                        *e = e.clone() + t.coef.clone() * u.coef.clone();
                    }
                    for u in &self.coproduct[m - t.p][t.b] {
                        let e = right.entry((t.p, u.p, t.a, u.a, u.b)).or_insert_with(R::zero);
                        *e = e.clone() + t.coef.clone() * u.coef.clone();
                    }
                }
                left.retain(|_, c| !c.is_zero());
                right.retain(|_, c| !c.is_zero());
                if left != right {
                    return Err(OracleError::AxiomViolated {
                        axiom: "coassociativity",
                        detail: format!("on {}", self.labels[m][x]),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_compatibility(&self) -> Result<(), OracleError> {
        let top = self.max_degree();
        for p in 1..=top {
            for r in 1..=top - p {
                for x in 0..self.dim(p) {
                    for y in 0..self.dim(r) {
                        let mut left: BTreeMap<(usize, usize, usize), R> = BTreeMap::new();
                        for (z, c) in self.mul_basis(p, x, r, y) {
                            for (key, d) in self.coproduct_map(p + r, *z) {
                                let e = left.entry(key).or_insert_with(R::zero);
                                *e = e.clone() + c.clone() * d;
                            }
                        }
                        let mut right: BTreeMap<(usize, usize, usize), R> = BTreeMap::new();
                        for s in &self.coproduct[p][x] {
                            for t in &self.coproduct[r][y] {
                                // (a ⊗ b)(c ⊗ d) = braid^{|b||c|} ac ⊗ bd
                                let twist = self.braid.pow_u(((p - s.p) * t.p) as u64);
                                let coef = s.coef.clone() * t.coef.clone() * twist;
                                let pa = s.p + t.p;
                                for (ac, c1) in self.mul_basis(s.p, s.a, t.p, t.a) {
                                    for (bd, c2) in self.mul_basis(p - s.p, s.b, r - t.p, t.b) {
                                        let e = right.entry((pa, *ac, *bd)).or_insert_with(R::zero);
                                        *e = e.clone() + coef.clone() * c1.clone() * c2.clone();
                                    }
                                }
                            }
                        }
                        left.retain(|_, c| !c.is_zero());
                        right.retain(|_, c| !c.is_zero());
                        if left != right {
                            return Err(OracleError::AxiomViolated {
                                axiom: "compatibility",
                                detail: format!("Δ({}·{}) ≠ Δ({})Δ({})", self.labels[p][x], self.labels[r][y], self.labels[p][x], self.labels[r][y]),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `μ(a, b) = μ(b, a)` on all basis pairs.
    pub fn is_commutative(&self) -> bool {
        let top = self.max_degree();
        (0..=top).all(|p| {
            (0..=top - p).all(|r| {
                (0..self.dim(p)).all(|i| (0..self.dim(r)).all(|j| self.mul_basis(p, i, r, j) == self.mul_basis(r, j, p, i)))
            })
        })
    }

    /// `Δ = τ ∘ Δ` with the unbraided flip.
    pub fn is_cocommutative(&self) -> bool {
        (0..=self.max_degree()).all(|m| {
            (0..self.dim(m)).all(|x| {
                let d = self.coproduct_map(m, x);
                let flipped: BTreeMap<_, _> = d.iter().map(|((p, a, b), c)| ((m - p, *b, *a), c.clone())).collect();
                d == flipped
            })
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ProductTriple {
    p: usize,
    r: usize,
    i: usize,
    j: usize,
    k: usize,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct CoproductTriple {
    m: usize,
    x: usize,
    p: usize,
    a: usize,
    b: usize,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct InstanceRepr {
    ring: String,
    braid: String,
    basis: Vec<Vec<String>>,
    product: Vec<ProductTriple>,
    coproduct: Vec<CoproductTriple>,
}

/// Name used in the JSON `"ring"` field.
pub trait RingName {
    const NAME: &'static str;
}

impl RingName for Rational {
    const NAME: &'static str = "rational";
}

impl RingName for Laurent {
    const NAME: &'static str = "laurent";
}

impl RingName for Integer {
    const NAME: &'static str = "integer";
}

impl<R: CoefficientRing + RingName> HopfInstance<R> {
    /// Basis labels plus sparse structure constants; degree-0 products and
    /// trivial coproduct terms are included so that import needs no defaults.
    pub fn to_json(&self) -> serde_json::Value {
        let top = self.max_degree();
        let mut product = Vec::new();
        for p in 0..=top {
            for r in 0..=top - p {
                for i in 0..self.dim(p) {
                    for j in 0..self.dim(r) {
                        for (k, c) in self.mul_basis(p, i, r, j) {
                            product.push(ProductTriple { p, r, i, j, k: *k, coef: c.to_string() });
                        }
                    }
                }
            }
        }
        let mut coproduct = Vec::new();
        for m in 0..=top {
            for x in 0..self.dim(m) {
                for t in &self.coproduct[m][x] {
                    coproduct.push(CoproductTriple { m, x, p: t.p, a: t.a, b: t.b, coef: t.coef.to_string() });
                }
            }
        }
        serde_json::to_value(InstanceRepr {
            ring: R::NAME.into(),
            braid: self.braid.to_string(),
            basis: self.labels.clone(),
            product,
            coproduct,
        })
        .expect("instance serializes")
    }

    pub fn from_json(value: &serde_json::Value, opts: BuildOptions) -> Result<Self, OracleError> {
        let repr: InstanceRepr =
            serde_json::from_value(value.clone()).map_err(|e| OracleError::Malformed(e.to_string()))?;
        if repr.ring != R::NAME {
            return Err(OracleError::Malformed(format!("ring {:?}, expected {:?}", repr.ring, R::NAME)));
        }
        let parse = |s: &str| R::parse_exact(s).ok_or_else(|| OracleError::Malformed(format!("bad coefficient {s:?}")));
        let top = repr.basis.len().checked_sub(1).ok_or_else(|| OracleError::Malformed("empty basis".into()))?;
        let dims: Vec<usize> = repr.basis.iter().map(Vec::len).collect();
        let mut acc: Vec<Vec<Vec<BTreeMap<usize, R>>>> =
            (0..=top).map(|p| (0..=top - p).map(|r| vec![BTreeMap::new(); dims[p] * dims[r]]).collect()).collect();
        for t in &repr.product {
            if t.p + t.r > top || t.i >= dims[t.p] || t.j >= dims[t.r] {
                return Err(OracleError::Malformed(format!("product triple out of range: ({}, {})", t.p, t.r)));
            }
            add_sparse(&mut acc[t.p][t.r][t.i * dims[t.r] + t.j], t.k, parse(&t.coef)?);
        }
        let product = acc
            .into_iter()
            .map(|row| row.into_iter().map(|b| b.into_iter().map(finish_sparse).collect()).collect())
            .collect();
        let mut coproduct: Vec<Vec<Vec<CoproductTerm<R>>>> = dims.iter().map(|&d| vec![Vec::new(); d]).collect();
        for t in &repr.coproduct {
            if t.m > top || t.x >= dims[t.m] {
                return Err(OracleError::Malformed(format!("coproduct triple out of range: degree {}", t.m)));
            }
            coproduct[t.m][t.x].push(CoproductTerm { p: t.p, a: t.a, b: t.b, coef: parse(&t.coef)? });
        }
        HopfInstance::new(repr.basis, product, coproduct, parse(&repr.braid)?, InstanceKind::Custom, opts)
    }
}
