//! Closed-form spectra of Adams operators from a dimension sequence.
//!
//! Everything here is a function of `(h_m)` alone, through the primitive
//! counts `g_i` (inverse Euler transform) and the multiset array `mul(k,m)`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{mul_table, witt_counts, CombinatoricsError, WeightedAlphabet};
use crate::numeric::{self, Complex, Real};
use crate::poly::Poly;
use crate::ring::{factorial, int_to_json, multichoose, rational, CoefficientRing, Integer, Rational};
use crate::series::{euler_transform, inverse_euler_transform, Flavor, RationalFunction, Series, SeriesError};
use crate::table::Table;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectraError {
    #[error("g_{degree} = {value} is negative; pass force to evaluate the formulas anyway")]
    NotRealizable { degree: usize, value: Integer },
    #[error("degree {m} exceeds the profile's maximum degree {max}")]
    DegreeOutOfRange { m: usize, max: usize },
    #[error("asymptotic hypothesis failed: {check} ({detail})")]
    HypothesisViolated { check: &'static str, detail: String },
    #[error("profile has no rational generating function")]
    NotRational,
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("inconsistent profile: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}

impl SpectraError {
    pub fn name(&self) -> &'static str {
        match self {
            SpectraError::NotRealizable { .. } => "NotRealizable",
            SpectraError::DegreeOutOfRange { .. } => "DegreeOutOfRange",
            SpectraError::HypothesisViolated { .. } => "HypothesisViolated",
            SpectraError::NotRational => "NotRational",
            SpectraError::UnknownPreset(_) => "UnknownPreset",
            SpectraError::Inconsistent(_) => "Inconsistent",
            SpectraError::Series(e) => e.name(),
            SpectraError::Combinatorics(e) => e.name(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "name")]
pub enum ProfileSource {
    GivenH,
    GivenG,
    GivenV,
    GivenRational,
    Preset(String),
}

/// The mutually determined sequences `h_m`, `g_i`, `v_n` through degree `M`.
#[derive(Debug)]
pub struct DimensionProfile {
    h: Vec<Integer>,
    g: Vec<Integer>,
    v: Vec<Integer>,
    source: ProfileSource,
    rational: Option<RationalFunction>,
    realizable: bool,
    mul: OnceLock<Table>,
}

impl Clone for DimensionProfile {
    fn clone(&self) -> Self {
        DimensionProfile {
            h: self.h.clone(),
            g: self.g.clone(),
            v: self.v.clone(),
            source: self.source.clone(),
            rational: self.rational.clone(),
            realizable: self.realizable,
            mul: OnceLock::new(),
        }
    }
}

/// `v(t) = 1 - 1/h(t)`, the alphabet a cofree coalgebra with these dimensions would need.
fn alphabet_from_h(h: &[Integer]) -> Vec<Integer> {
    let m = h.len() - 1;
    let hs = Series::from_integers(h, m, Flavor::Ogf);
    let inv = hs.inverse().expect("h_0 = 1 is a unit");
    (1..=m).map(|n| -inv.coeff(n).to_integer()).collect()
}

impl DimensionProfile {
    fn build(h: Vec<Integer>, g: Vec<Integer>, source: ProfileSource, force: bool) -> Result<Self, SpectraError> {
        let negative = g.iter().enumerate().find(|(_, x)| x.is_negative());
        if let (Some((i, value)), false) = (negative, force) {
            return Err(SpectraError::NotRealizable { degree: i + 1, value: value.clone() });
        }
        Ok(DimensionProfile {
            v: alphabet_from_h(&h),
            realizable: negative.is_none(),
            h,
            g,
            source,
            rational: None,
            mul: OnceLock::new(),
        })
    }

    /// From `h_0 = 1, h_1, ..., h_M`.
    pub fn from_h(h: Vec<Integer>, force: bool) -> Result<Self, SpectraError> {
        if h.first().is_none_or(|h0| !h0.is_one()) {
            return Err(SeriesError::InvalidConstantTerm {
                expected: "1",
                found: h.first().map_or("nothing".into(), |x| x.to_string()),
            }
            .into());
        }
        let m = h.len() - 1;
        let inv = inverse_euler_transform(&Series::from_integers(&h, m, Flavor::Ogf))?;
        Self::build(h, inv.g, ProfileSource::GivenH, force)
    }

    /// From `g_1, ..., g_M`.
    pub fn from_g(g: Vec<Integer>, force: bool) -> Result<Self, SpectraError> {
        let m = g.len();
        let h = euler_transform(&g, m).integer_coeffs()?;
        Self::build(h, g, ProfileSource::GivenG, force)
    }

    /// From a cofree alphabet `v_1, ..., v_M`.
    pub fn from_v(alphabet: &WeightedAlphabet, max_degree: usize) -> Result<Self, SpectraError> {
        let h = alphabet.word_counts(max_degree);
        let g = witt_counts(alphabet, max_degree)?;
        let mut p = Self::build(h, g, ProfileSource::GivenV, false)?;
        let stored: Vec<Integer> = (1..=max_degree).map(|n| alphabet.count(n)).collect();
        if stored != p.v {
            return Err(SpectraError::Inconsistent("alphabet does not reproduce 1 - 1/h".into()));
        }
        p.v = stored;
        Ok(p)
    }

    /// From a rational generating function with integer Taylor coefficients.
    pub fn from_rational(f: &RationalFunction, max_degree: usize, force: bool) -> Result<Self, SpectraError> {
        let h = f.taylor_expand(max_degree).integer_coeffs()?;
        let mut p = Self::from_h(h, force)?;
        p.source = ProfileSource::GivenRational;
        p.rational = Some(f.clone());
        Ok(p)
    }

    pub fn preset(name: &str, max_degree: usize) -> Result<Self, SpectraError> {
        let ones = |m: usize| vec![BigInt::one(); m];
        let mut p = match name {
            "sym" => Self::from_g(ones(max_degree), false)?,
            "schur_p" => Self::from_g(
                (1..=max_degree).map(|i| BigInt::from(i % 2)).collect(),
                false,
            )?,
            "qsym" => {
                let mut p = Self::from_v(&WeightedAlphabet::new(ones(max_degree))?, max_degree)?;
                p.rational = Some(RationalFunction::from_ints(&[1, -1], &[1, -2])?);
                p
            }
            "ssym" => Self::from_h((0..=max_degree as u64).map(factorial).collect(), false)?,
            "peak" => {
                let v = (1..=max_degree).map(|n| BigInt::from(n % 2)).collect();
                let mut p = Self::from_v(&WeightedAlphabet::new(v)?, max_degree)?;
                p.rational = Some(RationalFunction::from_ints(&[1, 0, -1], &[1, -1, -1])?);
                p
            }
            "fibonacci" => Self::from_rational(&RationalFunction::from_ints(&[-1, 0, 1], &[-1, 1, 1])?, max_degree, false)?,
            other => match other.strip_prefix("geometric:").map(|r| r.parse::<u64>()) {
                Some(Ok(r)) if r >= 1 => {
                    let mut p = Self::from_v(&WeightedAlphabet::from_u64(&[r]), max_degree)?;
                    p.rational = Some(RationalFunction::from_ints(&[1], &[1, -(r as i64)])?);
                    p
                }
                _ => return Err(SpectraError::UnknownPreset(other.to_string())),
            },
        };
        p.source = ProfileSource::Preset(name.to_string());
        Ok(p)
    }

    pub const PRESETS: [&'static str; 7] = ["sym", "schur_p", "qsym", "ssym", "peak", "geometric:<r>", "fibonacci"];

    pub fn max_degree(&self) -> usize {
        self.h.len() - 1
    }

    pub fn h(&self) -> &[Integer] {
        &self.h
    }

    /// `g_1..g_M`.
    pub fn g(&self) -> &[Integer] {
        &self.g
    }

    /// `v_1..v_M`, possibly negative when no cofree coalgebra has these dimensions.
    pub fn v(&self) -> &[Integer] {
        &self.v
    }

    pub fn alphabet(&self) -> Option<WeightedAlphabet> {
        WeightedAlphabet::new(self.v.clone()).ok()
    }

    pub fn source(&self) -> &ProfileSource {
        &self.source
    }

    pub fn rational(&self) -> Option<&RationalFunction> {
        self.rational.as_ref()
    }

    pub fn is_realizable(&self) -> bool {
        self.realizable
    }

    pub fn h_series(&self) -> Series<Rational> {
        Series::from_integers(&self.h, self.max_degree(), Flavor::Ogf)
    }

    pub fn mul_table(&self) -> &Table {
        self.mul.get_or_init(|| mul_table(&self.g, self.max_degree()))
    }

    fn check_degree(&self, m: usize) -> Result<(), SpectraError> {
        if m > self.max_degree() {
            return Err(SpectraError::DegreeOutOfRange { m, max: self.max_degree() });
        }
        Ok(())
    }
}

/// `Π_k (x - n^k)^{mul(k,m)}`, kept in factored form.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumFactorization {
    pub n: Rational,
    pub m: usize,
    /// `mul(k, m)` for `k = 0..=m`.
    pub multiplicities: Vec<Integer>,
}

impl SpectrumFactorization {
    pub fn degree(&self) -> Integer {
        self.multiplicities.iter().sum()
    }

    /// Distinct eigenvalues with total multiplicity (zero multiplicities dropped).
    pub fn eigenvalues(&self) -> BTreeMap<Rational, Integer> {
        let mut out = BTreeMap::new();
        for (k, mult) in self.multiplicities.iter().enumerate() {
            if !mult.is_zero() {
                *out.entry(self.n.pow_u(k as u64)).or_insert_with(BigInt::zero) += mult;
            }
        }
        out
    }

    /// The expanded characteristic polynomial; only sensible for small `h_m`.
    pub fn to_poly(&self) -> Poly<Rational> {
        eigenvalues_to_poly(&self.eigenvalues())
    }
}

pub fn eigenvalues_to_poly(eigs: &BTreeMap<Rational, Integer>) -> Poly<Rational> {
    Poly::from_roots(eigs.iter().map(|(r, m)| (r, u64::try_from(m).expect("multiplicity fits in u64"))))
}

impl Serialize for SpectrumFactorization {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Factor {
            k: usize,
            mult: serde_json::Value,
        }
        #[derive(Serialize)]
        struct Repr {
            n: String,
            m: usize,
            factors: Vec<Factor>,
        }
        Repr {
            n: self.n.to_string(),
            m: self.m,
            factors: self
                .multiplicities
                .iter()
                .enumerate()
                .map(|(k, mult)| Factor { k, mult: int_to_json(mult) })
                .collect(),
        }
        .serialize(serializer)
    }
}

/// A characteristic polynomial `Π (x - λ)^{mult}` over distinct rational eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueFactorization {
    pub m: usize,
    pub eigenvalues: BTreeMap<Rational, Integer>,
}

impl EigenvalueFactorization {
    pub fn multiplicity(&self, eigenvalue: &Rational) -> Integer {
        self.eigenvalues.get(eigenvalue).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Integer {
        self.eigenvalues.values().sum()
    }

    pub fn to_poly(&self) -> Poly<Rational> {
        eigenvalues_to_poly(&self.eigenvalues)
    }
}

impl Serialize for EigenvalueFactorization {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Factor {
            eigenvalue: String,
            mult: serde_json::Value,
        }
        #[derive(Serialize)]
        struct Repr {
            m: usize,
            factors: Vec<Factor>,
        }
        Repr {
            m: self.m,
            factors: self
                .eigenvalues
                .iter()
                .map(|(e, mult)| Factor { eigenvalue: e.to_string(), mult: int_to_json(mult) })
                .collect(),
        }
        .serialize(serializer)
    }
}

/// `(x - 1)^{emul} (x + 1)^{omul}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AntipodeSpectrum {
    pub m: usize,
    pub emul: Integer,
    pub omul: Integer,
}

impl AntipodeSpectrum {
    pub fn factorization(&self) -> EigenvalueFactorization {
        let mut eigenvalues = BTreeMap::new();
        for (e, mult) in [(rational(1, 1), &self.emul), (rational(-1, 1), &self.omul)] {
            if !mult.is_zero() {
                eigenvalues.insert(e, mult.clone());
            }
        }
        EigenvalueFactorization { m: self.m, eigenvalues }
    }
}

pub fn char_poly_adams(profile: &DimensionProfile, n: &Rational, m: usize) -> Result<SpectrumFactorization, SpectraError> {
    profile.check_degree(m)?;
    Ok(SpectrumFactorization { n: n.clone(), m, multiplicities: profile.mul_table().column(m)[..=m].to_vec() })
}

pub fn char_poly_antipode(profile: &DimensionProfile, m: usize) -> Result<AntipodeSpectrum, SpectraError> {
    profile.check_degree(m)?;
    let t = profile.mul_table();
    Ok(AntipodeSpectrum { m, emul: t.parity_column_sum(m, 0), omul: t.parity_column_sum(m, 1) })
}

/// `trace(Ψ_n | H_m) = Σ_k n^k mul(k, m)`.
pub fn trace_adams(profile: &DimensionProfile, n: &Rational, m: usize) -> Result<Rational, SpectraError> {
    profile.check_degree(m)?;
    let t = profile.mul_table();
    let mut acc = Rational::zero();
    let mut power = Rational::one();
    for k in 0..=m {
        acc += &power * Rational::from_integer(t.get(k, m));
        power *= n;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceRoute {
    Formula,
    GeneratingFunction,
    Oracle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceTable {
    pub n: Rational,
    pub values: Vec<Rational>,
    pub route: TraceRoute,
}

impl Serialize for TraceTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("TraceTable", 3)?;
        st.serialize_field("n", &self.n.to_string())?;
        st.serialize_field("route", &self.route)?;
        st.serialize_field("values", &self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>())?;
        st.end()
    }
}

pub fn trace_table(profile: &DimensionProfile, n: &Rational, max_degree: usize) -> Result<TraceTable, SpectraError> {
    let values = (0..=max_degree).map(|m| trace_adams(profile, n, m)).collect::<Result<_, _>>()?;
    Ok(TraceTable { n: n.clone(), values, route: TraceRoute::Formula })
}

/// `Π_i (1 - n t^i)^{-g_i}` truncated at `max_degree`, expanded factor by factor.
pub fn trace_gf(profile: &DimensionProfile, n: &Rational, max_degree: usize) -> Result<Series<Rational>, SpectraError> {
    profile.check_degree(max_degree)?;
    let mut acc = Series::one(max_degree, Flavor::Ogf);
    for (idx, gi) in profile.g().iter().enumerate().take(max_degree) {
        let i = idx + 1;
        if gi.is_zero() {
            continue;
        }
        let factor = Series::from_fn(max_degree, Flavor::Ogf, |d| {
            if d % i == 0 {
                let j = (d / i) as u64;
                Rational::from_integer(multichoose(gi, j)) * n.pow_u(j)
            } else {
                Rational::zero()
            }
        });
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// `h(t²) / h(t)`.
pub fn antipode_trace_gf(profile: &DimensionProfile, max_degree: usize) -> Result<Series<Rational>, SpectraError> {
    profile.check_degree(max_degree)?;
    let h = profile.h_series().with_truncation(max_degree);
    Ok(h.substitute_power(2).div(&h)?)
}

/// Characteristic polynomial of the composition power `S^n` on `H_m`.
pub fn comp_power_char_poly(profile: &DimensionProfile, n: i64, m: usize) -> Result<EigenvalueFactorization, SpectraError> {
    profile.check_degree(m)?;
    if n % 2 == 0 {
        let mut eigenvalues = BTreeMap::new();
        eigenvalues.insert(Rational::one(), profile.h()[m].clone());
        Ok(EigenvalueFactorization { m, eigenvalues })
    } else {
        Ok(char_poly_antipode(profile, m)?.factorization())
    }
}

/// `trace(S ∘ Ψ_n | H_m) = Σ_k (-n)^k mul(k, m)`.
pub fn schur_indicator(profile: &DimensionProfile, n: &Rational, m: usize) -> Result<Rational, SpectraError> {
    trace_adams(profile, &-n.clone(), m)
}

/// The rational function `h(t²)/h(t)`.
pub fn antipode_trace_rational(f: &RationalFunction) -> Result<RationalFunction, SpectraError> {
    Ok(f.substitute_power(2).mul(&f.recip()?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticOptions {
    pub precision_bits: usize,
    pub tolerance: Rational,
}

impl Default for AsymptoticOptions {
    fn default() -> Self {
        AsymptoticOptions {
            precision_bits: 128,
            tolerance: Rational::new(BigInt::one(), BigInt::from(10).pow(20u32)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisChecks {
    /// The smallest-modulus pole is a positive real `R ≤ 1`.
    pub dominant_positive_pole: bool,
    /// No other pole in `|z| ≤ R^{1/4}`.
    pub unique_singularity: bool,
    /// No zero in `|z| ≤ R^{1/2}`.
    pub nonvanishing: bool,
    /// `h(-R^{1/2}) ≠ ±h(R^{1/2})`.
    pub plus_minus_distinct: bool,
}

impl HypothesisChecks {
    pub fn all(&self) -> bool {
        self.dominant_positive_pole && self.unique_singularity && self.nonvanishing && self.plus_minus_distinct
    }

    pub fn first_failure(&self) -> Option<&'static str> {
        [
            (self.dominant_positive_pole, "dominant_positive_pole"),
            (self.unique_singularity, "unique_singularity"),
            (self.nonvanishing, "nonvanishing"),
            (self.plus_minus_distinct, "plus_minus_distinct"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, name)| name)
    }
}

/// Numerical singularity analysis of a rational dimension generating function.
#[derive(Debug, Clone)]
pub struct AsymptoticAnalysis {
    pub function: RationalFunction,
    pub options: AsymptoticOptions,
    pub r: Real,
    pub r_exact: Option<Rational>,
    pub gamma: u32,
    pub h_star: Real,
    /// `1/h(R^{1/2})` and `1/h(-R^{1/2})`.
    pub recip_h_plus: Real,
    pub recip_h_minus: Real,
    pub checks: HypothesisChecks,
    /// Distinct poles other than `R`, with their moduli.
    pub other_pole_moduli: Vec<Real>,
    pub zero_moduli: Vec<Real>,
}

fn working_precision(opts: &AsymptoticOptions) -> usize {
    opts.precision_bits + 64
}

fn eval_real(p: &Poly<Rational>, x: &Real) -> Real {
    let prec = x.precision();
    p.coeffs()
        .iter()
        .rev()
        .fold(Real::ZERO.with_precision(prec).value(), |acc, c| acc * x + numeric::rational_to_real(c, prec))
}

/// Locates `R` and checks every hypothesis, without failing when one does not hold.
pub fn analyze_asymptotics(f: &RationalFunction, opts: &AsymptoticOptions) -> Result<AsymptoticAnalysis, SpectraError> {
    let prec = working_precision(opts);
    let den = f.denominator();
    let num = f.numerator();
    let tol = numeric::rational_to_real(&opts.tolerance, prec);
    let no_pole = || SpectraError::HypothesisViolated {
        check: "dominant_positive_pole",
        detail: "h(z) has no positive real pole".into(),
    };
    if den.degree().unwrap_or(0) == 0 {
        return Err(no_pole());
    }

    // R: exact when rational, otherwise a Sturm-isolated real root refined past working precision.
    let positive_rational = den.rational_roots().into_iter().filter(|r| r.is_positive()).min();
    let bound = den.root_bound();
    let width = Rational::new(BigInt::one(), BigInt::one() << (prec + 8));
    let isolated = den.isolate_real_roots(&Rational::zero(), &bound, &width);
    let first = isolated.first().cloned().ok_or_else(no_pole)?;
    let (r, r_exact, gamma) = match positive_rational {
        Some(q) if q <= first.1 => {
            let gamma = den.root_multiplicity(&q) as u32;
            (numeric::rational_to_real(&q, prec), Some(q), gamma)
        }
        _ => {
            let (a, b) = &first;
            let gamma = den
                .squarefree_decomposition()
                .iter()
                .position(|p| !p.isolate_real_roots(a, b, &(b - a)).is_empty())
                .map(|i| i as u32 + 1)
                .expect("R is a root of some squarefree factor");
            let mid = (a + b) / rational(2, 1);
            (numeric::rational_to_real(&mid, prec), None, gamma)
        }
    };

    // h*(R) = lim (1 - z/R)^γ h(z) = N(R) (-1/R)^γ / [D(z)/(z-R)^γ]_{z=R}
    let h_star = match &r_exact {
        Some(q) => {
            let cofactor = den.exact_div(&Poly::linear(q.clone()).pow(gamma as u64));
            let value = num.eval(q) * (-q.recip()).pow_u(gamma as u64) / cofactor.eval(q);
            numeric::rational_to_real(&value, prec)
        }
        None => {
            let mut deriv = den.clone();
            for _ in 0..gamma {
                deriv = deriv.derivative();
            }
            let gfact = numeric::int_to_real(&factorial(gamma as u64), prec);
            let minus_recip_r = -(Real::ONE.with_precision(prec).value() / &r);
            eval_real(num, &r) * minus_recip_r.powi(gamma.into()) * gfact / eval_real(&deriv, &r)
        }
    };

    let poles = numeric::complex_roots(den, prec);
    let r_complex = Complex::real(r.clone());
    let mut other_pole_moduli = Vec::new();
    let mut smallest_other: Option<Real> = None;
    let mut matched_r = false;
    for p in &poles {
        let dist = p.sub(&r_complex).modulus();
        if !matched_r && dist <= &tol * &r {
            matched_r = true;
            continue;
        }
        let modulus = p.modulus();
        if smallest_other.as_ref().is_none_or(|s| &modulus < s) {
            smallest_other = Some(modulus.clone());
        }
        other_pole_moduli.push(modulus);
    }
    let one = Real::ONE.with_precision(prec).value();
    let sqrt_r = r.sqrt();
    let quarter_r = sqrt_r.sqrt();
    let dominant_positive_pole = matched_r && r <= &one * (&one + &tol) && smallest_other.as_ref().is_none_or(|s| s > &r);
    let unique_singularity = other_pole_moduli.iter().all(|m| m > &(&quarter_r * (&one + &tol)));
    let zero_moduli: Vec<Real> = numeric::complex_roots(num, prec).iter().map(Complex::modulus).collect();
    let nonvanishing = zero_moduli.iter().all(|m| m > &(&sqrt_r * (&one + &tol)));

    let recip = |x: &Real| {
        let n = eval_real(num, x);
        if numeric::is_zero(&n) {
            None
        } else {
            Some(eval_real(den, x) / n)
        }
    };
    let (recip_h_plus, recip_h_minus, plus_minus_distinct) = match (recip(&sqrt_r), recip(&-sqrt_r.clone())) {
        (Some(p), Some(m)) => {
            let scale = numeric::abs(&p).max(numeric::abs(&m));
            let distinct = !numeric::is_zero(&scale)
                && numeric::abs(&(&p - &m)) > &tol * &scale
                && numeric::abs(&(&p + &m)) > &tol * &scale;
            (p, m, distinct)
        }
        _ => (Real::ZERO, Real::ZERO, false),
    };

    Ok(AsymptoticAnalysis {
        function: f.clone(),
        options: opts.clone(),
        r,
        r_exact,
        gamma,
        h_star,
        recip_h_plus,
        recip_h_minus,
        checks: HypothesisChecks { dominant_positive_pole, unique_singularity, nonvanishing, plus_minus_distinct },
        other_pole_moduli,
        zero_moduli,
    })
}

impl AsymptoticAnalysis {
    /// `R^{m/2} / 2^γ · (1/h(R^{1/2}) + (-1)^m / h(-R^{1/2}))`.
    pub fn predicted_ratio(&self, m: usize) -> Real {
        let prec = working_precision(&self.options);
        let power = self.r.sqrt().powi(m.into());
        let two_gamma = Real::ONE.with_precision(prec).value() * Real::from(2).powi(self.gamma.into());
        let bracket = if m % 2 == 0 {
            &self.recip_h_plus + &self.recip_h_minus
        } else {
            &self.recip_h_plus - &self.recip_h_minus
        };
        power * bracket / two_gamma
    }

    /// Exact `a_m / h_m` from the Taylor coefficients of `h(t²)/h(t)` and `h(t)`;
    /// `None` when `h_m = 0`.
    pub fn exact_ratios(&self, max_degree: usize) -> Result<Vec<Option<Rational>>, SpectraError> {
        let h = self.function.taylor_expand(max_degree);
        let a = antipode_trace_rational(&self.function)?.taylor_expand(max_degree);
        Ok((0..=max_degree)
            .map(|m| (!h.coeff(m).is_zero()).then(|| a.coeff(m) / h.coeff(m)))
            .collect())
    }

    pub fn report(&self, m_eval: &[usize]) -> Result<AsymptoticReport, SpectraError> {
        let digits = (self.options.precision_bits as f64 * std::f64::consts::LOG10_2).floor() as usize;
        let max_m = m_eval.iter().copied().max().unwrap_or(0);
        let exact = self.exact_ratios(max_m)?;
        let prec = working_precision(&self.options);
        let predictions = m_eval
            .iter()
            .map(|&m| {
                let predicted = self.predicted_ratio(m);
                let exact_m = exact[m].clone();
                let rel = exact_m
                    .as_ref()
                    .map(|e| numeric::relative_error(&predicted, &numeric::rational_to_real(e, prec)));
                RatioPrediction {
                    m,
                    predicted: numeric::to_decimal(&predicted, digits),
                    exact: exact_m.map(|e| e.to_string()),
                    relative_error: rel.map(|r| numeric::to_decimal(&r, 6)),
                }
            })
            .collect();
        Ok(AsymptoticReport {
            precision_bits: self.options.precision_bits,
            tolerance: self.options.tolerance.to_string(),
            r: numeric::to_decimal(&self.r, digits),
            r_exact: self.r_exact.as_ref().map(|r| r.to_string()),
            gamma: self.gamma,
            h_star: numeric::to_decimal(&self.h_star, digits),
            recip_h_at_sqrt_r: numeric::to_decimal(&self.recip_h_plus, digits),
            recip_h_at_minus_sqrt_r: numeric::to_decimal(&self.recip_h_minus, digits),
            hypotheses: self.checks.clone(),
            predictions,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioPrediction {
    pub m: usize,
    pub predicted: String,
    pub exact: Option<String>,
    pub relative_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReport {
    pub precision_bits: usize,
    pub tolerance: String,
    pub r: String,
    pub r_exact: Option<String>,
    pub gamma: u32,
    pub h_star: String,
    pub recip_h_at_sqrt_r: String,
    pub recip_h_at_minus_sqrt_r: String,
    pub hypotheses: HypothesisChecks,
    pub predictions: Vec<RatioPrediction>,
}

/// Ratio predictions for the requested degrees; fails with
/// `HypothesisViolated` naming the first check that does not hold.
pub fn asymptotic_ratio(
    f: &RationalFunction,
    m_eval: &[usize],
    opts: &AsymptoticOptions,
) -> Result<(AsymptoticAnalysis, AsymptoticReport), SpectraError> {
    let analysis = analyze_asymptotics(f, opts)?;
    if let Some(check) = analysis.checks.first_failure() {
        return Err(SpectraError::HypothesisViolated {
            check,
            detail: format!("R ≈ {}, h(z) = {}", numeric::to_decimal(&analysis.r, 20), f),
        });
    }
    let report = analysis.report(m_eval)?;
    Ok((analysis, report))
}

pub fn asymptotic_for_profile(
    profile: &DimensionProfile,
    m_eval: &[usize],
    opts: &AsymptoticOptions,
) -> Result<(AsymptoticAnalysis, AsymptoticReport), SpectraError> {
    asymptotic_ratio(profile.rational().ok_or(SpectraError::NotRational)?, m_eval, opts)
}
