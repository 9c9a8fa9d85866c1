//! Verification suites: pass/fail checks with counterexample payloads.

use adams_core::cofree_q::{cofree_char_poly, cofree_trace, pal_gfs, q_char_poly, q_normalizer, q_pal_gfs, q_trace};
use adams_core::combinatorics::{
    pal_table, palindromes_of_multiweight, palindromic_compositions, partition_statistics, partitions_by_length,
    WeightedAlphabet, DEFAULT_WORD_CAP,
};
use adams_core::ring::{binomial, int, int_to_json, rational};
use adams_core::species::{assembly_trace, species_antipode_trace, species_expmul, SpeciesProfile, SPECIES_PRESETS};
use adams_core::spectra::{antipode_trace_gf, trace_adams, trace_gf, DimensionProfile};
use adams_core::{Integer, Laurent, Poly, Rational};
use adams_oracle::{
    antipode, antipode_formula, antipode_matrix, build_qsym_monomial, build_shuffle, build_sym_powersum, char_poly_exact,
    check_adams_char_polys, convolution, BuildOptions, GradedEndomorphism, HopfInstance,
};
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Suite;
use crate::error::CliError;
use crate::output::Rendered;

#[derive(Debug, Clone, Default)]
pub struct Bounds {
    pub max_degree: Option<usize>,
    pub alphabet: Option<Vec<Integer>>,
    pub ns: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Accumulates checks; a check passes when no counterexample was recorded.
struct Checks(Vec<Check>);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }

    fn push(&mut self, name: impl Into<String>, counterexample: Option<Value>) {
        self.0.push(Check { name: name.into(), ok: counterexample.is_none(), counterexample });
    }

    /// First index in `0..=max` where `f` reports a mismatch.
    fn over(&mut self, name: impl Into<String>, max: usize, mut f: impl FnMut(usize) -> Option<Value>) {
        let cx = (0..=max).find_map(|m| f(m).map(|v| json!({"m": m, "detail": v})));
        self.push(name, cx);
    }
}

fn mismatch<T: std::fmt::Display + PartialEq>(expected: &T, found: &T) -> Option<Value> {
    (expected != found).then(|| json!({"expected": expected.to_string(), "found": found.to_string()}))
}

pub const ORACLE_NS: [(i64, i64); 7] = [(-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1), (3, 1), (1, 2)];

pub fn run_suite(suite: Suite, bounds: &Bounds) -> Result<Report, CliError> {
    let (name, checks) = match suite {
        Suite::Figures => ("figures", figures()),
        Suite::Oracle => ("oracle", oracle(bounds)?),
        Suite::Identities => ("identities", identities(bounds)?),
        Suite::Qidentities => ("qidentities", qidentities(bounds)?),
        Suite::Species => ("species", species(bounds)?),
    };
    Ok(Report { suite: name, passed: checks.0.iter().all(|c| c.ok), checks: checks.0 })
}

pub fn render(report: &Report) -> Rendered {
    let mut text = String::new();
    let mut csv = String::from("check,ok\n");
    for c in &report.checks {
        text.push_str(&format!("{} {}\n", if c.ok { "PASS" } else { "FAIL" }, c.name));
        if let Some(cx) = &c.counterexample {
            text.push_str(&format!("     counterexample: {cx}\n"));
        }
        csv.push_str(&format!("\"{}\",{}\n", c.name.replace('"', "\"\""), c.ok));
    }
    let failed = report.checks.iter().filter(|c| !c.ok).count();
    text.push_str(&format!("{}: {} checks, {failed} failed\n", report.suite, report.checks.len()));
    let mut out = Rendered::new(serde_json::to_value(report).expect("serializable"), text, csv);
    out.exit_code = if report.passed { 0 } else { 1 };
    out
}

/// `mul(k, m)` for `h_m = m!`, rows `k = 1..=6`, columns `m = k..=6`.
pub const MUL_FIGURE: [&[i64]; 6] = [&[1, 1, 4, 17, 92, 572], &[1, 1, 5, 21, 119], &[1, 1, 5, 22], &[1, 1, 5], &[1, 1], &[1]];
/// `pal(k, m)` for `v = (1, 1, 3, 13, 71, 461)`, same layout.
pub const PAL_FIGURE: [&[i64]; 6] = [&[1, 1, 3, 13, 71, 461], &[1, 0, 1, 0, 3], &[1, 1, 4, 14], &[1, 0, 2], &[1, 1], &[1]];
pub const FIGURE_ALPHABET: [u64; 6] = [1, 1, 3, 13, 71, 461];

fn figure_entry(fig: &[&[i64]; 6], k: usize, m: usize) -> Integer {
    if k == 0 {
        return int((m == 0) as i64);
    }
    if m < k {
        return int(0);
    }
    int(fig[k - 1][m - k])
}

fn figures() -> Checks {
    let mut c = Checks::new();
    let mul = DimensionProfile::preset("ssym", 6).expect("preset").mul_table().clone();
    let pal = pal_table(&WeightedAlphabet::from_u64(&FIGURE_ALPHABET), 6).table;
    for (label, table, fig) in [("mul(k, m) for h_m = m!", &mul, &MUL_FIGURE), ("pal(k, m) for v = (1,1,3,13,71,461)", &pal, &PAL_FIGURE)] {
        let cx = (1..=6)
            .flat_map(|k| (k..=6).map(move |m| (k, m)))
            .find(|&(k, m)| table.get(k, m) != figure_entry(fig, k, m))
            .map(|(k, m)| json!({"k": k, "m": m, "expected": int_to_json(&figure_entry(fig, k, m)), "found": int_to_json(&table.get(k, m))}));
        c.push(label, cx);
    }
    c.over("alternating column sums of the two arrays agree", 6, |m| {
        let a: Integer = (0..=m).map(|k| if k % 2 == 0 { figure_entry(&MUL_FIGURE, k, m) } else { -figure_entry(&MUL_FIGURE, k, m) }).sum();
        let b: Integer = (0..=m).map(|k| if k % 2 == 0 { figure_entry(&PAL_FIGURE, k, m) } else { -figure_entry(&PAL_FIGURE, k, m) }).sum();
        mismatch(&a, &b)
    });
    c
}

fn instances(bounds: &Bounds, m: usize) -> Result<Vec<(String, HopfInstance<Rational>)>, CliError> {
    let opts = BuildOptions::default();
    let one = Rational::one();
    let shuffle = |v: &[Integer]| -> Result<(String, HopfInstance<Rational>), CliError> {
        let a = WeightedAlphabet::new(v.to_vec())?;
        let label = format!("shuffle({})", crate::output::join(v));
        Ok((label, build_shuffle(&a, one.clone(), m, opts)?))
    };
    if let Some(v) = &bounds.alphabet {
        return Ok(vec![shuffle(v)?]);
    }
    let mut out = Vec::new();
    for v in [&[1][..], &[2], &[1, 1], &[1, 1, 3]] {
        out.push(shuffle(&v.iter().map(|&x| int(x)).collect::<Vec<_>>())?);
    }
    out.push(("sym_powersum".into(), build_sym_powersum(m, opts)?));
    out.push(("qsym_monomial".into(), build_qsym_monomial(m, opts)?));
    Ok(out)
}

/// `(x - 1)^a (x + 1)^b` for the multiplicities of ±1 in `chi`.
fn only_plus_minus_one(chi: &Poly<Rational>) -> bool {
    let plus = Poly::from_ints(&[-1, 1]).pow(chi.root_multiplicity(&Rational::one()) as u64);
    let minus = Poly::from_ints(&[1, 1]).pow(chi.root_multiplicity(&-Rational::one()) as u64);
    *chi == plus.mul(&minus)
}

fn oracle(bounds: &Bounds) -> Result<Checks, CliError> {
    let m_max = bounds.max_degree.unwrap_or(4);
    let ns = bounds.ns.clone().unwrap_or_else(|| ORACLE_NS.iter().map(|&(p, q)| rational(p, q)).collect());
    let mut c = Checks::new();
    for (label, inst) in instances(bounds, m_max)? {
        for chk in check_adams_char_polys(&inst, &ns, m_max)? {
            let cx = (!chk.ok).then(|| json!({"oracle": chk.oracle, "closed_form": chk.closed_form}));
            c.push(format!("{label}: char poly of Ψ_{} on H_{}", chk.n, chk.m), cx);
        }
        let s = antipode(&inst, m_max)?;
        let id = GradedEndomorphism::identity(&inst, m_max);
        let e = GradedEndomorphism::unit_counit(&inst, m_max);
        let left = convolution(&s, &id, &inst)? == e;
        let right = convolution(&id, &s, &inst)? == e;
        c.push(format!("{label}: S * id = id * S = ιε"), (!(left && right)).then(|| json!({"left": left, "right": right})));
        for m in 0..=m_max {
            let formula = antipode_formula(&inst, m).expect("built instances have a formula");
            let cx = (s.block(m) != &formula).then(|| json!({"takeuchi": format!("{:?}", s.block(m)), "formula": format!("{formula:?}")}));
            c.push(format!("{label}: Takeuchi antipode equals basis formula on H_{m}"), cx);
            let chi = char_poly_exact(s.block(m));
            c.push(format!("{label}: antipode eigenvalues are ±1 on H_{m}"), (!only_plus_minus_one(&chi)).then(|| json!(chi.to_string())));
        }
    }
    Ok(c)
}

fn fibonacci_odd_compositions(n: usize) -> Integer {
    // odd compositions of n: f_0 = f_1 = f_2 = 1
    let mut f = vec![int(1), int(1), int(1)];
    while f.len() <= n {
        let k = f.len();
        f.push(&f[k - 1] + &f[k - 2]);
    }
    f[n].clone()
}

fn identities(bounds: &Bounds) -> Result<Checks, CliError> {
    let sym_max = bounds.max_degree.unwrap_or(40);
    let gf_max = bounds.max_degree.unwrap_or(30);
    let table_max = bounds.max_degree.unwrap_or(20);
    let mut c = Checks::new();
    let sym = DimensionProfile::preset("sym", sym_max)?;
    let sym_trace = antipode_trace_gf(&sym, sym_max)?;
    let sign = |m: usize| if m % 2 == 0 { int(1) } else { int(-1) };
    c.over("sym: c(m) = e(m) - o(m)", sym_max, |m| {
        let s = partition_statistics(m);
        mismatch(&int(s.self_conjugate as i64), &(int(s.even_even_parts as i64) - int(s.odd_even_parts as i64)))
    });
    c.over("sym: (-1)^m c(m) = Σ_k (-1)^k p_k(m)", sym_max, |m| {
        let rhs: Integer = (0..=m).map(|k| sign(k) * partitions_by_length(m, k)).sum();
        mismatch(&(sign(m) * int(partition_statistics(m).self_conjugate as i64)), &rhs)
    });
    c.over("sym: h(t²)/h(t) gives (-1)^m c(m)", sym_max, |m| {
        let expected = Rational::from_integer(sign(m) * int(partition_statistics(m).self_conjugate as i64));
        mismatch(&expected, sym_trace.coeff(m))
    });

    let qsym = DimensionProfile::preset("qsym", table_max)?;
    let peak = DimensionProfile::preset("peak", table_max)?;
    let closed_qsym = |m: usize| if m == 0 { int(1) } else if m % 2 == 0 { int(0) } else { -int(2).pow(((m - 1) / 2) as u32) };
    let closed_peak = |m: usize| {
        if m % 2 == 0 {
            fibonacci_odd_compositions(m / 2)
        } else {
            -fibonacci_odd_compositions(m.div_ceil(2) + 1)
        }
    };
    for (label, p, closed) in [("qsym", &qsym, &closed_qsym as &dyn Fn(usize) -> Integer), ("peak", &peak, &closed_peak)] {
        let gf = antipode_trace_gf(p, table_max)?;
        let alphabet = p.alphabet().expect("cofree presets have alphabets");
        let pal = pal_table(&alphabet, table_max).table;
        c.over(format!("{label}: h(t²)/h(t) matches the closed trace formula"), table_max, |m| {
            mismatch(&Rational::from_integer(closed(m)), gf.coeff(m))
        });
        c.over(format!("{label}: palindrome counts match the closed trace formula"), table_max, |m| {
            mismatch(&closed(m), &pal.alternating_column_sum(m))
        });
    }

    for name in ["ssym", "sym"] {
        let p = DimensionProfile::preset(name, gf_max)?;
        for n in 1..=3i64 {
            let n = rational(n, 1);
            let lhs = trace_gf(&p, &(&n * &n), gf_max)?.substitute_power(2);
            let rhs = trace_gf(&p, &n, gf_max)?.mul(&trace_gf(&p, &-n.clone(), gf_max)?)?;
            c.over(format!("{name}: h_{{n²}}(t²) = h_n(t) h_{{-n}}(t) for n = {n}"), gf_max, |m| mismatch(lhs.coeff(m), rhs.coeff(m)));
        }
    }

    for v in [vec![1u64, 1], vec![1, 1, 3], vec![2, 0, 1], FIGURE_ALPHABET.to_vec()] {
        let a = WeightedAlphabet::from_u64(&v);
        let gfs = pal_gfs(&a, gf_max.min(20));
        c.over(format!("v = {v:?}: even and odd palindrome generating functions match direct counts"), gf_max.min(20), |m| {
            let mut direct = vec![int(0); m + 1];
            for comp in palindromic_compositions(&a, m) {
                direct[comp.length()] += palindromes_of_multiweight(&a, &comp);
            }
            (0..=m).find_map(|k| {
                let gf = if k % 2 == 0 { gfs.even.coeff(k / 2, m) } else { gfs.odd.coeff(k / 2, m) };
                mismatch(&Rational::from_integer(direct[k].clone()), gf).map(|cx| json!({"k": k, "values": cx}))
            })
        });
    }
    Ok(c)
}

fn qidentities(bounds: &Bounds) -> Result<Checks, CliError> {
    let m_max = bounds.max_degree.unwrap_or(8);
    let mut c = Checks::new();
    for v in [vec![1u64, 1], vec![2], vec![1, 0, 1], vec![1, 1, 3]] {
        let a = WeightedAlphabet::from_u64(&v);
        let profile = DimensionProfile::from_v(&a, m_max)?;
        c.over(format!("v = {v:?}: q = 1 specialization of the q-factorization"), m_max, |m| {
            let f = q_char_poly(&a, m, DEFAULT_WORD_CAP).ok()?;
            (f.at_q_one() != cofree_char_poly(&a, m)).then(|| json!(format!("{:?}", f.at_q_one())))
        });
        c.over(format!("v = {v:?}: q-trace at q = 1 equals trace(S)"), m_max, |m| {
            let tr = q_trace(&a, m, DEFAULT_WORD_CAP).ok()?;
            let expected = trace_adams(&profile, &-Rational::one(), m).ok()?;
            mismatch(&expected, &Rational::from_integer(tr.at_one()))
                .or_else(|| mismatch(&cofree_trace(&a, m), &tr.at_one()))
        });
        let gfs = q_pal_gfs(&a, m_max)?;
        c.over(format!("v = {v:?}: q-palindrome generating functions match direct counts"), m_max, |m| {
            let mut direct = vec![Laurent::zero(); m + 1];
            for comp in palindromic_compositions(&a, m) {
                direct[comp.length()] = direct[comp.length()].clone()
                    + Laurent::monomial(palindromes_of_multiweight(&a, &comp), comp.inv() as i64);
            }
            let norm = q_normalizer(m);
            let pal = (0..=m).find_map(|k| {
                let gf = if k % 2 == 0 { gfs.even.coeff(k / 2, m) } else { gfs.odd.coeff(k / 2, m) };
                mismatch(&(direct[k].clone() * norm.clone()), gf).map(|cx| json!({"k": k, "values": cx}))
            });
            pal.or_else(|| {
                let tr = q_trace(&a, m, DEFAULT_WORD_CAP).ok()?;
                mismatch(&(tr * norm), gfs.trace.coeff(m)).map(|cx| json!({"trace": cx}))
            })
        });
    }
    for r in 1..=3u64 {
        let a = WeightedAlphabet::from_u64(&[r]);
        c.over(format!("v = ({r}): q-trace is (-1)^m r^⌈m/2⌉ q^C(m,2)"), m_max, |m| {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            let exp = i64::try_from(binomial(m as u64, 2)).expect("small");
            let expected = Laurent::monomial(int(sign) * int(r as i64).pow(m.div_ceil(2) as u32), exp);
            let found = q_trace(&a, m, DEFAULT_WORD_CAP).ok()?;
            mismatch(&expected, &found)
        });
    }
    let oracle_max = m_max.min(4);
    let a = WeightedAlphabet::from_u64(&[1, 1]);
    let inst = build_shuffle(&a, Laurent::q(), oracle_max, BuildOptions::default())?;
    for m in 0..=oracle_max {
        let chi = char_poly_exact(&antipode_matrix(&inst, m)?);
        let expected = q_char_poly(&a, m, DEFAULT_WORD_CAP)?.to_poly();
        c.push(format!("v = (1,1), symbolic q: antipode char poly on H_{m} matches the factorization"), mismatch(&expected, &chi));
    }
    Ok(c)
}

/// `S(m, k)` by the triangle recurrence.
fn stirling2(m_max: usize) -> Vec<Vec<Integer>> {
    let mut s = vec![vec![int(0); m_max + 1]; m_max + 1];
    s[0][0] = int(1);
    for m in 1..=m_max {
        for k in 1..=m {
            s[m][k] = int(k as i64) * &s[m - 1][k] + &s[m - 1][k - 1];
        }
    }
    s
}

pub const PI_TRACES: [i64; 10] = [1, -1, 0, 1, 1, -2, -9, -9, 50, 267];

fn species(bounds: &Bounds) -> Result<Checks, CliError> {
    let m_max = bounds.max_degree.unwrap_or(12);
    let mut c = Checks::new();
    let pi = SpeciesProfile::preset("Pi", m_max)?;
    let pi_trace = species_antipode_trace(&pi, m_max)?;
    c.over("Pi: antipode traces 1,-1,0,1,1,-2,-9,-9,50,267", m_max.min(PI_TRACES.len() - 1), |m| {
        mismatch(&Rational::from_integer(int(PI_TRACES[m])), &pi_trace.values[m])
    });
    let sigma = SpeciesProfile::preset("Sigma", m_max)?;
    let sigma_trace = species_antipode_trace(&sigma, m_max)?;
    c.over("Sigma: antipode trace is -1 in every positive degree", m_max, |m| {
        let expected = if m == 0 { Rational::one() } else { -Rational::one() };
        mismatch(&expected, &sigma_trace.values[m])
    });
    let expmul = species_expmul(&pi, m_max)?;
    let s2 = stirling2(m_max);
    c.over("Pi: expmul(k, m) = S(m, k)", m_max, |m| {
        (0..=m).find_map(|k| mismatch(&s2[m][k], &expmul.get(k, m)).map(|cx| json!({"k": k, "values": cx})))
    });
    for name in SPECIES_PRESETS {
        let sp = SpeciesProfile::preset(name, m_max)?;
        let p = sp.p().integer_coeffs()?;
        let a = species_antipode_trace(&sp, m_max)?;
        let b = assembly_trace(&p, m_max)?;
        c.over(format!("{name}: 1/h(t) and exp(-p(t)) give the same antipode traces"), m_max, |m| mismatch(&a.values[m], &b.values[m]));
    }
    let positive: [(&str, fn(usize) -> i64); 3] =
        [("X", |m| (m == 1) as i64), ("E_+", |m| (m >= 1) as i64), ("X + X^2", |m| [0, 1, 2].get(m).copied().unwrap_or(0))];
    for (label, dim) in positive {
        let dims: Vec<Integer> = (0..=m_max).map(|m| int(dim(m))).collect();
        let sp = SpeciesProfile::linear_orders(&dims, m_max)?;
        let a = species_antipode_trace(&sp, m_max)?;
        c.over(format!("L∘{label}: trace(S|H[m]) = -dim P[m] for m ≥ 1"), m_max, |m| {
            let expected = if m == 0 { Rational::one() } else { -Rational::from_integer(dims[m].clone()) };
            mismatch(&expected, &a.values[m])
        });
    }
    Ok(c)
}
