use std::collections::BTreeMap;

use adams_core::cofree_q::{eval_q_trace, q_char_poly, q_trace};
use adams_core::combinatorics::{pal_table, witt_counts, DEFAULT_WORD_CAP};
use adams_core::ring::int_to_json;
use adams_core::series::{euler_transform, inverse_euler_transform};
use adams_core::species::{assembly_trace, species_antipode_trace, species_char_poly, species_expmul, SpeciesProfile};
use adams_core::spectra::{
    antipode_trace_gf, antipode_trace_rational, asymptotic_for_profile, char_poly_adams, comp_power_char_poly, trace_gf,
    trace_table, AsymptoticOptions, DimensionProfile,
};
use adams_core::{CoefficientRing, Flavor, Integer, Rational, Series};
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::args::{Command, EulerDirection, QValue, SpeciesSourceArgs, TraceRouteArg};
use crate::error::CliError;
use crate::input::{self, DEFAULT_MAX_DEGREE};
use crate::output::{ints, join, linear_factor, rat, rats, series_csv, Rendered};
use crate::{oeis, verify};

pub fn name(command: &Command) -> &'static str {
    match command {
        Command::Euler { .. } => "euler",
        Command::Charpoly { .. } => "charpoly",
        Command::Trace { .. } => "trace",
        Command::Tracegf { .. } => "tracegf",
        Command::Palindromes { .. } => "palindromes",
        Command::Qtrace { .. } => "qtrace",
        Command::Witt { .. } => "witt",
        Command::Species { .. } => "species",
        Command::Asym { .. } => "asym",
        Command::Verify { .. } => "verify",
        Command::Oeis { .. } => "oeis",
    }
}

pub fn execute(command: &Command) -> Result<Rendered, CliError> {
    match command {
        Command::Euler { direction, h, g, max_degree, force_nonrealizable } => {
            euler(*direction, h.as_deref(), g.as_deref(), *max_degree, *force_nonrealizable)
        }
        Command::Charpoly { profile, n, m, composition } => {
            let p = input::profile(profile, Some(*m))?;
            charpoly(&p, n, *m, *composition)
        }
        Command::Trace { profile, n, max_degree, route } => {
            let p = input::profile(profile, *max_degree)?;
            trace(&p, n, max_degree.unwrap_or(p.max_degree()), *route)
        }
        Command::Tracegf { profile, n, max_degree } => {
            let p = input::profile(profile, *max_degree)?;
            tracegf(&p, n, max_degree.unwrap_or(p.max_degree()))
        }
        Command::Palindromes { profile, max_degree } => {
            let p = input::profile(profile, *max_degree)?;
            palindromes(&p, max_degree.unwrap_or(p.max_degree()))
        }
        Command::Qtrace { profile, max_degree, q, charpoly } => {
            let p = input::profile(profile, *max_degree)?;
            qtrace(&p, max_degree.unwrap_or(p.max_degree()), q, *charpoly)
        }
        Command::Witt { profile, max_degree } => {
            let p = input::profile(profile, *max_degree)?;
            witt(&p, max_degree.unwrap_or(p.max_degree()))
        }
        Command::Species { source, max_degree, n } => {
            // explicit dimension lists default to their own length
            let given = source.h.as_ref().or(source.p.as_ref()).or(source.linear_orders.as_ref());
            let m = max_degree.or(given.map(|d| d.len().saturating_sub(1))).unwrap_or(DEFAULT_MAX_DEGREE);
            species(source, m, n.as_ref())
        }
        Command::Asym { profile, at, precision_bits, tolerance } => {
            let p = input::profile(profile, None)?;
            let opts = AsymptoticOptions { precision_bits: *precision_bits, tolerance: tolerance.clone() };
            asym(&p, at, &opts)
        }
        Command::Verify { suite, max_degree, alphabet, n } => {
            let bounds = verify::Bounds { max_degree: *max_degree, alphabet: alphabet.clone(), ns: n.clone() };
            let report = verify::run_suite(*suite, &bounds)?;
            Ok(verify::render(&report))
        }
        Command::Oeis { id, values, quantity, max_degree, start, cache_dir, allow_network } => {
            let computed = oeis::computed_values(values, *quantity, *max_degree)?;
            let cache = oeis::Cache::resolve(cache_dir.as_deref())?;
            let record = oeis::fetch(&cache, id, *allow_network)?;
            let report = oeis::compare(&record, &computed, *start);
            Ok(oeis::render(&report, &record))
        }
    }
}

fn profile_json(p: &DimensionProfile) -> Value {
    json!({
        "source": p.source(),
        "h": ints(p.h()),
        "g": ints(p.g()),
        "v": ints(p.v()),
        "realizable": p.is_realizable(),
        "rational": p.rational().map(ToString::to_string),
    })
}

fn euler(
    direction: EulerDirection,
    h: Option<&[Integer]>,
    g: Option<&[Integer]>,
    max_degree: Option<usize>,
    force: bool,
) -> Result<Rendered, CliError> {
    match direction {
        EulerDirection::Forward => {
            let g = g.ok_or_else(|| CliError::usage("euler", "`euler forward` needs --g"))?;
            if h.is_some() {
                return Err(CliError::usage("euler", "`euler forward` takes --g only"));
            }
            let m = max_degree.unwrap_or(g.len());
            let h = euler_transform(g, m).integer_coeffs()?;
            let json = json!({"direction": "forward", "g": ints(g), "h": ints(&h)});
            Ok(Rendered::new(json, join(&h), series_csv("h", ints(&h).as_array().unwrap())))
        }
        EulerDirection::Invert => {
            let h = h.ok_or_else(|| CliError::usage("euler", "`euler invert` needs --h"))?;
            if g.is_some() {
                return Err(CliError::usage("euler", "`euler invert` takes --h only"));
            }
            if h.is_empty() {
                return Err(CliError::domain("MalformedInput", "--h is empty"));
            }
            let m = max_degree.unwrap_or(h.len() - 1).min(h.len() - 1);
            let inv = inverse_euler_transform(&Series::from_integers(&h[..=m], m, Flavor::Ogf))?;
            let negative = inv.first_negative().map(|(i, v)| (i, v.clone()));
            if let (Some((degree, value)), false) = (&negative, force) {
                return Err(adams_core::spectra::SpectraError::NotRealizable { degree: *degree, value: value.clone() }.into());
            }
            let json = json!({
                "direction": "invert",
                "h": ints(&h[..=m]),
                "g": ints(&inv.g),
                "realizable": inv.realizable,
                "first_negative": negative.map(|(i, v)| json!({"degree": i, "value": int_to_json(&v)})),
            });
            let mut csv = String::from("i,g\n");
            for (i, x) in inv.g.iter().enumerate() {
                csv.push_str(&format!("{},{x}\n", i + 1));
            }
            Ok(Rendered::new(json, join(&inv.g), csv))
        }
    }
}

fn eigen_json(eigs: &BTreeMap<Rational, Integer>) -> Value {
    Value::Array(eigs.iter().rev().map(|(e, m)| json!({"eigenvalue": rat(e), "mult": int_to_json(m)})).collect())
}

fn eigen_text(eigs: &BTreeMap<Rational, Integer>) -> String {
    if eigs.is_empty() {
        return "1".into();
    }
    eigs.iter().rev().map(|(e, m)| linear_factor(e, m)).collect::<Vec<_>>().join(" ")
}

fn eigen_csv(eigs: &BTreeMap<Rational, Integer>) -> String {
    let mut out = String::from("eigenvalue,multiplicity\n");
    for (e, m) in eigs.iter().rev() {
        out.push_str(&format!("{e},{m}\n"));
    }
    out
}

/// Expanding beyond this degree gives unreadable output.
const EXPAND_LIMIT: u64 = 64;

fn charpoly(p: &DimensionProfile, n: &Rational, m: usize, composition: bool) -> Result<Rendered, CliError> {
    let (eigs, multiplicities) = if composition {
        if !n.is_integer() {
            return Err(CliError::usage("charpoly", "--composition needs an integer --n"));
        }
        let k = n.to_integer().to_i64().ok_or_else(|| CliError::usage("charpoly", "--n out of range"))?;
        (comp_power_char_poly(p, k, m)?.eigenvalues, Value::Null)
    } else {
        let f = char_poly_adams(p, n, m)?;
        (f.eigenvalues(), serde_json::to_value(&f).expect("serializable")["factors"].clone())
    };
    let degree = &p.h()[m];
    let poly = (degree <= &Integer::from(EXPAND_LIMIT)).then(|| adams_core::spectra::eigenvalues_to_poly(&eigs).to_string());
    let json = json!({
        "profile": profile_json(p),
        "n": rat(n),
        "m": m,
        "composition": composition,
        "degree": int_to_json(degree),
        "factors": eigen_json(&eigs),
        "multiplicities": multiplicities,
        "polynomial": poly,
    });
    let op = if composition { format!("S^{n}") } else { format!("Ψ_{n}") };
    let text = format!("{op} on H_{m} (dim {degree}): {}", eigen_text(&eigs));
    Ok(Rendered::new(json, text, eigen_csv(&eigs)))
}

fn minus_one() -> Rational {
    -Rational::one()
}

fn trace(p: &DimensionProfile, n: &Rational, max_degree: usize, route: TraceRouteArg) -> Result<Rendered, CliError> {
    let is_antipode = *n == minus_one();
    let not_applicable = |what: &str| CliError::domain("NotApplicable", format!("route {what} needs n = -1"));
    let mut routes: Vec<(&str, Vec<Rational>)> = Vec::new();
    let want = |r: TraceRouteArg| route == r || route == TraceRouteArg::All;
    if want(TraceRouteArg::Formula) {
        routes.push(("formula", trace_table(p, n, max_degree)?.values));
    }
    if want(TraceRouteArg::Gf) {
        routes.push(("gf", trace_gf(p, n, max_degree)?.into_coeffs()));
    }
    if want(TraceRouteArg::Antipode) {
        if is_antipode {
            routes.push(("antipode", antipode_trace_gf(p, max_degree)?.into_coeffs()));
        } else if route != TraceRouteArg::All {
            return Err(not_applicable("antipode"));
        }
    }
    if want(TraceRouteArg::Palindromes) {
        match (is_antipode, p.alphabet()) {
            (true, Some(a)) => {
                let t = pal_table(&a, max_degree);
                let values = (0..=max_degree).map(|m| Rational::from_integer(t.table.alternating_column_sum(m))).collect();
                routes.push(("palindromes", values));
            }
            _ if route == TraceRouteArg::All => {}
            (false, _) => return Err(not_applicable("palindromes")),
            (true, None) => return Err(input::alphabet(p).unwrap_err()),
        }
    }
    let values = routes[0].1.clone();
    if let Some((name, other)) = routes.iter().find(|(_, v)| *v != values) {
        let m = values.iter().zip(other).position(|(a, b)| a != b).unwrap_or(0);
        return Err(CliError::domain(
            "Inconsistent",
            format!("route {name} gives {} at m = {m}, route {} gives {}", other[m], routes[0].0, values[m]),
        ));
    }
    let json = json!({
        "profile": profile_json(p),
        "n": rat(n),
        "max_degree": max_degree,
        "routes": routes.iter().map(|(r, _)| *r).collect::<Vec<_>>(),
        "values": rats(&values),
    });
    Ok(Rendered::new(json, join(&values), series_csv("trace", rats(&values).as_array().unwrap())))
}

fn tracegf(p: &DimensionProfile, n: &Rational, max_degree: usize) -> Result<Rendered, CliError> {
    let gf = trace_gf(p, n, max_degree)?;
    let mut checks = serde_json::Map::new();
    let mut closed = None;
    if *n == minus_one() {
        let ratio = antipode_trace_gf(p, max_degree)?;
        checks.insert("h(t^2)/h(t)".into(), json!(ratio == gf));
        if let Some(f) = p.rational() {
            let c = antipode_trace_rational(f)?;
            checks.insert("closed_form".into(), json!(c.taylor_expand(max_degree) == gf));
            closed = Some(c.to_string());
        }
    }
    if checks.values().any(|v| v == &json!(false)) {
        return Err(CliError::domain("Inconsistent", format!("trace generating function routes disagree: {checks:?}")));
    }
    let json = json!({
        "profile": profile_json(p),
        "n": rat(n),
        "max_degree": max_degree,
        "coefficients": rats(gf.coeffs()),
        "closed_form": closed,
        "checks": checks,
    });
    let mut text = format!("h_{n}(t) = {gf}");
    if let Some(c) = &closed {
        text.push_str(&format!("\nclosed form: {c}"));
    }
    Ok(Rendered::new(json, text, series_csv("coefficient", rats(gf.coeffs()).as_array().unwrap())))
}

fn palindromes(p: &DimensionProfile, max_degree: usize) -> Result<Rendered, CliError> {
    let a = input::alphabet(p)?;
    let t = pal_table(&a, max_degree);
    let rows: Vec<Value> = (0..=max_degree)
        .map(|m| {
            json!({
                "m": m,
                "words": int_to_json(&t.words[m]),
                "pal": int_to_json(&t.pal(m)),
                "epal": int_to_json(&t.epal(m)),
                "opal": int_to_json(&t.opal(m)),
                "nopal": int_to_json(&t.nopal(m)),
                "trace": int_to_json(&t.table.alternating_column_sum(m)),
            })
        })
        .collect();
    let mut text = t.table.to_text();
    for m in 0..=max_degree {
        text.push_str(&format!(
            "m={m}: words={} epal={} opal={} nopal={} trace={}\n",
            t.words[m],
            t.epal(m),
            t.opal(m),
            t.nopal(m),
            t.table.alternating_column_sum(m)
        ));
    }
    let json = json!({"v": ints(a.counts()), "max_degree": max_degree, "pal": t.table, "degrees": rows});
    Ok(Rendered::new(json, text, t.table.to_csv()))
}

fn q_eigenvalues(f: &adams_core::cofree_q::QSpectrumFactorization, q: &Rational) -> BTreeMap<Rational, Integer> {
    let mut out: BTreeMap<Rational, Integer> = BTreeMap::new();
    let mut add = |e: Rational, m: &Integer| *out.entry(e).or_default() += m;
    for l in &f.linear {
        add(Rational::from_integer(l.sign.into()) * q.pow_u(l.q_exp), &l.mult);
    }
    for quad in &f.quadratic {
        let root = q.pow_u(quad.q_exp / 2);
        add(root.clone(), &quad.mult);
        add(-root, &quad.mult);
    }
    out.retain(|_, m| !m.is_zero());
    out
}

fn qtrace(p: &DimensionProfile, max_degree: usize, q: &QValue, with_charpoly: bool) -> Result<Rendered, CliError> {
    let a = input::alphabet(p)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut csv = match q {
        QValue::Symbolic => String::from("m,trace\n"),
        QValue::Value(_) => String::from("m,trace,value\n"),
    };
    for m in 0..=max_degree {
        let tr = q_trace(&a, m, DEFAULT_WORD_CAP)?;
        let mut row = json!({"m": m, "trace": tr.to_string()});
        let mut line = format!("m={m}: trace = {tr}");
        match q {
            QValue::Symbolic => csv.push_str(&format!("{m},{tr}\n")),
            QValue::Value(x) => {
                let value = eval_q_trace(&tr, x)
                    .ok_or_else(|| CliError::domain("Undefined", format!("q-trace {tr} at q = {x}")))?;
                row["value"] = rat(&value);
                line.push_str(&format!(" = {value} at q = {x}"));
                csv.push_str(&format!("{m},{tr},{value}\n"));
            }
        }
        if with_charpoly {
            let f = q_char_poly(&a, m, DEFAULT_WORD_CAP)?;
            row["charpoly"] = serde_json::to_value(&f).expect("serializable");
            line.push_str(&format!("; char poly = {}", f.to_poly()));
            if let QValue::Value(x) = q {
                let eigs = q_eigenvalues(&f, x);
                row["eigenvalues"] = eigen_json(&eigs);
                line.push_str(&format!(" = {}", eigen_text(&eigs)));
            }
        }
        rows.push(row);
        text.push_str(&line);
        text.push('\n');
    }
    let q_json = match q {
        QValue::Symbolic => json!("symbolic"),
        QValue::Value(x) => rat(x),
    };
    let json = json!({"v": ints(a.counts()), "q": q_json, "max_degree": max_degree, "degrees": rows});
    Ok(Rendered::new(json, text, csv))
}

fn witt(p: &DimensionProfile, max_degree: usize) -> Result<Rendered, CliError> {
    let a = input::alphabet(p)?;
    let lyndon = witt_counts(&a, max_degree)?;
    let g = &p.g()[..max_degree];
    if lyndon != g {
        return Err(CliError::domain(
            "Inconsistent",
            format!("Witt counts ({}) differ from the inverse Euler transform ({})", join(&lyndon), join(g)),
        ));
    }
    let json = json!({"v": ints(a.counts()), "h": ints(&p.h()[..=max_degree]), "lyndon": ints(&lyndon)});
    let mut csv = String::from("n,lyndon\n");
    for (i, x) in lyndon.iter().enumerate() {
        csv.push_str(&format!("{},{x}\n", i + 1));
    }
    Ok(Rendered::new(json, join(&lyndon), csv))
}

fn species_profile(source: &SpeciesSourceArgs, max_degree: usize) -> Result<SpeciesProfile, CliError> {
    let clip = |dims: &[Integer]| -> Result<Vec<Integer>, CliError> {
        if dims.len() <= max_degree {
            return Err(adams_core::species::SpeciesError::DegreeOutOfRange { m: max_degree, max: dims.len().saturating_sub(1) }
                .into());
        }
        Ok(dims[..=max_degree].to_vec())
    };
    if let Some(name) = &source.preset {
        return Ok(SpeciesProfile::preset(name, max_degree)?);
    }
    if let Some(h) = &source.h {
        return Ok(SpeciesProfile::from_h(&clip(h)?, max_degree)?);
    }
    if let Some(p) = &source.p {
        return Ok(SpeciesProfile::from_p(&clip(p)?, max_degree)?);
    }
    if let Some(p) = &source.linear_orders {
        return Ok(SpeciesProfile::linear_orders(&clip(p)?, max_degree)?);
    }
    unreachable!("clap enforces exactly one species source")
}

fn species(source: &SpeciesSourceArgs, max_degree: usize, n: Option<&Rational>) -> Result<Rendered, CliError> {
    let sp = species_profile(source, max_degree)?;
    let expmul = species_expmul(&sp, max_degree)?;
    let h = sp.h().integer_coeffs()?;
    let p = sp.p().integer_coeffs()?;
    let antipode = species_antipode_trace(&sp, max_degree)?;
    let assembly = assembly_trace(&p, max_degree)?;
    if antipode.values != assembly.values {
        return Err(CliError::domain("Inconsistent", "1/h(t) and exp(-p(t)) give different antipode traces"));
    }
    let mut charpolys = Vec::new();
    let mut text = format!("h: {}\np: {}\nantipode trace: {}\n", join(&h), join(&p), join(&antipode.values));
    if let Some(n) = n {
        for m in 0..=max_degree {
            let eigs = species_char_poly(&sp, n, m)?.eigenvalues();
            text.push_str(&format!("Ψ_{n} on H[{m}]: {}\n", eigen_text(&eigs)));
            charpolys.push(json!({"m": m, "factors": eigen_json(&eigs)}));
        }
    }
    text.push_str("expmul(k, m):\n");
    text.push_str(&expmul.to_text());
    let json = json!({
        "source": sp.source(),
        "max_degree": max_degree,
        "h": ints(&h),
        "p": ints(&p),
        "expmul": expmul,
        "antipode_trace": rats(&antipode.values),
        "n": n.map(rat),
        "charpolys": charpolys,
    });
    let mut csv = String::from("m,h,p,antipode_trace\n");
    for m in 0..=max_degree {
        csv.push_str(&format!("{m},{},{},{}\n", h[m], p[m], antipode.values[m]));
    }
    Ok(Rendered::new(json, text, csv))
}

fn asym(p: &DimensionProfile, at: &[usize], opts: &AsymptoticOptions) -> Result<Rendered, CliError> {
    let (_, report) = asymptotic_for_profile(p, at, opts)?;
    let mut text = format!("R = {}\ngamma = {}\nh* = {}\n", report.r, report.gamma, report.h_star);
    let mut csv = String::from("m,predicted,exact,relative_error\n");
    for pr in &report.predictions {
        let exact = pr.exact.clone().unwrap_or_default();
        let rel = pr.relative_error.clone().unwrap_or_default();
        text.push_str(&format!("m={}: predicted {} exact {} relative error {}\n", pr.m, pr.predicted, exact, rel));
        csv.push_str(&format!("{},{},{},{}\n", pr.m, pr.predicted, exact, rel));
    }
    let mut json = serde_json::to_value(&report).expect("serializable");
    json["function"] = json!(p.rational().map(ToString::to_string));
    Ok(Rendered::new(json, text, csv))
}

/// Signed integers in `values` as an exact sequence for OEIS comparison.
pub(crate) fn integer_values(values: &[Rational]) -> Option<Vec<Integer>> {
    values.iter().map(|v| v.is_integer().then(|| v.to_integer())).collect()
}
