//! Resolution of profile flags into a `DimensionProfile`.

use adams_core::combinatorics::WeightedAlphabet;
use adams_core::ring::parse_rational;
use adams_core::spectra::{DimensionProfile, SpectraError};
use adams_core::{Integer, Poly, Rational, RationalFunction};
use serde_json::Value;

use crate::args::ProfileArgs;
use crate::error::CliError;

pub const DEFAULT_MAX_DEGREE: usize = 10;

fn malformed(message: impl Into<String>) -> CliError {
    CliError::domain("MalformedInput", message)
}

/// Keeps `list[..=wanted]`, or fails when the list is too short.
fn truncate(list: &[Integer], offset: usize, wanted: Option<usize>) -> Result<Vec<Integer>, CliError> {
    let available = (list.len() + offset).saturating_sub(1);
    match wanted {
        None => Ok(list.to_vec()),
        Some(m) if m <= available => Ok(list[..m + 1 - offset].to_vec()),
        Some(m) => Err(SpectraError::DegreeOutOfRange { m, max: available }.into()),
    }
}

fn parse_coeffs(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',')
        .map(|c| parse_rational(c).ok_or_else(|| malformed(format!("bad coefficient {c:?} in {s:?}"))))
        .collect()
}

pub fn parse_rational_function(s: &str) -> Result<RationalFunction, CliError> {
    let (num, den) = s
        .split_once(';')
        .ok_or_else(|| malformed(format!("expected \"numerator;denominator\", got {s:?}")))?;
    Ok(RationalFunction::new(Poly::new(parse_coeffs(num)?), Poly::new(parse_coeffs(den)?))?)
}

fn list_from_json(value: &Value, key: &str) -> Result<Vec<Integer>, CliError> {
    value
        .as_array()
        .ok_or_else(|| malformed(format!("\"{key}\" must be an array")))?
        .iter()
        .map(|x| adams_core::ring::int_from_json(x).ok_or_else(|| malformed(format!("bad entry {x} in \"{key}\""))))
        .collect()
}

pub fn profile(args: &ProfileArgs, max_degree: Option<usize>) -> Result<DimensionProfile, CliError> {
    let src = &args.source;
    let force = args.force_nonrealizable;
    if let Some(name) = &src.preset {
        return Ok(DimensionProfile::preset(name, max_degree.unwrap_or(DEFAULT_MAX_DEGREE))?);
    }
    if let Some(h) = &src.h {
        return Ok(DimensionProfile::from_h(truncate(h, 0, max_degree)?, force)?);
    }
    if let Some(g) = &src.g {
        return Ok(DimensionProfile::from_g(truncate(g, 1, max_degree)?, force)?);
    }
    if let Some(v) = &src.v {
        let m = max_degree.unwrap_or(v.len());
        return Ok(DimensionProfile::from_v(&WeightedAlphabet::new(v.clone())?, m)?);
    }
    if let Some(f) = &src.rational {
        let f = parse_rational_function(f)?;
        return Ok(DimensionProfile::from_rational(&f, max_degree.unwrap_or(DEFAULT_MAX_DEGREE), force)?);
    }
    if let Some(path) = &src.file {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::domain("Io", format!("{}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text).map_err(|e| malformed(format!("{}: {e}", path.display())))?;
        let obj = value.as_object().ok_or_else(|| malformed("profile file must hold a JSON object"))?;
        let keys: Vec<&str> = ["h", "g", "v"].into_iter().filter(|k| obj.contains_key(*k)).collect();
        if keys.len() != 1 {
            return Err(malformed("profile file must hold exactly one of \"h\", \"g\", \"v\""));
        }
        let list = list_from_json(&obj[keys[0]], keys[0])?;
        let mut inline = args.clone();
        inline.source.file = None;
        match keys[0] {
            "h" => inline.source.h = Some(list),
            "g" => inline.source.g = Some(list),
            _ => inline.source.v = Some(list),
        }
        return profile(&inline, max_degree);
    }
    unreachable!("clap enforces exactly one profile source")
}

/// The alphabet of a cofree coalgebra with the profile's dimensions.
pub fn alphabet(p: &DimensionProfile) -> Result<WeightedAlphabet, CliError> {
    p.alphabet().ok_or_else(|| {
        CliError::domain(
            "NoAlphabet",
            format!("v = ({}) has a negative entry; no cofree coalgebra has these dimensions", crate::output::join(p.v())),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::ProfileSourceArgs;
    use adams_core::ring::int;

    fn with_h(h: &[i64]) -> ProfileArgs {
        ProfileArgs {
            source: ProfileSourceArgs { h: Some(h.iter().map(|&x| int(x)).collect()), ..Default::default() },
            force_nonrealizable: false,
        }
    }

    #[test]
    fn h_lists_truncate() {
        let p = profile(&with_h(&[1, 1, 2, 6, 24]), Some(2)).unwrap();
        assert_eq!(p.h(), &[int(1), int(1), int(2)]);
        let err = profile(&with_h(&[1, 1, 2]), Some(5)).unwrap_err();
        assert_eq!(err.name(), "DegreeOutOfRange");
    }

    #[test]
    fn rational_flag() {
        let f = parse_rational_function("1,0,-1;1,-1,-1").unwrap();
        assert_eq!(f.taylor_expand(4).integer_coeffs().unwrap(), [1, 1, 1, 2, 3].map(int));
        assert_eq!(parse_rational_function("1,2").unwrap_err().name(), "MalformedInput");
    }

    #[test]
    fn nonrealizable_needs_force() {
        assert_eq!(profile(&with_h(&[1, 2, 1]), None).unwrap_err().name(), "NotRealizable");
        let mut args = with_h(&[1, 2, 1]);
        args.force_nonrealizable = true;
        assert!(!profile(&args, None).unwrap().is_realizable());
    }
}
