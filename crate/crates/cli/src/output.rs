use std::fmt::Display;

use adams_core::ring::int_to_json;
use adams_core::{Integer, Rational};
use serde_json::{json, Value};

use crate::args::Format;

pub const SCHEMA_VERSION: u64 = 1;

/// One command result in every output format.
#[derive(Debug, Clone)]
pub struct Rendered {
    pub json: Value,
    pub text: String,
    pub csv: String,
    /// Nonzero when the command ran but reports a failure (verify, oeis mismatch).
    pub exit_code: i32,
}

impl Rendered {
    pub fn new(json: Value, text: String, csv: String) -> Self {
        Rendered { json, text, csv, exit_code: 0 }
    }

    pub fn render(&self, format: Format, command: &str) -> String {
        let mut s = match format {
            Format::Json => {
                let mut body = match &self.json {
                    Value::Object(map) => map.clone(),
                    other => {
                        let mut map = serde_json::Map::new();
                        map.insert("result".into(), other.clone());
                        map
                    }
                };
                body.insert("schema".into(), json!(SCHEMA_VERSION));
                body.insert("command".into(), json!(command));
                serde_json::to_string_pretty(&Value::Object(body)).expect("json values serialize")
            }
            Format::Csv => self.csv.clone(),
            Format::Text => self.text.clone(),
        };
        if !s.ends_with('\n') {
            s.push('\n');
        }
        s
    }
}

pub fn ints(xs: &[Integer]) -> Value {
    Value::Array(xs.iter().map(int_to_json).collect())
}

/// Integers as JSON numbers when they fit, other rationals as "p/q" strings.
pub fn rat(x: &Rational) -> Value {
    if x.is_integer() {
        int_to_json(&x.to_integer())
    } else {
        Value::String(x.to_string())
    }
}

pub fn rats(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rat).collect())
}

pub fn join<T: Display>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// `(x - λ)^k` with signs folded in: `x^k`, `(x + 2)^k`, `(x - 1/2)^k`.
pub fn linear_factor(eigenvalue: &Rational, mult: &Integer) -> String {
    let base = if eigenvalue == &Rational::from_integer(0.into()) {
        "x".to_string()
    } else if eigenvalue < &Rational::from_integer(0.into()) {
        format!("(x + {})", -eigenvalue.clone())
    } else {
        format!("(x - {eigenvalue})")
    };
    format!("{base}^{mult}")
}

pub fn series_csv(header: &str, xs: &[Value]) -> String {
    let mut out = format!("m,{header}\n");
    for (m, x) in xs.iter().enumerate() {
        let cell = match x {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        out.push_str(&format!("{m},{cell}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use adams_core::ring::{int, rational};

    #[test]
    fn factor_text() {
        assert_eq!(linear_factor(&rational(-1, 1), &int(5)), "(x + 1)^5");
        assert_eq!(linear_factor(&rational(1, 2), &int(1)), "(x - 1/2)^1");
        assert_eq!(linear_factor(&rational(0, 1), &int(3)), "x^3");
    }

    #[test]
    fn json_is_tagged() {
        let r = Rendered::new(json!({"values": [1]}), "1".into(), "m,v\n0,1".into());
        let s = r.render(Format::Json, "trace");
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema"], json!(1));
        assert_eq!(v["command"], json!("trace"));
        assert_eq!(r.render(Format::Text, "trace"), "1\n");
    }

    #[test]
    fn rationals_keep_exactness() {
        assert_eq!(rat(&rational(3, 1)), json!(3));
        assert_eq!(rat(&rational(-1, 2)), json!("-1/2"));
    }
}
