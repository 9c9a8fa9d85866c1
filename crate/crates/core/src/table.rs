//! Square integer arrays `T(k, m)` for `0 ≤ k, m ≤ M`, such as `mul(k,m)` and
//! `pal(k,m)`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::ring::{int_from_json, int_to_json, Integer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    entries: Vec<Vec<Integer>>,
}

impl Table {
    pub fn zeros(max_degree: usize) -> Self {
        Table { entries: vec![vec![BigInt::zero(); max_degree + 1]; max_degree + 1] }
    }

    pub fn max_degree(&self) -> usize {
        self.entries.len() - 1
    }

    /// `T(k, m)`; zero outside the stored range.
    pub fn get(&self, k: usize, m: usize) -> Integer {
        self.entries.get(k).and_then(|row| row.get(m)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, k: usize, m: usize, value: Integer) {
        self.entries[k][m] = value;
    }

    pub fn row(&self, k: usize) -> &[Integer] {
        &self.entries[k]
    }

    pub fn column(&self, m: usize) -> Vec<Integer> {
        self.entries.iter().map(|row| row[m].clone()).collect()
    }

    pub fn column_sum(&self, m: usize) -> Integer {
        self.entries.iter().map(|row| &row[m]).sum()
    }

    /// `Σ_k (-1)^k T(k, m)`.
    pub fn alternating_column_sum(&self, m: usize) -> Integer {
        self.entries
            .iter()
            .enumerate()
            .map(|(k, row)| if k % 2 == 0 { row[m].clone() } else { -row[m].clone() })
            .sum()
    }

    /// `Σ_{k ≡ parity (mod 2)} T(k, m)`.
    pub fn parity_column_sum(&self, m: usize, parity: usize) -> Integer {
        self.entries.iter().skip(parity).step_by(2).map(|row| &row[m]).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k\\m");
        for m in 0..=self.max_degree() {
            write!(out, ",{m}").unwrap();
        }
        out.push('\n');
        for (k, row) in self.entries.iter().enumerate() {
            write!(out, "{k}").unwrap();
            for v in row {
                write!(out, ",{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let width = self.entries.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
        let mut out = String::new();
        for (k, row) in self.entries.iter().enumerate() {
            write!(out, "k={k:<3}").unwrap();
            for v in row {
                write!(out, " {:>width$}", v.to_string()).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    max_degree: usize,
    rows_k: Vec<usize>,
    entries: Vec<Vec<serde_json::Value>>,
}

impl Serialize for Table {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TableRepr {
            max_degree: self.max_degree(),
            rows_k: (0..=self.max_degree()).collect(),
            entries: self.entries.iter().map(|row| row.iter().map(int_to_json).collect()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Table {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = TableRepr::deserialize(deserializer)?;
        let n = repr.max_degree + 1;
        if repr.entries.len() != n || repr.entries.iter().any(|r| r.len() != n) {
            return Err(serde::de::Error::custom("table entries must be square of side max_degree + 1"));
        }
        let entries = repr
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| int_from_json(v).ok_or_else(|| serde::de::Error::custom("table entry must be an integer")))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Ok(Table { entries })
    }
}
