//! Adams-operator spectra of connected Hopf monoids in species.
//!
//! Everything is driven by the dimension EGF `h(t) = Σ dim H[m] t^m/m!` and
//! its logarithm `p(t)`, the dimension EGF of the primitive species.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::ring::{factorial, Integer, Rational};
use crate::series::{Flavor, Series, SeriesError};
use crate::spectra::{SpectrumFactorization, TraceRoute, TraceTable};
use crate::table::Table;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpeciesError {
    #[error("expmul({k}, {m}) = {value} is not an integer; not a Hopf monoid dimension sequence")]
    NonIntegral { k: usize, m: usize, value: String },
    #[error("expmul({k}, {m}) = {value} is negative; not a Hopf monoid dimension sequence")]
    Negative { k: usize, m: usize, value: Integer },
    #[error("degree {m} exceeds the profile's maximum degree {max}")]
    DegreeOutOfRange { m: usize, max: usize },
    #[error("unknown species preset {0:?}")]
    UnknownPreset(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl SpeciesError {
    pub fn name(&self) -> &'static str {
        match self {
            SpeciesError::NonIntegral { .. } => "NonIntegral",
            SpeciesError::Negative { .. } => "Negative",
            SpeciesError::DegreeOutOfRange { .. } => "DegreeOutOfRange",
            SpeciesError::UnknownPreset(_) => "UnknownPreset",
            SpeciesError::Series(e) => e.name(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpeciesSource {
    /// Set compositions, `h = 1/(2 - e^t)`.
    Sigma,
    /// Set partitions, `h = exp(e^t - 1)`.
    Pi,
    /// Linear orders of `P`-structures, `h = 1/(1 - p_L(t))`.
    LinearOrders { p_dims: Vec<Integer> },
    /// Exponential species, `h = e^t`.
    E,
    Custom,
}

/// Dimension data of a connected Hopf monoid: `h = exp(p)` as EGFs.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeciesProfile {
    h: Series<Rational>,
    p: Series<Rational>,
    source: SpeciesSource,
}

pub const SPECIES_PRESETS: &[&str] = &["Sigma", "Pi", "L", "E"];

fn egf_of(dims: &[Integer], max_degree: usize) -> Series<Rational> {
    Series::from_integers(dims, max_degree, Flavor::Egf)
}

impl SpeciesProfile {
    /// From `dim H[m]`, `m = 0..=M`; requires `h_0 = 1`.
    pub fn from_h(h_dims: &[Integer], max_degree: usize) -> Result<Self, SpeciesError> {
        let h = egf_of(h_dims, max_degree);
        let p = h.log()?;
        Ok(SpeciesProfile { h, p, source: SpeciesSource::Custom })
    }

    /// From the primitive dimensions `dim P[m]`; requires `p_0 = 0`.
    pub fn from_p(p_dims: &[Integer], max_degree: usize) -> Result<Self, SpeciesError> {
        let p = egf_of(p_dims, max_degree);
        let h = p.exp()?;
        Ok(SpeciesProfile { h, p, source: SpeciesSource::Custom })
    }

    /// `L ∘ P` for a positive species `P` with `p_dims[0] = 0`.
    pub fn linear_orders(p_dims: &[Integer], max_degree: usize) -> Result<Self, SpeciesError> {
        let pl = egf_of(p_dims, max_degree);
        if !pl.coeff(0).is_zero() {
            return Err(SeriesError::InvalidConstantTerm { expected: "0", found: pl.coeff(0).to_string() }.into());
        }
        let h = Series::one(max_degree, Flavor::Egf).sub(&pl)?.inverse()?;
        let p = h.log()?;
        Ok(SpeciesProfile { h, p, source: SpeciesSource::LinearOrders { p_dims: pl.integer_coeffs()? } })
    }

    pub fn preset(name: &str, max_degree: usize) -> Result<Self, SpeciesError> {
        let e_plus: Vec<Integer> = (0..=max_degree).map(|m| if m == 0 { BigInt::zero() } else { BigInt::one() }).collect();
        let mut profile = match name {
            "Sigma" => SpeciesProfile::linear_orders(&e_plus, max_degree)?,
            "Pi" => SpeciesProfile::from_p(&e_plus, max_degree)?,
            "L" => {
                let x: Vec<Integer> = (0..=max_degree).map(|m| BigInt::from((m == 1) as u8)).collect();
                SpeciesProfile::linear_orders(&x, max_degree)?
            }
            "E" => {
                let x: Vec<Integer> = (0..=max_degree).map(|m| BigInt::from((m == 1) as u8)).collect();
                SpeciesProfile::from_p(&x, max_degree)?
            }
            other => return Err(SpeciesError::UnknownPreset(other.to_string())),
        };
        profile.source = match name {
            "Sigma" => SpeciesSource::Sigma,
            "Pi" => SpeciesSource::Pi,
            "E" => SpeciesSource::E,
            _ => profile.source,
        };
        Ok(profile)
    }

    pub fn max_degree(&self) -> usize {
        self.h.truncation()
    }

    pub fn h(&self) -> &Series<Rational> {
        &self.h
    }

    pub fn p(&self) -> &Series<Rational> {
        &self.p
    }

    pub fn source(&self) -> &SpeciesSource {
        &self.source
    }

    fn check_degree(&self, m: usize) -> Result<(), SpeciesError> {
        if m > self.max_degree() {
            return Err(SpeciesError::DegreeOutOfRange { m, max: self.max_degree() });
        }
        Ok(())
    }
}

/// `expmul(k, m) = m! [t^m] p(t)^k / k!`, validated to be a nonnegative integer.
pub fn species_expmul(profile: &SpeciesProfile, max_degree: usize) -> Result<Table, SpeciesError> {
    profile.check_degree(max_degree)?;
    let p = profile.p.with_truncation(max_degree).to_ogf();
    let mut table = Table::zeros(max_degree);
    let mut power = Series::one(max_degree, Flavor::Ogf);
    for k in 0..=max_degree {
        let k_fact = Rational::from_integer(factorial(k as u64));
        for m in k..=max_degree {
            let value: Rational = power.coeff(m) * Rational::from_integer(factorial(m as u64)) / &k_fact;
            if !value.is_integer() {
                return Err(SpeciesError::NonIntegral { k, m, value: value.to_string() });
            }
            let value = value.to_integer();
            if value.is_negative() {
                return Err(SpeciesError::Negative { k, m, value });
            }
            table.set(k, m, value);
        }
        power = power.mul(&p)?;
    }
    Ok(table)
}

/// `Π_k (x - n^k)^{expmul(k, m)}`.
pub fn species_char_poly(profile: &SpeciesProfile, n: &Rational, m: usize) -> Result<SpectrumFactorization, SpeciesError> {
    let table = species_expmul(profile, m)?;
    Ok(SpectrumFactorization { n: n.clone(), m, multiplicities: table.column(m) })
}

fn integral_trace_table(series: &Series<Rational>, route: TraceRoute) -> Result<TraceTable, SpeciesError> {
    let values = series.integer_coeffs()?;
    Ok(TraceTable {
        n: Rational::from_integer(BigInt::from(-1)),
        values: values.into_iter().map(Rational::from_integer).collect(),
        route,
    })
}

/// Antipode traces from `1/h(t)` as an EGF.
pub fn species_antipode_trace(profile: &SpeciesProfile, max_degree: usize) -> Result<TraceTable, SpeciesError> {
    profile.check_degree(max_degree)?;
    let a = profile.h.with_truncation(max_degree).inverse()?;
    integral_trace_table(&a, TraceRoute::GeneratingFunction)
}

/// `h_e(m) - h_o(m)`: assemblies of `P`-structures counted with the sign of
/// their number of components, i.e. `m! [t^m] exp(-p(t))`.
pub fn assembly_trace(p_dims: &[Integer], max_degree: usize) -> Result<TraceTable, SpeciesError> {
    let p = egf_of(p_dims, max_degree);
    let a = p.neg().exp()?;
    integral_trace_table(&a, TraceRoute::Formula)
}
