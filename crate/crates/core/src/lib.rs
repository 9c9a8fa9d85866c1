//! Exact spectra of Adams operators on graded connected Hopf algebras,
//! computed from dimension data alone.
//!
//! The crate is organised bottom-up: exact rings and series, the
//! combinatorial counting kernels, then the closed-form spectra for the
//! general, cofree, q-deformed and species settings.

pub mod cofree_q;
pub mod combinatorics;
pub mod laurent;
pub mod numeric;
pub mod poly;
pub mod ring;
pub mod series;
pub mod species;
pub mod spectra;
pub mod table;

pub use laurent::{Laurent, QPolynomial};
pub use poly::Poly;
pub use ring::{CoefficientRing, Integer, Rational};
pub use series::{BivariateSeries, Flavor, RationalFunction, Series, SeriesError};
