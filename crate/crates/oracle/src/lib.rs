//! Brute-force ground truth for the closed-form spectra in `adams-core`:
//! concrete graded connected (q-)Hopf algebras as exact matrices, with
//! convolution, Adams operators, the Takeuchi antipode and the Eulerian
//! idempotents computed from the structure constants.

pub mod builders;
pub mod convolution;
pub mod formulas;
pub mod instance;
pub mod matrix;

pub use builders::{build_qsym_monomial, build_shuffle, build_sym_powersum};
pub use convolution::{
    adams_endomorphism, adams_matrices, adams_matrix, antipode, antipode_matrix, convolution, convolution_power,
    eulerian_idempotents, nilpotency_order, GradedEndomorphism,
};
pub use formulas::{antipode_formula, check_adams_char_polys, dimension_profile, CharPolyCheck};
pub use instance::{BuildOptions, HopfInstance, InstanceKind, OracleError};
pub use matrix::{char_poly_exact, Matrix};
