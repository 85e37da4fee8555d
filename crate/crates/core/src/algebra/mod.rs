//! Exact scalar and sparse multivariate polynomial arithmetic.

mod field;
pub mod linalg;
mod parse;
mod poly;

pub use field::{cyclotomic_field, cyclotomic_polynomial, roots_of_unity, Scalar, ScalarField, ZETA};
pub use poly::{Monomial, Poly, Ring, LAMBDA};
