//! Exact arithmetic: fields, ternary forms, univariate polynomials and
//! linear algebra.

pub mod backend;
pub mod gcd;
pub mod matrix;
pub mod modp;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod transform;
pub mod uni;

pub use backend::Backend;
pub use gcd::homog_gcd;
pub use matrix::ExactMatrix;
pub use monomial::Monomial;
pub use parse::{parse_poly, parse_uni};
pub use poly::{HomogPoly, Var};
pub use scalar::{Field, Scalar};
pub use transform::Unimodular;
pub use uni::UniPoly;
