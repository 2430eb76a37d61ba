//! Laurent polynomials, the expression grammar and Gröbner bases.

mod groebner;
mod parse;
mod poly;

pub use groebner::{
    buchberger, degrevlex, groebner_basis, groebner_basis_polynomial, normal_form, quotient_dimension, reduce, Exp,
    Ideal, MPoly, QuotientBasis, QuotientDim,
};
pub use parse::{parse_expr, ParseCoeff, PolyRing};
pub use poly::{format_poly, total_degree, LaurentPoly, Mono, PolyJson, TermJson};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable {name:?} at {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("quotient is not zero-dimensional")]
    NotZeroDimensional,
    #[error("polynomial uses {found} variables, ring has {expected}")]
    RingMismatch { expected: usize, found: usize },
    #[error("negative exponent in a polynomial ring")]
    NegativeExponent,
    #[error("coefficient ring is not a field")]
    CoefficientNotField,
}
