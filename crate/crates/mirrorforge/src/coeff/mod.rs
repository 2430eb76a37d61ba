//! Exact and numeric coefficient arithmetic.

mod complex;
mod nov;
mod rational;
mod upoly;

pub use complex::ComplexNum;
pub use nov::NovScalar;
pub use rational::Rational;
pub use upoly::UPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("denominator vanishes at the specialization point")]
    PoleAtSpecialization,
    #[error("{t0} has no exact rational {n}-th root")]
    NoExactRoot { t0: String, n: u32 },
    #[error("specialization needs t0 > 0")]
    NonPositiveT0,
    #[error("non-finite floating value")]
    NonFinite,
    #[error("root denominator must be positive")]
    ZeroRootDenominator,
    #[error("malformed rational {0:?}")]
    BadRational(String),
}

/// Numeric evaluation at `T = t0`, principal roots for fractional powers.
pub trait Specialize {
    fn specialize_complex(&self, t0: f64) -> Result<ComplexNum, CoeffError>;
}

impl Specialize for Rational {
    fn specialize_complex(&self, _t0: f64) -> Result<ComplexNum, CoeffError> {
        ComplexNum::from_parts(self.to_f64(), 0.0)
    }
}

impl Specialize for NovScalar {
    fn specialize_complex(&self, t0: f64) -> Result<ComplexNum, CoeffError> {
        NovScalar::specialize_complex(self, ComplexNum::from_f64(t0))
    }
}

impl Specialize for ComplexNum {
    fn specialize_complex(&self, _t0: f64) -> Result<ComplexNum, CoeffError> {
        Ok(*self)
    }
}
