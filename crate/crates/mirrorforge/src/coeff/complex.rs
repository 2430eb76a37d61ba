use std::fmt;

use num_complex::Complex64;

use super::CoeffError;
use crate::ring::{Coords, Ring};

/// Finite double-precision complex number.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct ComplexNum(Complex64);

impl ComplexNum {
    pub fn new(z: Complex64) -> Result<Self, CoeffError> {
        if z.re.is_finite() && z.im.is_finite() {
            Ok(ComplexNum(z))
        } else {
            Err(CoeffError::NonFinite)
        }
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self, CoeffError> {
        Self::new(Complex64::new(re, im))
    }

    pub fn from_f64(x: f64) -> Self {
        ComplexNum(Complex64::new(x, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }
}

impl Ring for ComplexNum {
    fn zero() -> Self {
        ComplexNum(Complex64::new(0.0, 0.0))
    }
    fn one() -> Self {
        ComplexNum(Complex64::new(1.0, 0.0))
    }
    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        ComplexNum(self.0 + other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        ComplexNum(self.0 - other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        ComplexNum(self.0 * other.0)
    }
    fn neg(&self) -> Self {
        ComplexNum(-self.0)
    }
    fn from_i64(n: i64) -> Self {
        ComplexNum::from_f64(n as f64)
    }
    fn is_field() -> bool {
        true
    }
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| ComplexNum(self.0.inv()))
    }
}

impl Coords for ComplexNum {
    type K = ComplexNum;
    fn embed(k: &Self) -> Self {
        *k
    }
    fn coords(&self) -> Vec<(Vec<i32>, ComplexNum)> {
        if self.is_zero() {
            vec![]
        } else {
            vec![(vec![], *self)]
        }
    }
}

impl From<ComplexNum> for Complex64 {
    fn from(c: ComplexNum) -> Self {
        c.value()
    }
}

impl fmt::Display for ComplexNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
