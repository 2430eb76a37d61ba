//! The commutative coefficient ring abstraction shared by every module.

use std::fmt::{Debug, Display};

/// A commutative ring with unit. `inv` returns `None` on non-units, so
/// field-only algorithms can detect a non-field ring at runtime.
pub trait Ring: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(n: i64) -> Self;
    fn inv(&self) -> Option<Self>;

    /// Whether every nonzero element is a unit.
    fn is_field() -> bool {
        false
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_assign(&mut self, other: &Self) {
        *self = Ring::add(self, other);
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `(-1)^sign * self`, the workhorse of every Koszul sign.
    fn signed(&self, negate: bool) -> Self {
        if negate {
            self.neg()
        } else {
            self.clone()
        }
    }
}

/// Coordinates of a ring element over a ground field `K`.
///
/// Fields report a single coordinate under the empty key; polynomial rings
/// report one coordinate per monomial. Linear algebra over `K` then treats
/// an `R`-module with an `R`-basis as a `K`-vector space.
pub trait Coords: Ring {
    type K: Ring;
    fn coords(&self) -> Vec<(Vec<i32>, Self::K)>;
    /// The constant with coordinate `k`.
    fn embed(k: &Self::K) -> Self;
}

/// Sum of an iterator of ring elements.
pub fn sum<R: Ring, I: IntoIterator<Item = R>>(items: I) -> R {
    items.into_iter().fold(R::zero(), |acc, x| acc.add(&x))
}
