//! Dense univariate polynomials over ℚ, the building block of `NovScalar`.

use super::rational::Rational;
use crate::ring::Ring;

/// Coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn zero() -> Self {
        UPoly(vec![])
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::new(vec![c])
    }

    pub fn one() -> Self {
        UPoly::constant(Rational::one())
    }

    /// `c * s^k`
    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        UPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        UPoly::new((0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UPoly(self.0.iter().map(Ring::neg).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UPoly::new(self.0.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j].add_assign(&a.mul(b));
            }
        }
        UPoly::new(out)
    }

    /// Drop the factor `s^k` (the caller guarantees divisibility).
    pub fn shift_down(&self, k: usize) -> Self {
        UPoly::new(self.0[k.min(self.0.len())..].to_vec())
    }

    /// Substitute `s ↦ s^k`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Rational::zero(); (self.0.len() - 1) * k + 1];
        for (i, c) in self.0.iter().enumerate() {
            v[i * k] = c.clone();
        }
        UPoly::new(v)
    }

    /// Gcd of the exponents in the support (0 for constants).
    pub fn exponent_gcd(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(0, |g, (i, _)| num_integer::gcd(g, i))
    }

    /// Substitute `s^k ↦ s`, assuming every exponent is divisible by `k`.
    pub fn deflate(&self, k: usize) -> Self {
        if k <= 1 {
            return self.clone();
        }
        UPoly::new(self.0.iter().step_by(k).cloned().collect())
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.0.len() - 1;
        let lead_inv = divisor.lead().inv().expect("nonzero rational");
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.0.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(d));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.lead().inv() {
            Some(inv) => self.scale(&inv),
            None => UPoly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval<T, F>(&self, x: &T, lift: F) -> T
    where
        T: Ring,
        F: Fn(&Rational) -> T,
    {
        self.0
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc.mul(x).add(&lift(c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| Rational::from_int(x)).collect())
    }

    #[test]
    fn division_identity() {
        let a = p(&[1, 0, -3, 2, 5]);
        let b = p(&[2, 1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_products() {
        let f = p(&[1, 1]);
        let g = p(&[-2, 1]);
        let h = p(&[3, 0, 1]);
        assert_eq!(f.mul(&g).gcd(&f.mul(&h)), f);
    }

    #[test]
    fn inflate_deflate_round_trip() {
        let a = p(&[1, 2, 3]);
        assert_eq!(a.inflate(3).deflate(3), a);
        assert_eq!(a.inflate(3).exponent_gcd(), 3);
    }
}
