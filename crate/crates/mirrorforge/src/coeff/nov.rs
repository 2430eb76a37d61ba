//! Exact rational model of the Novikov field: ℚ(s) with s = T^{1/N}.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::complex::ComplexNum;
use super::rational::Rational;
use super::upoly::UPoly;
use super::CoeffError;
use crate::ring::{Coords, Ring};

/// `s^v · p(s) / q(s)` with `s = T^{1/N}`.
///
/// Canonical form: `p(0) ≠ 0`, `q(0) = 1`, `gcd(p, q) = 1`, and `N` is the
/// smallest root denominator able to express the value. Structural equality
/// is therefore value equality. Zero is stored as `p = 0, v = 0, N = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NovScalar {
    n: u32,
    v: i64,
    p: UPoly,
    q: UPoly,
}

impl NovScalar {
    pub fn from_parts(n: u32, v: i64, p: UPoly, q: UPoly) -> Result<Self, CoeffError> {
        if n == 0 {
            return Err(CoeffError::ZeroRootDenominator);
        }
        if q.is_zero() {
            return Err(CoeffError::ZeroInverse);
        }
        Ok(Self::normalize(n, v, p, q))
    }

    pub fn constant(c: Rational) -> Self {
        Self::normalize(1, 0, UPoly::constant(c), UPoly::one())
    }

    /// `T^e` for a rational exponent.
    pub fn t_pow(e: &Rational) -> Self {
        let n = u32::try_from(e.denom()).expect("root denominator fits u32");
        let v = i64::try_from(e.numer()).expect("exponent numerator fits i64");
        Self::normalize(n, v, UPoly::one(), UPoly::one())
    }

    /// `s^k` in the context `s = T^{1/N}`.
    pub fn s_pow(n: u32, k: i64) -> Self {
        Self::normalize(n, k, UPoly::one(), UPoly::one())
    }

    /// Build `numer(s)/denom(s)` from Laurent data `[(exp, coeff)]`.
    pub fn from_laurent(
        n: u32,
        numer: &[(i64, Rational)],
        denom: &[(i64, Rational)],
    ) -> Result<Self, CoeffError> {
        let to_poly = |terms: &[(i64, Rational)]| -> (i64, UPoly) {
            let low = terms.iter().map(|(e, _)| *e).min().unwrap_or(0);
            let high = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
            let mut v = vec![Rational::zero(); (high - low + 1) as usize];
            for (e, c) in terms {
                v[(e - low) as usize].add_assign(c);
            }
            (low, UPoly::new(v))
        };
        let (vn, p) = to_poly(numer);
        let (vd, q) = to_poly(denom);
        Self::from_parts(n, vn - vd, p, q)
    }

    fn normalize(n: u32, v: i64, p: UPoly, q: UPoly) -> Self {
        if p.is_zero() {
            return Self::zero_value();
        }
        let lp = p.low_degree().unwrap_or(0);
        let lq = q.low_degree().unwrap_or(0);
        let v = v + lp as i64 - lq as i64;
        let (mut p, mut q) = (p.shift_down(lp), q.shift_down(lq));
        let g = p.gcd(&q);
        if g.degree().unwrap_or(0) > 0 {
            p = p.div_rem(&g).0;
            q = q.div_rem(&g).0;
        }
        let c = q.coeff(0).inv().expect("constant term nonzero after shift");
        p = p.scale(&c);
        q = q.scale(&c);
        let reduce = [v.unsigned_abs() as usize, p.exponent_gcd(), q.exponent_gcd()]
            .into_iter()
            .fold(n as usize, num_integer::gcd);
        if reduce > 1 {
            return NovScalar {
                n: n / reduce as u32,
                v: v / reduce as i64,
                p: p.deflate(reduce),
                q: q.deflate(reduce),
            };
        }
        NovScalar { n, v, p, q }
    }

    fn zero_value() -> Self {
        NovScalar { n: 1, v: 0, p: UPoly::zero(), q: UPoly::one() }
    }

    pub fn root_denominator(&self) -> u32 {
        self.n
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.v == 0 && self.p.degree() == Some(0) && self.q.degree() == Some(0))
    }

    /// The rational value when `self` does not involve `T`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        self.is_constant().then(|| self.p.coeff(0))
    }

    /// Express over the root denominator `n`, a multiple of `self.n`.
    fn rescaled(&self, n: u32) -> (i64, UPoly, UPoly) {
        let k = (n / self.n) as usize;
        (self.v * k as i64, self.p.inflate(k), self.q.inflate(k))
    }

    fn common(&self, other: &Self) -> (u32, (i64, UPoly, UPoly), (i64, UPoly, UPoly)) {
        let n = num_integer::lcm(self.n, other.n);
        (n, self.rescaled(n), other.rescaled(n))
    }

    pub fn try_inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::ZeroInverse);
        }
        Ok(Self::normalize(self.n, -self.v, self.q.clone(), self.p.clone()))
    }

    /// Lowest `T`-exponent; `None` stands for `+∞` (the zero element).
    pub fn t_valuation(&self) -> Option<Rational> {
        (!self.is_zero()).then(|| Rational::new(self.v, self.n as i64))
    }

    /// Evaluate at `s = t0^{1/N}`, the positive real root; exact roots only.
    pub fn specialize_rational(&self, t0: &Rational) -> Result<Rational, CoeffError> {
        if !t0.is_positive() {
            return Err(CoeffError::NonPositiveT0);
        }
        let s = t0
            .nth_root(self.n)
            .ok_or_else(|| CoeffError::NoExactRoot { t0: t0.to_string(), n: self.n })?;
        let den = self.q.eval(&s, Rational::clone);
        if den.is_zero() {
            return Err(CoeffError::PoleAtSpecialization);
        }
        let num = self.p.eval(&s, Rational::clone);
        Ok(num.mul(&den.inv().unwrap()).mul(&s.powi(self.v as i32)))
    }

    /// Evaluate at the principal root `s = t0^{1/N}`.
    pub fn specialize_complex(&self, t0: ComplexNum) -> Result<ComplexNum, CoeffError> {
        let s = ComplexNum::new(t0.value().powf(1.0 / self.n as f64))?;
        let lift = |c: &Rational| ComplexNum::from_f64(c.to_f64());
        let den = self.q.eval(&s, lift);
        if den.value().norm() < 1e-300 {
            return Err(CoeffError::PoleAtSpecialization);
        }
        let num = self.p.eval(&s, lift);
        ComplexNum::new(num.value() / den.value() * s.value().powi(self.v as i32))
    }

    fn laurent_terms(&self, poly: &UPoly, shift: i64) -> Vec<(i64, Rational)> {
        poly.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 + shift, c.clone()))
            .collect()
    }

    fn fmt_sum(&self, f: &mut fmt::Formatter<'_>, terms: &[(i64, Rational)]) -> fmt::Result {
        for (i, (e, c)) in terms.iter().enumerate() {
            let exp = Rational::new(*e, self.n as i64);
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let t = fmt_t_power(&exp);
            match (mag.is_one(), t.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (true, false) => write!(f, "{t}")?,
                (false, false) => write!(f, "{mag}*{t}")?,
            }
        }
        Ok(())
    }
}

/// `T`, `T^k` or `T^(p/q)`; empty for `T^0`.
fn fmt_t_power(e: &Rational) -> String {
    if e.is_zero() {
        String::new()
    } else if e.is_one() {
        "T".to_string()
    } else if e.is_integer() {
        format!("T^{e}")
    } else {
        format!("T^({e})")
    }
}

impl Ring for NovScalar {
    fn zero() -> Self {
        Self::zero_value()
    }
    fn one() -> Self {
        Self::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (n, (va, pa, qa), (vb, pb, qb)) = self.common(other);
        let v = va.min(vb);
        let lhs = UPoly::monomial((va - v) as usize, Rational::one()).mul(&pa).mul(&qb);
        let rhs = UPoly::monomial((vb - v) as usize, Rational::one()).mul(&pb).mul(&qa);
        Self::normalize(n, v, lhs.add(&rhs), qa.mul(&qb))
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero_value();
        }
        let (n, (va, pa, qa), (vb, pb, qb)) = self.common(other);
        Self::normalize(n, va + vb, pa.mul(&pb), qa.mul(&qb))
    }
    fn neg(&self) -> Self {
        NovScalar { p: self.p.neg(), ..self.clone() }
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(Rational::from_int(n))
    }
    fn is_field() -> bool {
        true
    }
    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }
}

impl Coords for NovScalar {
    type K = NovScalar;
    fn embed(k: &Self) -> Self {
        k.clone()
    }
    fn coords(&self) -> Vec<(Vec<i32>, NovScalar)> {
        if self.is_zero() {
            vec![]
        } else {
            vec![(vec![], self.clone())]
        }
    }
}

impl From<Rational> for NovScalar {
    fn from(c: Rational) -> Self {
        NovScalar::constant(c)
    }
}

impl fmt::Display for NovScalar {
    /// Prints in the expression grammar accepted by the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let numer = self.laurent_terms(&self.p, self.v);
        if self.q.degree() == Some(0) {
            return self.fmt_sum(f, &numer);
        }
        write!(f, "(")?;
        self.fmt_sum(f, &numer)?;
        write!(f, ")/(")?;
        self.fmt_sum(f, &self.laurent_terms(&self.q, 0))?;
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct NovJson {
    #[serde(rename = "N")]
    n: u32,
    numer: Vec<(i64, Rational)>,
    denom: Vec<(i64, Rational)>,
}

impl Serialize for NovScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        NovJson {
            n: self.n,
            numer: self.laurent_terms(&self.p, self.v),
            denom: self.laurent_terms(&self.q, 0),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NovScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = NovJson::deserialize(d)?;
        NovScalar::from_laurent(j.n, &j.numer, &j.denom).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: u32, k: i64) -> NovScalar {
        NovScalar::s_pow(n, k)
    }

    fn c(x: i64) -> NovScalar {
        NovScalar::from_i64(x)
    }

    #[test]
    fn additive_inverse() {
        let a = s(1, 1);
        assert!(a.add(&a.neg()).is_zero());
        assert_eq!(a.add(&a), c(2).mul(&a));
        assert_eq!(a.add(&a).root_denominator(), 1);
    }

    /// Independent fraction arithmetic: (a/b) + (c/d) = (ad + bc) / bd, then
    /// compare by cross multiplication.
    #[test]
    fn fraction_sum_matches_cross_multiplication() {
        let one_minus_s = c(1).sub(&s(1, 1));
        let x = one_minus_s.inv().unwrap();
        let y = s(1, 1).mul(&x);
        let sum = x.add(&y);
        // (1 + s) / (1 - s)
        let expected = c(1).add(&s(1, 1)).mul(&x);
        assert_eq!(sum, expected);
        assert!(sum.mul(&one_minus_s).sub(&c(1).add(&s(1, 1))).is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let a = c(2).add(&c(3).mul(&s(1, 1)));
        assert_eq!(a.mul(&a.try_inv().unwrap()), NovScalar::one());
        assert_eq!(NovScalar::one().try_inv().unwrap(), NovScalar::one());
        assert_eq!(s(1, 1).try_inv().unwrap(), s(1, -1));
        assert!(matches!(NovScalar::zero().try_inv(), Err(CoeffError::ZeroInverse)));
    }

    #[test]
    fn valuations() {
        assert_eq!(NovScalar::zero().t_valuation(), None);
        assert_eq!(s(2, 3).t_valuation(), Some(Rational::new(3, 2)));
        let x = s(1, 1).mul(&c(1).add(&s(1, 1)).inv().unwrap());
        assert_eq!(x.t_valuation(), Some(Rational::one()));
    }

    #[test]
    fn specialization() {
        assert_eq!(s(2, 2).specialize_rational(&Rational::new(1, 4)).unwrap(), Rational::new(1, 4));
        assert_eq!(s(2, 1).specialize_rational(&Rational::new(1, 4)).unwrap(), Rational::new(1, 2));
        let x = s(1, 1).mul(&c(1).sub(&s(1, 1)).inv().unwrap());
        assert_eq!(x.specialize_rational(&Rational::new(1, 2)).unwrap(), Rational::one());
        let pole = c(1).sub(&s(1, 1)).inv().unwrap();
        assert!(matches!(
            pole.specialize_rational(&Rational::one()),
            Err(CoeffError::PoleAtSpecialization)
        ));
        assert!(s(2, 1).specialize_rational(&Rational::new(1, 2)).is_err());
    }

    #[test]
    fn canonical_root_denominator() {
        assert_eq!(s(4, 2), s(2, 1));
        assert_eq!(s(2, 2), s(1, 1));
        let t_half = NovScalar::t_pow(&Rational::new(1, 2));
        assert_eq!(t_half.mul(&t_half), s(1, 1));
    }

    #[test]
    fn json_round_trip() {
        let x = c(2).add(&s(3, 1)).mul(&c(1).sub(&s(3, 2)).inv().unwrap());
        let js = serde_json::to_string(&x).unwrap();
        let back: NovScalar = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn display() {
        let x = NovScalar::t_pow(&Rational::new(1, 2));
        assert_eq!(x.to_string(), "T^(1/2)");
        assert_eq!(c(-3).mul(&s(1, 2)).to_string(), "-3*T^2");
    }
}
