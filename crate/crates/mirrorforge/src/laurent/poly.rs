//! Sparse multivariate Laurent polynomials.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::{ComplexNum, Specialize};
use crate::ring::{Coords, Ring};

/// Exponent vector with trailing zeros trimmed, so arity is implicit.
pub type Mono = Vec<i32>;

fn trim(mut e: Mono) -> Mono {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn mono_mul(a: &[i32], b: &[i32]) -> Mono {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect())
}

pub fn total_degree(e: &[i32]) -> i32 {
    e.iter().sum()
}

/// Laurent polynomial with coefficients in `C`.
///
/// `order = Some(d)` marks an adic truncation: terms of total degree ≥ `d`
/// are dropped, and binary operations keep the smaller order.
#[derive(Clone, Debug)]
pub struct LaurentPoly<C> {
    terms: BTreeMap<Mono, C>,
    order: Option<u32>,
}

impl<C: Ring> LaurentPoly<C> {
    pub fn constant(c: C) -> Self {
        Self::monomial(vec![], c)
    }

    pub fn monomial(exp: Mono, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(exp), c);
        }
        LaurentPoly { terms, order: None }
    }

    /// The variable with index `i`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(e, C::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, C)>>(terms: I) -> Self {
        let mut p = LaurentPoly { terms: BTreeMap::new(), order: None };
        for (e, c) in terms {
            p.add_term(trim(e), &c);
        }
        p
    }

    fn add_term(&mut self, e: Mono, c: &C) {
        if c.is_zero() || self.order.is_some_and(|d| total_degree(&e) >= d as i32) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }

    /// Adic truncation at total degree `d`.
    pub fn truncated(&self, d: u32) -> Self {
        let d = self.order.map_or(d, |o| o.min(d));
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_degree(e) < d as i32)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            order: Some(d),
        }
    }

    /// Forget the truncation marker.
    pub fn exact(&self) -> Self {
        LaurentPoly { terms: self.terms.clone(), order: None }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[i32]) -> C {
        self.terms.get(&trim(exp.to_vec())).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&[])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Vec::is_empty)
    }

    /// Number of variables actually occurring.
    pub fn arity(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Lowest total degree of a term (`None` for zero).
    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| total_degree(e)).min()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&a| a < 0))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (e.clone(), a.mul(c)))).with_order(self.order)
    }

    pub fn mul_mono(&self, exp: &[i32]) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (mono_mul(e, exp), a.clone()))).with_order(self.order)
    }

    fn with_order(mut self, order: Option<u32>) -> Self {
        if let Some(d) = order {
            self.terms.retain(|e, _| total_degree(e) < d as i32);
        }
        self.order = order;
        self
    }

    fn min_order(&self, other: &Self) -> Option<u32> {
        match (self.order, other.order) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// `y_i ∂f/∂y_i`: each term `c·y^a` becomes `c·a_i·y^a`.
    pub fn log_derivative(&self, i: usize) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let a = *e.get(i).unwrap_or(&0);
            (e.clone(), c.mul(&C::from_i64(a as i64)))
        }))
        .with_order(self.order)
    }

    /// Ordinary partial derivative `∂f/∂x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(e, c)| {
            let a = *e.get(i).unwrap_or(&0);
            (a != 0).then(|| {
                let mut e = e.clone();
                e[i] -= 1;
                (e, c.mul(&C::from_i64(a as i64)))
            })
        }))
        .with_order(self.order.map(|d| d.saturating_sub(1)))
    }

    /// Integer power; negative powers need a unit.
    pub fn powi(&self, k: i32) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        Some(base.pow(k.unsigned_abs()))
    }

    /// Substitute `x_i ↦ images[i]`.
    pub fn substitute(&self, images: &[LaurentPoly<C>]) -> Option<Self> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, &a) in e.iter().enumerate() {
                if a != 0 {
                    t = t.mul(&images.get(i)?.powi(a)?);
                }
            }
            out = out.add(&t);
        }
        Some(out)
    }

    /// Apply a coefficient map, e.g. a change of coefficient ring.
    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (e.clone(), f(c)))).with_order(self.order)
    }

    /// The common coefficient when every term carries the same one.
    pub fn common_coeff(&self) -> Option<C> {
        let mut it = self.terms.values();
        let first = it.next()?;
        it.all(|c| c == first).then(|| first.clone())
    }
}

impl<C: Ring + Specialize> LaurentPoly<C> {
    /// Numeric value at a point after `T ↦ t0`.
    pub fn eval_complex(&self, point: &[ComplexNum], t0: f64) -> Result<ComplexNum, crate::coeff::CoeffError> {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = c.specialize_complex(t0)?.value();
            for (i, &a) in e.iter().enumerate() {
                t *= point[i].value().powi(a);
            }
            acc += t;
        }
        ComplexNum::new(acc)
    }
}

impl<C: Ring> PartialEq for LaurentPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        match self.min_order(other) {
            None => self.terms == other.terms,
            Some(d) => self.truncated(d).terms == other.truncated(d).terms,
        }
    }
}

impl<C: Ring> Ring for LaurentPoly<C> {
    fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new(), order: None }
    }
    fn one() -> Self {
        Self::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone().with_order(self.min_order(other));
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly { terms: BTreeMap::new(), order: self.min_order(other) };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(mono_mul(ea, eb), &ca.mul(cb));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
            order: self.order,
        }
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }
    fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if self.order.is_some() && !e.is_empty() {
            return None;
        }
        let inv_e: Mono = e.iter().map(|a| -a).collect();
        Some(Self::monomial(inv_e, c.inv()?).with_order(self.order))
    }
}

impl<C: Ring> Coords for LaurentPoly<C> {
    type K = C;
    fn embed(k: &C) -> Self {
        Self::constant(k.clone())
    }
    fn coords(&self) -> Vec<(Vec<i32>, C)> {
        self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect()
    }
}

impl<C: Ring> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.arity()).map(|i| format!("x{i}")).collect();
        f.write_str(&format_poly(self, &names))
    }
}

fn format_mono(e: &[i32], names: &[String]) -> String {
    e.iter()
        .zip(names)
        .filter(|(a, _)| **a != 0)
        .map(|(a, n)| if *a == 1 { n.clone() } else { format!("{n}^{a}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// True when a printed coefficient needs parentheses as a factor.
fn is_compound(s: &str) -> bool {
    s.get(1..).is_some_and(|rest| rest.contains(" + ") || rest.contains(" - "))
        || s.starts_with('(') && s.contains(")/(")
}

fn format_sum<C: Ring>(terms: &[(&Mono, &C)], names: &[String], unit_coeffs: bool) -> String {
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let m = format_mono(e, names);
        let cs = if unit_coeffs { "1".to_string() } else { c.to_string() };
        let (neg, mag) = match cs.strip_prefix('-') {
            Some(rest) if !is_compound(&cs) => (true, rest.to_string()),
            _ => (false, cs.clone()),
        };
        let body = match (m.is_empty(), mag.as_str()) {
            (true, _) => mag.clone(),
            (false, "1") => m,
            (false, _) if is_compound(&mag) => format!("({mag})*{m}"),
            (false, _) => format!("{mag}*{m}"),
        };
        match (i, neg) {
            (0, true) => out.push_str(&format!("-{body}")),
            (0, false) => out.push_str(&body),
            (_, true) => out.push_str(&format!(" - {body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
        }
    }
    out
}

/// Print in the parser grammar, factoring out a shared coefficient.
pub fn format_poly<C: Ring>(p: &LaurentPoly<C>, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&Mono, &C)> = p.terms.iter().collect();
    // descending total degree reads naturally: y1 + y1^-1
    terms.sort_by(|a, b| total_degree(b.0).cmp(&total_degree(a.0)).then_with(|| b.0.cmp(a.0)));
    if terms.len() > 1 {
        if let Some(c) = p.common_coeff().filter(|c| !c.is_one()) {
            let cs = c.to_string();
            let inner = format_sum(&terms, names, true);
            if cs == "-1" {
                return format!("-({inner})");
            }
            let cs = if is_compound(&cs) { format!("({cs})") } else { cs };
            return format!("{cs}*({inner})");
        }
    }
    format_sum(&terms, names, false)
}

#[derive(Serialize, Deserialize)]
pub struct TermJson<C> {
    pub exp: Vec<i32>,
    pub coeff: C,
}

#[derive(Serialize, Deserialize)]
pub struct PolyJson<C> {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson<C>>,
}

impl<C: Ring + Serialize> LaurentPoly<C> {
    pub fn to_json(&self, vars: &[String]) -> PolyJson<C> {
        PolyJson {
            vars: vars.to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut exp = e.clone();
                    exp.resize(vars.len().max(e.len()), 0);
                    TermJson { exp, coeff: c.clone() }
                })
                .collect(),
        }
    }
}

impl<C: Ring> From<PolyJson<C>> for LaurentPoly<C> {
    fn from(j: PolyJson<C>) -> Self {
        LaurentPoly::from_terms(j.terms.into_iter().map(|t| (t.exp, t.coeff)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Rational;

    type P = LaurentPoly<Rational>;

    fn y(i: usize) -> P {
        P::var(i)
    }

    #[test]
    fn log_derivative_examples() {
        assert_eq!(y(0).log_derivative(0), y(0));
        let f = y(0).add(&y(0).inv().unwrap());
        assert_eq!(f.log_derivative(0), y(0).sub(&y(0).inv().unwrap()));
        assert!(P::from_i64(7).log_derivative(0).is_zero());
    }

    #[test]
    fn adic_truncation() {
        let x = y(0).truncated(3);
        assert!(x.pow(3).is_zero());
        assert!(!x.pow(2).is_zero());
        assert_eq!(x.pow(2), y(0).pow(2));
    }

    #[test]
    fn substitution() {
        let f = y(0).mul(&y(1));
        let g = f.substitute(&[y(0).add(&P::one()), y(0).inv().unwrap()]).unwrap();
        assert_eq!(g, P::one().add(&y(0).inv().unwrap()));
    }

    #[test]
    fn json_round_trip() {
        let f = y(0).mul(&y(1).inv().unwrap()).scale(&Rational::new(2, 3));
        let names = vec!["y1".to_string(), "y2".to_string()];
        let js = serde_json::to_string(&f.to_json(&names)).unwrap();
        let back: PolyJson<Rational> = serde_json::from_str(&js).unwrap();
        assert_eq!(P::from(back), f);
    }
}
