//! Buchberger's algorithm over a coefficient field, with torus saturation
//! for Laurent ideals.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::poly::{LaurentPoly, Mono};
use super::LaurentError;
use crate::ring::Ring;

pub type Exp = Vec<u32>;

/// Degree reverse lexicographic order with variable 0 largest.
pub fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quo(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_exp(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Polynomial with terms in ascending monomial order; the leading term is last.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<C> {
    terms: Vec<(Exp, C)>,
}

impl<C: Ring> MPoly<C> {
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exp, C)>) -> Self {
        let mut v: Vec<(Exp, C)> = Vec::new();
        for (mut e, c) in terms {
            e.resize(nvars, 0);
            v.push((e, c));
        }
        v.sort_by(|a, b| degrevlex(&a.0, &b.0));
        let mut out: Vec<(Exp, C)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = last.1.add(&c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        MPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Exp, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Exp, C)> {
        self.terms.last()
    }

    pub fn lead_exp(&self) -> &Exp {
        &self.terms.last().expect("nonzero polynomial").0
    }

    fn monic(self) -> Result<Self, LaurentError> {
        let inv = match self.lead() {
            None => return Ok(self),
            Some((_, c)) => c.inv().ok_or(LaurentError::CoefficientNotField)?,
        };
        Ok(MPoly { terms: self.terms.into_iter().map(|(e, c)| (e, c.mul(&inv))).collect() })
    }

    /// `self − c·x^shift·other`, merging the ascending term lists.
    fn sub_scaled(&self, c: &C, shift: &[u32], other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(e, d)| (add_exp(e, shift), c.mul(d))).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => degrevlex(&x.0, &y.0),
            };
            match ord {
                Ordering::Less => out.push(a.next().unwrap().clone()),
                Ordering::Greater => {
                    let (e, d) = b.next().unwrap();
                    out.push((e, d.neg()));
                }
                Ordering::Equal => {
                    let (e, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = x.sub(&y);
                    if !s.is_zero() {
                        out.push((e.clone(), s));
                    }
                }
            }
        }
        MPoly { terms: out }
    }

    fn add_term(&mut self, e: Exp, c: C) {
        match self.terms.binary_search_by(|t| degrevlex(&t.0, &e)) {
            Ok(i) => {
                let s = self.terms[i].1.add(&c);
                if s.is_zero() {
                    self.terms.remove(i);
                } else {
                    self.terms[i].1 = s;
                }
            }
            Err(i) => self.terms.insert(i, (e, c)),
        }
    }
}

/// Full reduction of `f` modulo monic `basis`; returns the remainder.
pub fn reduce<C: Ring>(f: &MPoly<C>, basis: &[MPoly<C>]) -> MPoly<C> {
    let mut p = f.clone();
    let mut rem = MPoly { terms: Vec::new() };
    while let Some((e, c)) = p.terms.last().cloned() {
        match basis.iter().find(|g| divides(g.lead_exp(), &e)) {
            Some(g) => p = p.sub_scaled(&c, &quo(&e, g.lead_exp()), g),
            None => {
                p.terms.pop();
                rem.add_term(e, c);
            }
        }
    }
    rem
}

fn s_poly<C: Ring>(f: &MPoly<C>, g: &MPoly<C>) -> MPoly<C> {
    let l = lcm(f.lead_exp(), g.lead_exp());
    let lhs = MPoly { terms: Vec::new() }.sub_scaled(&C::one().neg(), &quo(&l, f.lead_exp()), f);
    lhs.sub_scaled(&C::one(), &quo(&l, g.lead_exp()), g)
}

/// Reduced, monic Gröbner basis sorted by leading monomial.
pub fn buchberger<C: Ring>(gens: Vec<MPoly<C>>) -> Result<Vec<MPoly<C>>, LaurentError> {
    let mut basis: Vec<MPoly<C>> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.monic()?);
        }
    }
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let pair_key = |b: &[MPoly<C>], i: usize, j: usize| -> (u32, usize, usize) {
        let l = lcm(b[i].lead_exp(), b[j].lead_exp());
        (l.iter().sum(), i, j)
    };
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert(pair_key(&basis, i, j));
        }
    }
    while let Some(key) = pairs.pop_first() {
        let (_, i, j) = key;
        let (li, lj) = (basis[i].lead_exp().clone(), basis[j].lead_exp().clone());
        if li.iter().zip(&lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = lcm(&li, &lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].lead_exp(), &l)
                && !pairs.contains(&pair_key(&basis, i.min(k), i.max(k)))
                && !pairs.contains(&pair_key(&basis, j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let r = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        basis.push(r.monic()?);
        let n = basis.len() - 1;
        for i in 0..n {
            pairs.insert(pair_key(&basis, i, n));
        }
    }
    // minimalize, then inter-reduce
    basis.sort_by(|a, b| degrevlex(a.lead_exp(), b.lead_exp()));
    let mut minimal: Vec<MPoly<C>> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| divides(h.lead_exp(), g.lead_exp())) {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<MPoly<C>> =
            minimal.iter().enumerate().filter(|(m, _)| *m != k).map(|(_, g)| g.clone()).collect();
        let (lead_e, lead_c) = minimal[k].lead().cloned().unwrap();
        let mut tail = minimal[k].clone();
        tail.terms.pop();
        let mut r = reduce(&tail, &others);
        r.add_term(lead_e, lead_c);
        reduced.push(r.monic()?);
    }
    Ok(reduced)
}

/// Generators of a Laurent (or polynomial) ideal.
#[derive(Clone, Debug)]
pub struct Ideal<C> {
    pub nvars: usize,
    pub generators: Vec<LaurentPoly<C>>,
}

impl<C: Ring> Ideal<C> {
    pub fn new(nvars: usize, generators: Vec<LaurentPoly<C>>) -> Self {
        Ideal { nvars, generators: generators.into_iter().filter(|g| !g.is_zero()).collect() }
    }
}

/// Dimension of a quotient ring over the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientDim {
    Finite(usize),
    Infinite,
}

/// Gröbner data of a quotient ring together with its staircase.
///
/// For a saturated Laurent ideal the polynomial ring has an auxiliary
/// variable `t` at index 0 with `t·y₁⋯yₙ = 1`.
#[derive(Clone, Debug)]
pub struct QuotientBasis<C> {
    nvars: usize,
    saturated: bool,
    groebner: Vec<MPoly<C>>,
    staircase: Option<Vec<Exp>>,
}

impl<C: Ring> QuotientBasis<C> {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn groebner(&self) -> &[MPoly<C>] {
        &self.groebner
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.staircase.is_some()
    }

    pub fn dimension(&self) -> QuotientDim {
        match &self.staircase {
            Some(s) => QuotientDim::Finite(s.len()),
            None => QuotientDim::Infinite,
        }
    }

    pub fn require_zero_dimensional(&self) -> Result<usize, LaurentError> {
        self.staircase.as_ref().map(Vec::len).ok_or(LaurentError::NotZeroDimensional)
    }

    fn poly_arity(&self) -> usize {
        self.nvars + usize::from(self.saturated)
    }

    /// Standard monomials as Laurent exponent vectors of length `nvars`.
    pub fn standard_monomials(&self) -> Option<Vec<Vec<i32>>> {
        self.staircase.as_ref().map(|s| s.iter().map(|e| self.to_laurent_exp(e)).collect())
    }

    fn to_laurent_exp(&self, e: &[u32]) -> Vec<i32> {
        if self.saturated {
            let k = e[0] as i32;
            e[1..].iter().map(|&a| a as i32 - k).collect()
        } else {
            e.iter().map(|&a| a as i32).collect()
        }
    }

    fn to_poly_exp(&self, e: &[i32]) -> Result<Exp, LaurentError> {
        if e.len() > self.nvars {
            return Err(LaurentError::RingMismatch { expected: self.nvars, found: e.len() });
        }
        let mut full = e.to_vec();
        full.resize(self.nvars, 0);
        if self.saturated {
            let k = full.iter().map(|&a| (-a).max(0)).max().unwrap_or(0);
            let mut out = vec![k as u32];
            out.extend(full.iter().map(|&a| (a + k) as u32));
            Ok(out)
        } else if full.iter().any(|&a| a < 0) {
            Err(LaurentError::NegativeExponent)
        } else {
            Ok(full.iter().map(|&a| a as u32).collect())
        }
    }

    fn to_mpoly(&self, f: &LaurentPoly<C>) -> Result<MPoly<C>, LaurentError> {
        let mut terms = Vec::with_capacity(f.len());
        for (e, c) in f.terms() {
            terms.push((self.to_poly_exp(e)?, c.clone()));
        }
        Ok(MPoly::from_terms(self.poly_arity(), terms))
    }

    fn to_laurent(&self, p: &MPoly<C>) -> LaurentPoly<C> {
        LaurentPoly::from_terms(p.terms.iter().map(|(e, c)| (self.to_laurent_exp(e), c.clone())))
    }

    /// Remainder supported on standard monomials.
    pub fn normal_form(&self, f: &LaurentPoly<C>) -> Result<LaurentPoly<C>, LaurentError> {
        let p = self.to_mpoly(f)?;
        Ok(self.to_laurent(&reduce(&p, &self.groebner)))
    }

    pub fn contains(&self, f: &LaurentPoly<C>) -> Result<bool, LaurentError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Coordinates of `NF(f)` in the staircase basis.
    pub fn coordinates(&self, f: &LaurentPoly<C>) -> Result<Vec<C>, LaurentError> {
        let stairs = self.standard_monomials().ok_or(LaurentError::NotZeroDimensional)?;
        let nf = self.normal_form(f)?;
        Ok(stairs.iter().map(|e| nf.coeff(e)).collect())
    }

    /// Matrix of multiplication by `f` on the quotient: column `j` holds the
    /// coordinates of `f·b_j`.
    pub fn multiplication_matrix(&self, f: &LaurentPoly<C>) -> Result<Vec<Vec<C>>, LaurentError> {
        let stairs = self.standard_monomials().ok_or(LaurentError::NotZeroDimensional)?;
        let cols: Vec<Vec<C>> = stairs
            .iter()
            .map(|b| self.coordinates(&f.mul_mono(b)))
            .collect::<Result<_, _>>()?;
        let n = stairs.len();
        Ok((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let g = &self.groebner;
        (0..g.len()).all(|j| (0..j).all(|i| reduce(&s_poly(&g[i], &g[j]), g).is_zero()))
    }

    /// Basis elements free of the saturation variable, as Laurent polynomials.
    pub fn laurent_generators(&self) -> Vec<LaurentPoly<C>> {
        self.groebner
            .iter()
            .filter(|g| !self.saturated || g.terms.iter().all(|(e, _)| e[0] == 0))
            .map(|g| self.to_laurent(g))
            .collect()
    }

    fn build(nvars: usize, saturated: bool, gens: Vec<MPoly<C>>) -> Result<Self, LaurentError> {
        let groebner = buchberger(gens)?;
        let mut q = QuotientBasis { nvars, saturated, groebner, staircase: None };
        q.staircase = q.enumerate_staircase();
        Ok(q)
    }

    fn enumerate_staircase(&self) -> Option<Vec<Exp>> {
        let m = self.poly_arity();
        let leads: Vec<&Exp> = self.groebner.iter().map(MPoly::lead_exp).collect();
        if leads.iter().any(|e| e.iter().all(|&a| a == 0)) {
            return Some(vec![]);
        }
        let bounds: Vec<u32> = (0..m)
            .map(|i| {
                leads
                    .iter()
                    .filter(|e| e.iter().enumerate().all(|(j, &a)| j == i || a == 0))
                    .map(|e| e[i])
                    .min()
            })
            .collect::<Option<_>>()?;
        let mut out = Vec::new();
        let mut cur = vec![0u32; m];
        'outer: loop {
            if !leads.iter().any(|l| divides(l, &cur)) {
                out.push(cur.clone());
            }
            for i in 0..m {
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    continue 'outer;
                }
                cur[i] = 0;
            }
            break;
        }
        out.sort_by(|a, b| degrevlex(a, b));
        Some(out)
    }
}

/// Gröbner data of the Laurent ideal: generators are cleared of negative
/// exponents and the ideal is saturated at `y₁⋯yₙ`.
pub fn groebner_basis<C: Ring>(ideal: &Ideal<C>) -> Result<QuotientBasis<C>, LaurentError> {
    let n = ideal.nvars;
    let shape = QuotientBasis::<C> { nvars: n, saturated: false, groebner: vec![], staircase: None };
    let mut gens = Vec::with_capacity(ideal.generators.len() + 1);
    for g in &ideal.generators {
        if g.arity() > n {
            return Err(LaurentError::RingMismatch { expected: n, found: g.arity() });
        }
        let shift: Mono = (0..n)
            .map(|i| -g.terms().map(|(e, _)| *e.get(i).unwrap_or(&0)).min().unwrap_or(0))
            .collect();
        let cleared = shape.to_mpoly(&g.mul_mono(&shift))?;
        let terms = cleared.terms.into_iter().map(|(e, c)| ([vec![0], e].concat(), c));
        gens.push(MPoly::from_terms(n + 1, terms));
    }
    let sat = vec![1u32; n + 1];
    gens.push(MPoly::from_terms(n + 1, [(sat, C::one()), (vec![0; n + 1], C::one().neg())]));
    QuotientBasis::build(n, true, gens)
}

/// Gröbner data of a polynomial ideal, without saturation.
pub fn groebner_basis_polynomial<C: Ring>(ideal: &Ideal<C>) -> Result<QuotientBasis<C>, LaurentError> {
    let shape = QuotientBasis::<C> { nvars: ideal.nvars, saturated: false, groebner: vec![], staircase: None };
    let gens = ideal.generators.iter().map(|g| shape.to_mpoly(g)).collect::<Result<_, _>>()?;
    QuotientBasis::build(ideal.nvars, false, gens)
}

pub fn normal_form<C: Ring>(f: &LaurentPoly<C>, q: &QuotientBasis<C>) -> Result<LaurentPoly<C>, LaurentError> {
    q.normal_form(f)
}

pub fn quotient_dimension<C: Ring>(q: &QuotientBasis<C>) -> QuotientDim {
    q.dimension()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{NovScalar, Rational};
    use crate::laurent::PolyRing;

    fn jac(ring: &PolyRing, w: &str) -> QuotientBasis<NovScalar> {
        let w: LaurentPoly<NovScalar> = ring.parse(w).unwrap();
        let gens = (0..ring.nvars()).map(|i| w.log_derivative(i)).collect();
        groebner_basis(&Ideal::new(ring.nvars(), gens)).unwrap()
    }

    #[test]
    fn linear_ideal() {
        let r = PolyRing::numbered("y", 1);
        let q = groebner_basis(&Ideal::new(1, vec![r.parse::<Rational>("y1 - 1").unwrap()])).unwrap();
        assert_eq!(q.dimension(), QuotientDim::Finite(1));
        assert_eq!(q.standard_monomials().unwrap(), vec![vec![0]]);
        assert_eq!(q.laurent_generators(), vec![r.parse::<Rational>("y1 - 1").unwrap()]);
    }

    #[test]
    fn zero_ideal_is_infinite() {
        let q = groebner_basis::<Rational>(&Ideal::new(1, vec![])).unwrap();
        assert_eq!(q.dimension(), QuotientDim::Infinite);
        assert!(matches!(q.require_zero_dimensional(), Err(LaurentError::NotZeroDimensional)));
    }

    #[test]
    fn cp1_staircase() {
        let r = PolyRing::numbered("y", 1);
        let q = jac(&r, "T^(1/2)*(y1 + y1^-1)");
        assert_eq!(q.standard_monomials().unwrap(), vec![vec![0], vec![1]]);
        let y2: LaurentPoly<NovScalar> = r.parse("y1^2").unwrap();
        assert_eq!(q.normal_form(&y2).unwrap(), LaurentPoly::one());
        assert_eq!(q.normal_form(&LaurentPoly::one()).unwrap(), LaurentPoly::one());
        let yinv: LaurentPoly<NovScalar> = r.parse("y1^-1").unwrap();
        assert_eq!(q.normal_form(&yinv).unwrap(), LaurentPoly::var(0));
        assert!(q.satisfies_buchberger_criterion());
    }

    #[test]
    fn toric_dimensions() {
        let cp2 = jac(&PolyRing::numbered("y", 2), "T^(1/3)*(y1 + y2 + y1^-1*y2^-1)");
        assert_eq!(cp2.dimension(), QuotientDim::Finite(3));
        let p1p1 = jac(&PolyRing::numbered("y", 2), "T^(1/2)*(y1 + y1^-1 + y2 + y2^-1)");
        assert_eq!(p1p1.dimension(), QuotientDim::Finite(4));
    }

    #[test]
    fn ring_mismatch() {
        let r = PolyRing::numbered("y", 1);
        let q = jac(&r, "y1 + y1^-1");
        let f: LaurentPoly<NovScalar> = PolyRing::numbered("y", 2).parse("y2").unwrap();
        assert!(matches!(q.normal_form(&f), Err(LaurentError::RingMismatch { .. })));
    }
}
