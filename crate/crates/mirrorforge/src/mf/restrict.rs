//! Restriction of scalars from `R/𝔪^d` to the coefficient field.
//!
//! Hochschild cochains of a factorization category are linear over the
//! ground field, not over `R`. Replacing every hom space `H` by the finite
//! `K`-space `H ⊗ R/𝔪^d` makes them computable.

use std::collections::HashMap;
use std::sync::Arc;

use crate::ainfty::{lin_add_term, AInfCategory, Basis, Gen, Lin, Spaces, Word};
use crate::bimod::{diagonal, AInfBimodule, BiWord};
use crate::laurent::{total_degree, LaurentPoly, Mono};
use crate::ring::Ring;
use crate::signs;

/// A `K`-linear category together with the monomial bookkeeping.
#[derive(Debug, Clone)]
pub struct Restricted<C> {
    pub cat: Arc<AInfCategory<C>>,
    pub diag: Arc<AInfBimodule<C>>,
    pub order: u32,
    exp: Expansion,
}

#[derive(Debug, Clone)]
struct Expansion {
    monomials: Vec<Mono>,
    index: HashMap<Mono, usize>,
}

fn monomials(n: usize, d: u32) -> Vec<Mono> {
    let mut out = vec![Mono::new()];
    for i in 0..n {
        out = out
            .into_iter()
            .flat_map(|e| {
                let used = total_degree(&e);
                (0..d as i32 - used).map(move |k| {
                    let mut f = e.clone();
                    f.resize(i + 1, 0);
                    f[i] = k;
                    while f.last() == Some(&0) {
                        f.pop();
                    }
                    f
                })
            })
            .collect();
    }
    out.sort_by(|a, b| (total_degree(a), a).cmp(&(total_degree(b), b)));
    out
}

fn mono_add(a: &[i32], b: &[i32]) -> Mono {
    let mut out: Mono = (0..a.len().max(b.len())).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

impl Expansion {
    fn basis(&self, b: Basis, t: usize) -> Basis {
        Basis::new(b.src, b.tgt, b.idx * self.monomials.len() as u32 + t as u32)
    }

    fn split(&self, b: Basis) -> (Basis, &Mono) {
        let nm = self.monomials.len() as u32;
        (Basis::new(b.src, b.tgt, b.idx / nm), &self.monomials[(b.idx % nm) as usize])
    }

    /// `s·v` expanded over `K`, dropping terms of degree `≥ d`.
    fn push<C: Ring>(&self, out: &mut Lin<C>, shift: &[i32], v: &Lin<LaurentPoly<C>>) {
        for (b, p) in v {
            for (e, k) in p.terms() {
                let g = mono_add(shift, e);
                if let Some(&t) = self.index.get(&g) {
                    lin_add_term(out, self.basis(*b, t), k);
                }
            }
        }
    }
}

impl<C: Ring> Restricted<C> {
    pub fn monomials(&self) -> &[Mono] {
        &self.exp.monomials
    }

    /// The `R`-generator and monomial behind a restricted generator.
    pub fn split(&self, b: Basis) -> (Basis, &Mono) {
        self.exp.split(b)
    }

    pub fn lift(&self, v: &Lin<LaurentPoly<C>>) -> Lin<C> {
        let mut out = Lin::new();
        self.exp.push(&mut out, &[], v);
        out
    }

    /// Generators of the quotient `A/𝔪^e A` inside the category's basis.
    fn low(&self, e: u32) -> usize {
        self.exp.monomials.iter().take_while(|m| total_degree(m) < e as i32).count()
    }

    /// The category basis element of a quotient generator.
    pub fn from_quotient(&self, e: u32, m: Basis) -> Basis {
        let ne = self.low(e) as u32;
        self.exp.basis(Basis::new(m.src, m.tgt, m.idx / ne), (m.idx % ne) as usize)
    }

    /// The quotient generator of a category basis element, if it survives.
    pub fn to_quotient(&self, e: u32, b: Basis) -> Option<Basis> {
        let (ne, nm) = (self.low(e) as u32, self.exp.monomials.len() as u32);
        (b.idx % nm < ne).then(|| Basis::new(b.src, b.tgt, b.idx / nm * ne + b.idx % nm))
    }

    pub fn project(&self, e: u32, v: &Lin<C>) -> Lin<C> {
        v.iter().filter_map(|(b, c)| self.to_quotient(e, *b).map(|q| (q, c.clone()))).collect()
    }

    /// The diagonal bimodule reduced modulo `𝔪^e`, `e ≤ d`.
    pub fn quotient(&self, e: u32) -> AInfBimodule<C> {
        let cat = &self.cat;
        let n = cat.nobjects();
        let mut spaces = Spaces::new(n, n);
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                let gens = cat
                    .homs
                    .basis(a, b)
                    .filter(|x| self.to_quotient(e, *x).is_some())
                    .map(|x| Gen::new(cat.homs.gen(x).name.clone(), signs::shift(cat.homs.deg(x))))
                    .collect();
                spaces.set(a as usize, b as usize, gens);
            }
        }
        let mut out = AInfBimodule::new(cat.clone(), cat.clone(), spaces);
        for (w, v) in cat.structure() {
            let v = self.project(e, v);
            for p in 0..w.len() {
                if let Some(m) = self.to_quotient(e, w.letters[p]) {
                    out.set_mu(BiWord::new(w.letters[..p].to_vec(), m, w.letters[p + 1..].to_vec()), v.clone());
                }
            }
        }
        out
    }

    pub fn lower(&self, v: &Lin<C>) -> Lin<LaurentPoly<C>> {
        let mut out = Lin::new();
        for (b, k) in v {
            let (g, e) = self.exp.split(*b);
            lin_add_term(&mut out, g, &LaurentPoly::monomial(e.clone(), k.clone()));
        }
        out
    }
}

/// `cat` over `R/𝔪^d` viewed as a category over the coefficient field,
/// for `R` a polynomial ring in `n` variables.
pub fn restrict_scalars<C: Ring>(cat: &AInfCategory<LaurentPoly<C>>, n: usize, d: u32) -> Restricted<C> {
    let monos = monomials(n, d);
    let index: HashMap<Mono, usize> = monos.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let names = |e: &Mono| -> String {
        e.iter()
            .enumerate()
            .filter(|(_, a)| **a != 0)
            .map(|(i, a)| if *a == 1 { format!("x{}", i + 1) } else { format!("x{}^{a}", i + 1) })
            .collect::<Vec<_>>()
            .join("*")
    };
    let nobj = cat.nobjects();
    let mut homs = Spaces::new(nobj, nobj);
    for i in 0..nobj as u32 {
        for j in 0..nobj as u32 {
            let gens = cat
                .homs
                .basis(i, j)
                .flat_map(|b| {
                    let g = cat.homs.gen(b).clone();
                    monos.iter().map(move |e| {
                        let name = if e.is_empty() { g.name.clone() } else { format!("{}*{}", names(e), g.name) };
                        Gen::new(name, g.deg)
                    })
                })
                .collect();
            homs.set(i as usize, j as usize, gens);
        }
    }
    let exp = Expansion { monomials: monos, index };
    let mut k = AInfCategory::new(cat.objects.clone(), homs, cat.kmax);
    k.truncated = cat.truncated;
    for (w, v) in cat.structure() {
        // every assignment of monomials to the letters of w
        let mut tuples: Vec<(Vec<usize>, Mono)> = vec![(vec![], Mono::new())];
        for _ in 0..w.len() {
            tuples = tuples
                .into_iter()
                .flat_map(|(ts, e)| {
                    let monos = &exp.monomials;
                    (0..monos.len()).filter_map(move |t| {
                        let g = mono_add(&e, &monos[t]);
                        (total_degree(&g) < d as i32).then(|| {
                            let mut ts = ts.clone();
                            ts.push(t);
                            (ts, g)
                        })
                    })
                })
                .collect();
        }
        for (ts, e) in tuples {
            let letters: Vec<Basis> = w.letters.iter().zip(&ts).map(|(b, t)| exp.basis(*b, *t)).collect();
            let mut val = Lin::new();
            exp.push(&mut val, &e, v);
            k.set_m(Word::with_start(w.obj, letters), val);
        }
    }
    for o in 0..nobj as u32 {
        if let Ok(e) = cat.unit(o) {
            let mut lifted = Lin::new();
            exp.push(&mut lifted, &[], e);
            k.set_unit(o, lifted);
        }
    }
    let k = Arc::new(k);
    Restricted { diag: Arc::new(diagonal(k.clone())), cat: k, order: d, exp }
}
