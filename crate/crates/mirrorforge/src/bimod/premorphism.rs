//! Premorphisms of bimodules, their differential and composition.

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;

use super::{bibar_add, AInfBimodule, BiBar, BiWord, BimodError};
use crate::ainfty::{lin_axpy, lin_single, Lin};
use crate::linalg::{self, LinalgError, SparseVec};
use crate::report::CheckReport;
use crate::ring::Ring;
use crate::signs;

/// A premorphism `F: M → M'` of degree `degree` (as a map on
/// `C[1]^{⊗r} ⊗ M ⊗ D[1]^{⊗s}`), zero outside its stored components.
#[derive(Debug, Clone)]
pub struct Premorphism<R> {
    pub source: Arc<AInfBimodule<R>>,
    pub target: Arc<AInfBimodule<R>>,
    pub degree: u8,
    comps: HashMap<BiWord, Lin<R>>,
}

impl<R: Ring> Premorphism<R> {
    pub fn new(source: Arc<AInfBimodule<R>>, target: Arc<AInfBimodule<R>>, degree: u8) -> Self {
        Premorphism { source, target, degree: degree & 1, comps: HashMap::new() }
    }

    pub fn identity(m: Arc<AInfBimodule<R>>) -> Self {
        let mut f = Self::new(m.clone(), m.clone(), 0);
        for b in m.spaces.all() {
            f.set(BiWord::module(b), lin_single(b, R::one()));
        }
        f
    }

    pub fn set(&mut self, w: BiWord, v: Lin<R>) {
        let v: Lin<R> = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if v.is_empty() {
            self.comps.remove(&w);
        } else {
            self.comps.insert(w, v);
        }
    }

    pub fn get(&self, w: &BiWord) -> Option<&Lin<R>> {
        self.comps.get(w)
    }

    pub fn apply(&self, w: &BiWord) -> Lin<R> {
        self.get(w).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> Vec<(&BiWord, &Lin<R>)> {
        let mut v: Vec<_> = self.comps.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    fn same_ends(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.source, &other.source) && Arc::ptr_eq(&self.target, &other.target)
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &R, other: &Self) -> Result<Self, BimodError> {
        if !self.same_ends(other) || (self.degree != other.degree && !other.is_zero() && !self.is_zero()) {
            return Err(BimodError::Mismatch("sum of premorphisms".into()));
        }
        let mut out = self.clone();
        if self.is_zero() {
            out.degree = other.degree;
        }
        for (w, v) in &other.comps {
            let mut acc = out.apply(w);
            lin_axpy(&mut acc, c, v);
            out.set(w.clone(), acc);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::new(self.source.clone(), self.target.clone(), self.degree);
        for (w, v) in &self.comps {
            out.set(w.clone(), v.iter().map(|(b, x)| (*b, x.mul(c))).collect());
        }
        out
    }

    /// `F̂` on one input: `F` applied to every middle block.
    pub fn hat(&self, w: &BiWord) -> BiBar<R> {
        let mut out = BiBar::new();
        let homs = &self.source.left.homs;
        let mut before = 0u8;
        for i in 0..=w.r() {
            for j in 0..=w.s() {
                let inner = BiWord::new(w.left[i..].to_vec(), w.m, w.right[..j].to_vec());
                let Some(v) = self.get(&inner) else { continue };
                let negate = signs::koszul(self.degree, before);
                for (b, c) in v {
                    bibar_add(&mut out, BiWord::new(w.left[..i].to_vec(), *b, w.right[j..].to_vec()), c.signed(negate));
                }
            }
            if i < w.r() {
                before ^= homs.sdeg(w.left[i]);
            }
        }
        out
    }

    pub fn apply_bar(&self, bar: &BiBar<R>) -> Lin<R> {
        let mut out = Lin::new();
        for (w, c) in bar {
            if let Some(v) = self.get(w) {
                lin_axpy(&mut out, c, v);
            }
        }
        out
    }

    /// `(δF)(w) = μ'(F̂ w) − (-1)^{|F|} F(μ̂ w)`.
    pub fn diff_at(&self, w: &BiWord) -> Lin<R> {
        let mut out = self.target.apply_mu(&self.hat(w));
        let inner = self.apply_bar(&self.source.bar_diff(w));
        lin_axpy(&mut out, &R::one().signed(!signs::is_odd(self.degree)), &inner);
        out
    }

    /// Largest first/second arity among stored components.
    pub fn arity(&self) -> (usize, usize) {
        self.comps.keys().fold((0, 0), |(r, s), w| (r.max(w.r()), s.max(w.s())))
    }
}

/// A premorphism with small random integer components on every input with
/// `r ≤ rmax`, `s ≤ smax`; each output coefficient is nonzero with
/// probability `density`.
pub fn random_premorphism<R: Ring, G: Rng>(
    source: Arc<AInfBimodule<R>>,
    target: Arc<AInfBimodule<R>>,
    degree: u8,
    rmax: usize,
    smax: usize,
    density: f64,
    rng: &mut G,
) -> Premorphism<R> {
    let mut f = Premorphism::new(source.clone(), target.clone(), degree);
    for r in 0..=rmax {
        for s in 0..=smax {
            for w in source.biwords(r, s) {
                let mut v = Lin::new();
                for b in target.spaces.basis(w.start(), w.end()) {
                    let word_deg = source.left.homs.sdeg_sum(&w.left) ^ source.mdeg(w.m) ^ source.right.homs.sdeg_sum(&w.right);
                    if target.mdeg(b) != word_deg ^ (degree & 1) || !rng.gen_bool(density) {
                        continue;
                    }
                    let c = rng.gen_range(-3..=3);
                    if c != 0 {
                        v.insert(b, R::from_i64(c));
                    }
                }
                f.set(w, v);
            }
        }
    }
    f
}

/// `δF` materialized on all inputs with `r ≤ rmax`, `s ≤ smax`.
pub fn premorphism_diff<R: Ring>(f: &Premorphism<R>, rmax: usize, smax: usize) -> Premorphism<R> {
    let mut out = Premorphism::new(f.source.clone(), f.target.clone(), f.degree ^ 1);
    for r in 0..=rmax {
        for s in 0..=smax {
            for w in f.source.biwords(r, s) {
                let v = f.diff_at(&w);
                out.set(w, v);
            }
        }
    }
    out
}

/// Residual of `δF = 0` on inputs with `r ≤ rmax`, `s ≤ smax`, skipping
/// tensor generators whose relation is cut off by the length bound.
pub fn check_premorphism_closed<R: Ring>(f: &Premorphism<R>, rmax: usize, smax: usize) -> CheckReport {
    let mut rep = CheckReport::new(format!("closed premorphism up to r = {rmax}, s = {smax}"));
    for r in 0..=rmax {
        for s in 0..=smax {
            for w in f.source.biwords(r, s) {
                if f.source.filtration.as_ref().is_some_and(|fl| !fl.relation_exact(w.m)) {
                    continue;
                }
                let v = f.diff_at(&w);
                rep.check(v.is_empty(), || format!("{} -> {}", f.source.fmt_biword(&w), f.target.fmt_lin(&v)));
            }
        }
    }
    rep
}

/// `F ∘ G = F ∘ Ĝ` on all inputs with `r ≤ rmax`, `s ≤ smax`.
pub fn compose<R: Ring>(f: &Premorphism<R>, g: &Premorphism<R>, rmax: usize, smax: usize) -> Result<Premorphism<R>, BimodError> {
    if !Arc::ptr_eq(&g.target, &f.source) {
        return Err(BimodError::Mismatch("target of the inner map is not the source of the outer".into()));
    }
    let mut out = Premorphism::new(g.source.clone(), f.target.clone(), f.degree ^ g.degree);
    for r in 0..=rmax {
        for s in 0..=smax {
            for w in g.source.biwords(r, s) {
                let v = f.apply_bar(&g.hat(&w));
                out.set(w, v);
            }
        }
    }
    Ok(out)
}

struct Cohomology<R> {
    cycles: Vec<SparseVec<R>>,
    boundaries: Vec<SparseVec<R>>,
    dim: usize,
}

fn cohomology<R: Ring>(m: &AInfBimodule<R>, src: u32, tgt: u32) -> Result<Cohomology<R>, LinalgError> {
    let gens: Vec<_> = m.spaces.basis(src, tgt).collect();
    let to_vec = |v: &Lin<R>| -> SparseVec<R> { v.iter().map(|(b, c)| (b.idx as usize, c.clone())).collect() };
    let honest: Vec<usize> =
        (0..gens.len()).filter(|&i| m.filtration.as_ref().map_or(true, |f| f.below_top(gens[i]))).collect();
    let images: Vec<SparseVec<R>> = gens.iter().map(|g| to_vec(&m.mu(&BiWord::module(*g)).cloned().unwrap_or_default())).collect();
    let restricted: Vec<SparseVec<R>> = honest.iter().map(|&i| images[i].clone()).collect();
    let cycles: Vec<SparseVec<R>> = linalg::kernel(&restricted)?
        .into_iter()
        .map(|k| k.into_iter().map(|(j, c)| (honest[j], c)).collect())
        .collect();
    let brank = linalg::rank(images.iter().cloned())?;
    Ok(Cohomology { dim: cycles.len() - brank, cycles, boundaries: images })
}

/// Whether `[F^{0|1|0}]` is an isomorphism on the cohomology of `μ^{0|1|0}`.
/// On truncated tensor products only cycles below the top bar length count.
pub fn h0_is_quasi_iso<R: Ring>(f: &Premorphism<R>) -> Result<bool, BimodError> {
    if !R::is_field() {
        return Err(LinalgError::CoefficientNotField.into());
    }
    let (src, tgt) = (&f.source, &f.target);
    for x in 0..src.spaces.rows() as u32 {
        for y in 0..src.spaces.cols() as u32 {
            let hs = cohomology(src, x, y)?;
            let ht = cohomology(tgt, x, y)?;
            if hs.dim != ht.dim {
                return Ok(false);
            }
            let gens: Vec<_> = src.spaces.basis(x, y).collect();
            let image = |z: &SparseVec<R>| -> SparseVec<R> {
                let mut acc = Lin::new();
                for (i, c) in z {
                    lin_axpy(&mut acc, c, &f.apply(&BiWord::module(gens[*i])));
                }
                acc.into_iter().map(|(b, c)| (b.idx as usize, c)).collect()
            };
            let brank = linalg::rank(ht.boundaries.iter().cloned())?;
            let mapped = linalg::rank(ht.boundaries.iter().cloned().chain(hs.cycles.iter().map(image)))?;
            if mapped - brank != hs.dim {
                return Ok(false);
            }
            let _ = &hs.boundaries;
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty::{curved_clifford, Basis};
    use crate::bimod::diagonal;
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn identity_is_closed_and_quasi_iso() {
        let c = Arc::new(curved_clifford(r(2), vec![r(1), r(3)]));
        let d = Arc::new(diagonal(c));
        let id = Premorphism::identity(d);
        let dd = premorphism_diff(&id, 2, 2);
        assert!(dd.is_zero());
        assert!(h0_is_quasi_iso(&id).unwrap());
    }

    #[test]
    fn zero_map_is_not_quasi_iso() {
        let c = Arc::new(curved_clifford(r(0), vec![r(1)]));
        let d = Arc::new(diagonal(c));
        let z = Premorphism::new(d.clone(), d, 0);
        assert!(!h0_is_quasi_iso(&z).unwrap());
    }

    #[test]
    fn commutator_by_hand() {
        // Clifford e² = 1, odd F with F([1]) = e, F([e]) = 0, so
        // δF(w) = μ(F̂ w) + F(μ̂ w).
        let c = Arc::new(curved_clifford(r(0), vec![r(1)]));
        let d = Arc::new(diagonal(c));
        let (one, e) = (Basis::new(0, 0, 0), Basis::new(0, 0, 1));
        let mut f = Premorphism::new(d.clone(), d.clone(), 1);
        f.set(BiWord::module(one), lin_single(e, r(1)));
        let df = premorphism_diff(&f, 1, 1);
        let at = |left: Vec<Basis>, m, right: Vec<Basis>| df.apply(&BiWord::new(left, m, right));
        // m2(e, e) + F(m2(e, 1)) = 1 + F(-[e]) = 1
        assert_eq!(at(vec![e], one, vec![]), lin_single(one, r(1)));
        // m2(e, e) + F(m2(1, e)) = 1 + F([e]) = 1
        assert_eq!(at(vec![], one, vec![e]), lin_single(one, r(1)));
        // -m2(1, e) + F(m2(1, 1)) = -e + e
        assert!(at(vec![one], one, vec![]).is_empty());
        // F(m2(e, e)) = F([1]) = e
        assert_eq!(at(vec![e], e, vec![]), lin_single(e, r(1)));
        assert_eq!(at(vec![], e, vec![e]), lin_single(e, r(1)));
        assert!(df.apply(&BiWord::module(one)).is_empty());
    }

    #[test]
    fn not_a_field() {
        use crate::laurent::LaurentPoly;
        let c = Arc::new(curved_clifford(LaurentPoly::<Rational>::zero(), vec![]));
        let d = Arc::new(diagonal(c));
        let id = Premorphism::identity(d);
        assert!(matches!(h0_is_quasi_iso(&id), Err(BimodError::Linalg(LinalgError::CoefficientNotField))));
    }
}
