//! A∞-functors and the functor equation `F∘m̂ = m∘F̂`.

use std::collections::HashMap;

use super::{lin_axpy, lin_single, lin_sub, AInfCategory, Lin, Word};
use crate::report::CheckReport;
use crate::ring::Ring;

/// Components `F_k` (k ≥ 1) of degree zero in the shifted grading; there
/// is no curvature component.
#[derive(Debug, Clone)]
pub struct AInfFunctor<R> {
    pub obj_map: Vec<u32>,
    comps: HashMap<Word, Lin<R>>,
    pub kmax: usize,
}

impl<R: Ring> AInfFunctor<R> {
    pub fn new(obj_map: Vec<u32>) -> Self {
        AInfFunctor { obj_map, comps: HashMap::new(), kmax: 0 }
    }

    pub fn identity(c: &AInfCategory<R>) -> Self {
        let mut f = Self::new((0..c.nobjects() as u32).collect());
        for b in c.homs.all() {
            f.set(Word::new(vec![b]), lin_single(b, R::one()));
        }
        f
    }

    pub fn set(&mut self, w: Word, v: Lin<R>) {
        assert!(!w.is_empty(), "functors have no curvature component");
        self.kmax = self.kmax.max(w.len());
        if v.is_empty() {
            self.comps.remove(&w);
        } else {
            self.comps.insert(w, v);
        }
    }

    pub fn get(&self, w: &Word) -> Option<&Lin<R>> {
        self.comps.get(w)
    }

    pub fn apply(&self, w: &Word) -> Lin<R> {
        self.get(w).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Word, &Lin<R>)> {
        self.comps.iter()
    }

    pub fn transform(&mut self, f: impl Fn(&Word, &mut Lin<R>)) {
        for (w, v) in self.comps.iter_mut() {
            f(w, v);
        }
        self.comps.retain(|_, v| !v.is_empty());
    }

    /// `m ∘ F̂` on one word of the source.
    pub fn push_forward(&self, w: &Word, target: &AInfCategory<R>) -> Lin<R> {
        if w.is_empty() {
            return target.m0(self.obj_map[w.obj as usize]);
        }
        let mut out = Lin::new();
        let mut groups = Vec::new();
        self.split(w, 0, target, &mut groups, &mut out);
        out
    }

    fn split(&self, w: &Word, start: usize, target: &AInfCategory<R>, groups: &mut Vec<Lin<R>>, out: &mut Lin<R>) {
        if start == w.len() {
            let args: Vec<&Lin<R>> = groups.iter().collect();
            let obj = self.obj_map[w.obj as usize];
            lin_axpy(out, &R::one(), &target.m_lin(obj, &args));
            return;
        }
        if groups.len() == target.kmax {
            return;
        }
        for end in start + 1..=w.len().min(start + self.kmax) {
            let Some(v) = self.get(&w.sub(start, end)) else { continue };
            groups.push(v.clone());
            self.split(w, end, target, groups, out);
            groups.pop();
        }
    }

    /// `F ∘ m̂` on one word of the source.
    pub fn pull_back(&self, w: &Word, source: &AInfCategory<R>) -> Lin<R> {
        let mut out = Lin::new();
        for (v, c) in source.bar_diff(w) {
            if let Some(f) = self.get(&v) {
                lin_axpy(&mut out, &c, f);
            }
        }
        out
    }
}

/// Residual of the functor equation on all source words up to `max_arity`.
pub fn check_functor<R: Ring>(f: &AInfFunctor<R>, source: &AInfCategory<R>, target: &AInfCategory<R>, max_arity: usize) -> CheckReport {
    let mut rep = CheckReport::new(format!("functor equation up to arity {max_arity}"));
    for len in 0..=max_arity {
        for w in source.words(len) {
            let res = lin_sub(&f.pull_back(&w, source), &f.push_forward(&w, target));
            rep.check(res.is_empty(), || format!("{} -> {}", source.fmt_word(&w), target.fmt_lin(&res)));
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty::{curved_clifford, Basis};
    use crate::Rational;

    #[test]
    fn identity_functor_passes() {
        let c = curved_clifford(Rational::from_i64(2), vec![Rational::from_i64(1), Rational::from_i64(3)]);
        let id = AInfFunctor::identity(&c);
        assert!(check_functor(&id, &c, &c, 3).passed);
    }

    #[test]
    fn dropped_sign_fails() {
        let c = curved_clifford(Rational::from_i64(0), vec![Rational::from_i64(1)]);
        let mut f = AInfFunctor::identity(&c);
        let one = Basis::new(0, 0, 0);
        f.set(Word::new(vec![one]), lin_single(one, Rational::from_i64(-1)));
        assert!(!check_functor(&f, &c, &c, 2).passed);
    }
}
