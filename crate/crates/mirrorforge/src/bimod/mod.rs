//! A∞-bimodules, premorphisms and their differential.
//!
//! Module generators carry a module degree (see [`crate::signs`]); a
//! diagonal bimodule uses the shifted degree of the category element.

mod json;
mod premorphism;
mod tensor;

pub use json::{BimoduleJson, MuJson};

pub use premorphism::{compose, h0_is_quasi_iso, premorphism_diff, Premorphism};
pub use tensor::{tensor, unit_insertion};
pub use premorphism::{check_premorphism_closed, random_premorphism};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::ainfty::{lin_axpy, words_from, words_to, AInfCategory, AInfFunctor, Basis, Gen, Lin, Spaces, Word};
use crate::linalg::LinalgError;
use crate::report::CheckReport;
use crate::ring::Ring;
use crate::signs;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BimodError {
    #[error("base change needs structure maps of arity {needed} but the bimodule is only known up to {bound}")]
    ArityOverflow { needed: usize, bound: usize },
    #[error("premorphisms do not share source and target: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("bimodule JSON: {0}")]
    Json(String),
}

/// Input of a bimodule structure map: `(v₁,…,v_r, m, w₁,…,w_s)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiWord {
    pub left: Vec<Basis>,
    pub m: Basis,
    pub right: Vec<Basis>,
}

impl BiWord {
    pub fn new(left: Vec<Basis>, m: Basis, right: Vec<Basis>) -> Self {
        BiWord { left, m, right }
    }

    pub fn module(m: Basis) -> Self {
        BiWord { left: Vec::new(), m, right: Vec::new() }
    }

    pub fn r(&self) -> usize {
        self.left.len()
    }

    pub fn s(&self) -> usize {
        self.right.len()
    }

    /// Object at gap `l` of the left word (gap `r` is the module's source).
    pub fn left_gap(&self, l: usize) -> u32 {
        if l < self.left.len() {
            self.left[l].src
        } else {
            self.m.src
        }
    }

    /// Object at gap `l` of the right word (gap 0 is the module's target).
    pub fn right_gap(&self, l: usize) -> u32 {
        if l == 0 {
            self.m.tgt
        } else {
            self.right[l - 1].tgt
        }
    }

    /// Start object of the whole input.
    pub fn start(&self) -> u32 {
        self.left_gap(0)
    }

    pub fn end(&self) -> u32 {
        self.right_gap(self.right.len())
    }
}

pub type BiBar<R> = BTreeMap<BiWord, R>;

pub fn bibar_add<R: Ring>(bar: &mut BiBar<R>, w: BiWord, c: R) {
    if c.is_zero() {
        return;
    }
    match bar.get_mut(&w) {
        Some(old) => {
            let v = old.add(&c);
            if v.is_zero() {
                bar.remove(&w);
            } else {
                *old = v;
            }
        }
        None => {
            bar.insert(w, c);
        }
    }
}

/// A generator `m ⊗ d₁ ⊗ ⋯ ⊗ d_k ⊗ n` of a tensor product.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorGen {
    pub m: Basis,
    pub bar: Vec<Basis>,
    pub n: Basis,
}

/// Bar-length data of a truncated tensor product.
#[derive(Debug, Clone, PartialEq)]
pub struct Filtration {
    pub bound: usize,
    pub pieces: BTreeMap<Basis, TensorGen>,
    /// The middle category has curvature, which raises bar length.
    pub curved: bool,
}

impl Filtration {
    pub fn length(&self, m: Basis) -> usize {
        self.pieces.get(&m).map_or(0, |t| t.bar.len())
    }

    /// Generators on which the structure relation is exact.
    pub fn relation_exact(&self, m: Basis) -> bool {
        !self.curved || self.length(m) + 2 <= self.bound
    }

    /// Generators whose cycles are honest (below the top length).
    pub fn below_top(&self, m: Basis) -> bool {
        self.length(m) < self.bound
    }
}

/// A `𝒞`-`𝒟` bimodule with finitely many nonzero structure maps.
#[derive(Debug, Clone)]
pub struct AInfBimodule<R> {
    pub left: Arc<AInfCategory<R>>,
    pub right: Arc<AInfCategory<R>>,
    /// `spaces.gens(X, Y)` generates `M(X, Y)`; degrees are module degrees.
    pub spaces: Spaces,
    mu: HashMap<BiWord, Lin<R>>,
    /// Largest `r + s + 1` with a nonzero structure map.
    pub bound: usize,
    pub truncated: bool,
    pub filtration: Option<Filtration>,
    /// Built by [`diagonal`]: generators are the category's own basis.
    pub is_diagonal: bool,
}

impl<R: Ring> AInfBimodule<R> {
    pub fn new(left: Arc<AInfCategory<R>>, right: Arc<AInfCategory<R>>, spaces: Spaces) -> Self {
        assert_eq!(spaces.rows(), left.nobjects());
        assert_eq!(spaces.cols(), right.nobjects());
        let truncated = left.truncated || right.truncated;
        AInfBimodule { left, right, spaces, mu: HashMap::new(), bound: 0, truncated, filtration: None, is_diagonal: false }
    }

    pub fn mdeg(&self, m: Basis) -> u8 {
        self.spaces.deg(m)
    }

    pub fn set_mu(&mut self, w: BiWord, v: Lin<R>) {
        let v: Lin<R> = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if v.is_empty() {
            self.mu.remove(&w);
        } else {
            self.bound = self.bound.max(w.r() + w.s() + 1);
            self.mu.insert(w, v);
        }
    }

    pub fn mu(&self, w: &BiWord) -> Option<&Lin<R>> {
        self.mu.get(w)
    }

    pub fn structure(&self) -> Vec<(&BiWord, &Lin<R>)> {
        let mut v: Vec<_> = self.mu.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    /// All inputs with `r` left and `s` right letters.
    pub fn biwords(&self, r: usize, s: usize) -> Vec<BiWord> {
        let mut out = Vec::new();
        for m in self.spaces.all() {
            let lefts = words_to(&self.left.homs, m.src, r);
            let rights = words_from(&self.right.homs, m.tgt, s);
            for l in &lefts {
                for rt in &rights {
                    out.push(BiWord::new(l.letters.clone(), m, rt.letters.clone()));
                }
            }
        }
        out
    }

    /// `μ` extended multilinearly.
    pub fn mu_lin(&self, left: &[&Lin<R>], m: &Lin<R>, right: &[&Lin<R>]) -> Lin<R> {
        let mut out = Lin::new();
        let mut args: Vec<&Lin<R>> = left.to_vec();
        args.push(m);
        args.extend_from_slice(right);
        let mut letters = Vec::with_capacity(args.len());
        self.expand(&args, left.len(), &mut letters, R::one(), &mut out);
        out
    }

    fn expand(&self, args: &[&Lin<R>], r: usize, letters: &mut Vec<Basis>, coeff: R, out: &mut Lin<R>) {
        let i = letters.len();
        if i == args.len() {
            let w = BiWord::new(letters[..r].to_vec(), letters[r], letters[r + 1..].to_vec());
            if let Some(v) = self.mu(&w) {
                lin_axpy(out, &coeff, v);
            }
            return;
        }
        for (b, c) in args[i] {
            if let Some(prev) = letters.last() {
                if prev.tgt != b.src {
                    continue;
                }
            }
            letters.push(*b);
            self.expand(args, r, letters, coeff.mul(c), out);
            letters.pop();
        }
    }

    /// The bar differential `μ̂` on one input.
    pub fn bar_diff(&self, w: &BiWord) -> BiBar<R> {
        let (r, s) = (w.r(), w.s());
        let mut out = BiBar::new();
        let lw = Word::with_start(w.start(), w.left.clone());
        // m^C inside the left word, curvature at every gap.
        let mut sign = 0u8;
        for l in 0..=r {
            for j in 0..=self.left.kmax.min(r - l) {
                let inner = lw.sub(l, l + j);
                let Some(v) = self.left.m(&inner) else { continue };
                for (b, c) in v {
                    let mut left = w.left[..l].to_vec();
                    left.push(*b);
                    left.extend_from_slice(&w.left[l + j..]);
                    bibar_add(&mut out, BiWord::new(left, w.m, w.right.clone()), c.signed(signs::is_odd(sign)));
                }
            }
            if l < r {
                sign ^= self.left.homs.sdeg(w.left[l]);
            }
        }
        // μ around the module element.
        let mut sign = 0u8;
        for i in 0..=r {
            for j in 0..=s {
                let inner = BiWord::new(w.left[i..].to_vec(), w.m, w.right[..j].to_vec());
                let Some(v) = self.mu(&inner) else { continue };
                for (b, c) in v {
                    let word = BiWord::new(w.left[..i].to_vec(), *b, w.right[j..].to_vec());
                    bibar_add(&mut out, word, c.signed(signs::is_odd(sign)));
                }
            }
            if i < r {
                sign ^= self.left.homs.sdeg(w.left[i]);
            }
        }
        // m^D inside the right word, after everything on the left.
        let rw = Word::with_start(w.m.tgt, w.right.clone());
        let mut sign = self.left.homs.sdeg_sum(&w.left) ^ self.mdeg(w.m);
        for l in 0..=s {
            for j in 0..=self.right.kmax.min(s - l) {
                let inner = rw.sub(l, l + j);
                let Some(v) = self.right.m(&inner) else { continue };
                for (b, c) in v {
                    let mut right = w.right[..l].to_vec();
                    right.push(*b);
                    right.extend_from_slice(&w.right[l + j..]);
                    bibar_add(&mut out, BiWord::new(w.left.clone(), w.m, right), c.signed(signs::is_odd(sign)));
                }
            }
            if l < s {
                sign ^= self.right.homs.sdeg(w.right[l]);
            }
        }
        out
    }

    pub fn apply_mu(&self, bar: &BiBar<R>) -> Lin<R> {
        let mut out = Lin::new();
        for (w, c) in bar {
            if let Some(v) = self.mu(w) {
                lin_axpy(&mut out, c, v);
            }
        }
        out
    }

    pub fn mname(&self, m: Basis) -> String {
        let g = &self.spaces.gen(m).name;
        if self.left.nobjects() == 1 && self.right.nobjects() == 1 {
            g.clone()
        } else {
            format!("{}|{}:{g}", self.left.objects[m.src as usize], self.right.objects[m.tgt as usize])
        }
    }

    pub fn fmt_biword(&self, w: &BiWord) -> String {
        let mut parts: Vec<String> = w.left.iter().map(|b| self.left.name(*b)).collect();
        parts.push(format!("[{}]", self.mname(w.m)));
        parts.extend(w.right.iter().map(|b| self.right.name(*b)));
        format!("({})", parts.join(", "))
    }

    pub fn fmt_lin(&self, v: &Lin<R>) -> String {
        crate::ainfty::fmt_lin_with(v, |b| self.mname(b))
    }

    /// The zero bimodule over the same pair of categories.
    pub fn zero(left: Arc<AInfCategory<R>>, right: Arc<AInfCategory<R>>) -> Self {
        let spaces = Spaces::new(left.nobjects(), right.nobjects());
        Self::new(left, right, spaces)
    }
}

/// Residual of the bimodule relation `μ∘μ̂ = 0` on every input with
/// `r + s ≤ max_total` (default `2·bound − 2`).
pub fn check_bimodule<R: Ring>(m: &AInfBimodule<R>, max_total: Option<usize>) -> CheckReport {
    let n = max_total.unwrap_or((2 * m.bound.max(m.left.kmax).max(m.right.kmax)).saturating_sub(2));
    let mut rep = CheckReport::new(format!("bimodule relation up to r+s = {n}"));
    for total in 0..=n {
        for r in 0..=total {
            for w in m.biwords(r, total - r) {
                if let Some(f) = &m.filtration {
                    if !f.relation_exact(w.m) {
                        continue;
                    }
                }
                let res = m.apply_mu(&m.bar_diff(&w));
                rep.check(res.is_empty(), || format!("{} -> {}", m.fmt_biword(&w), m.fmt_lin(&res)));
            }
        }
    }
    rep
}

/// The diagonal bimodule: `μ^{r|1|s} = m_{r+s+1}`, module degree `|x|'`.
pub fn diagonal<R: Ring>(c: Arc<AInfCategory<R>>) -> AInfBimodule<R> {
    let n = c.nobjects();
    let mut spaces = Spaces::new(n, n);
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            let gens = c.homs.gens(a, b).iter().map(|g| Gen::new(g.name.clone(), signs::shift(g.deg))).collect();
            spaces.set(a as usize, b as usize, gens);
        }
    }
    let mut out = AInfBimodule::new(c.clone(), c.clone(), spaces);
    for (w, v) in c.structure() {
        for p in 0..w.len() {
            let bw = BiWord::new(w.letters[..p].to_vec(), w.letters[p], w.letters[p + 1..].to_vec());
            out.set_mu(bw, v.clone());
        }
    }
    out.is_diagonal = true;
    out
}

/// Splittings of a word into consecutive non-empty groups with images
/// under `f`; calls `visit` with the list of group images.
fn for_each_split<R: Ring>(
    f: &AInfFunctor<R>,
    w: &Word,
    max_groups: usize,
    start: usize,
    groups: &mut Vec<Lin<R>>,
    visit: &mut dyn FnMut(&[Lin<R>]),
) {
    if start == w.len() {
        visit(groups);
        return;
    }
    if groups.len() == max_groups {
        return;
    }
    for end in start + 1..=w.len().min(start + f.kmax) {
        let Some(v) = f.get(&w.sub(start, end)) else { continue };
        groups.push(v.clone());
        for_each_split(f, w, max_groups, end, groups, visit);
        groups.pop();
    }
}

/// `(F ⊗ G)*M` with structure maps summing over functor splittings.
/// `max_left`/`max_right` cap the arities materialized; by default the
/// full support `F.kmax·(bound − 1)` is used.
pub fn base_change<R: Ring>(
    f: &AInfFunctor<R>,
    g: &AInfFunctor<R>,
    m: &AInfBimodule<R>,
    source_left: Arc<AInfCategory<R>>,
    source_right: Arc<AInfCategory<R>>,
    caps: Option<(usize, usize)>,
) -> Result<AInfBimodule<R>, BimodError> {
    let inner = m.bound.saturating_sub(1);
    let (rmax, smax) = caps.unwrap_or((f.kmax * inner, g.kmax * inner));
    if m.truncated {
        let needed = rmax + smax + 1;
        if needed > m.bound {
            return Err(BimodError::ArityOverflow { needed, bound: m.bound });
        }
    }
    let (nl, nr) = (source_left.nobjects(), source_right.nobjects());
    let mut spaces = Spaces::new(nl, nr);
    for x in 0..nl {
        for y in 0..nr {
            let gens = m.spaces.gens(f.obj_map[x], g.obj_map[y]).to_vec();
            spaces.set(x, y, gens);
        }
    }
    let mut out = AInfBimodule::new(source_left, source_right, spaces);
    for r in 0..=rmax {
        for s in 0..=smax {
            for w in out.biwords(r, s) {
                let target_m = Basis::new(f.obj_map[w.m.src as usize], g.obj_map[w.m.tgt as usize], w.m.idx);
                let ml = crate::ainfty::lin_single(target_m, R::one());
                let lw = Word::with_start(w.start(), w.left.clone());
                let rw = Word::with_start(w.m.tgt, w.right.clone());
                let mut acc = Lin::new();
                let max_groups = m.bound.max(1) - 1;
                let mut lefts: Vec<Vec<Lin<R>>> = Vec::new();
                for_each_split(f, &lw, max_groups, 0, &mut Vec::new(), &mut |gs| lefts.push(gs.to_vec()));
                let mut rights: Vec<Vec<Lin<R>>> = Vec::new();
                for_each_split(g, &rw, max_groups, 0, &mut Vec::new(), &mut |gs| rights.push(gs.to_vec()));
                for lg in &lefts {
                    for rg in &rights {
                        if lg.len() + rg.len() + 1 > m.bound {
                            continue;
                        }
                        let la: Vec<&Lin<R>> = lg.iter().collect();
                        let ra: Vec<&Lin<R>> = rg.iter().collect();
                        lin_axpy(&mut acc, &R::one(), &m.mu_lin(&la, &ml, &ra));
                    }
                }
                let remapped: Lin<R> = acc.into_iter().map(|(b, c)| (Basis::new(w.start(), w.end(), b.idx), c)).collect();
                out.set_mu(w, remapped);
            }
        }
    }
    Ok(out)
}

/// Generators of a bimodule as a set, for filtering.
pub fn generator_set<R: Ring>(m: &AInfBimodule<R>) -> BTreeSet<Basis> {
    m.spaces.all().into_iter().collect()
}
