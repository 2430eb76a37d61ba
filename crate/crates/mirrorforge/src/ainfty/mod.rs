//! Finite A∞-categories over a commutative coefficient ring.
//!
//! Hom spaces are free modules with named ℤ/2-graded generators. Structure
//! maps are sparse tensors keyed by composable words of generators; the
//! empty word at an object holds its curvature `m₀`.

mod category;
mod clifford;
mod functor;
mod json;

pub use category::{check_ainfty, check_m1_squared, check_unit, deform, deform_unchecked, is_weak_mc, m_exp_b, normalize_curvature};
pub use clifford::curved_clifford;
pub use functor::{check_functor, AInfFunctor};
pub use json::{CategoryJson, GenJson, OpJson};

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::Ring;
use crate::signs;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AinftyError {
    #[error("m(e^b) has no finite expansion: the category is truncated and no order was given")]
    NonConvergent,
    #[error("objects disagree on the potential: {0:?}")]
    PotentialMismatch(Vec<String>),
    #[error("object {0} has no usable unit")]
    NoUnit(String),
    #[error("b is not an odd endomorphism of {0}")]
    NotDegreeOne(String),
    #[error("malformed category data: {0}")]
    Json(String),
}

/// A named generator of a hom space with its ℤ/2 degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gen {
    pub name: String,
    pub deg: u8,
}

impl Gen {
    pub fn new(name: impl Into<String>, deg: u8) -> Self {
        Gen { name: name.into(), deg: deg & 1 }
    }
}

/// Generator `idx` of the space attached to `(src, tgt)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basis {
    pub src: u32,
    pub tgt: u32,
    pub idx: u32,
}

impl Basis {
    pub fn new(src: u32, tgt: u32, idx: u32) -> Self {
        Basis { src, tgt, idx }
    }
}

/// Based graded spaces indexed by pairs of objects.
#[derive(Debug, Clone, PartialEq)]
pub struct Spaces {
    gens: Vec<Vec<Vec<Gen>>>,
}

impl Spaces {
    pub fn new(rows: usize, cols: usize) -> Self {
        Spaces { gens: vec![vec![Vec::new(); cols]; rows] }
    }

    pub fn rows(&self) -> usize {
        self.gens.len()
    }

    pub fn cols(&self) -> usize {
        self.gens.first().map_or(0, Vec::len)
    }

    pub fn set(&mut self, src: usize, tgt: usize, gens: Vec<Gen>) {
        self.gens[src][tgt] = gens;
    }

    pub fn gens(&self, src: u32, tgt: u32) -> &[Gen] {
        &self.gens[src as usize][tgt as usize]
    }

    pub fn dim(&self, src: u32, tgt: u32) -> usize {
        self.gens(src, tgt).len()
    }

    pub fn gen(&self, b: Basis) -> &Gen {
        &self.gens(b.src, b.tgt)[b.idx as usize]
    }

    pub fn deg(&self, b: Basis) -> u8 {
        self.gen(b).deg
    }

    /// Shifted degree `|b|' = |b| + 1`.
    pub fn sdeg(&self, b: Basis) -> u8 {
        signs::shift(self.deg(b))
    }

    pub fn basis(&self, src: u32, tgt: u32) -> impl Iterator<Item = Basis> + '_ {
        (0..self.dim(src, tgt) as u32).map(move |i| Basis::new(src, tgt, i))
    }

    pub fn all(&self) -> Vec<Basis> {
        let mut out = Vec::new();
        for s in 0..self.rows() as u32 {
            for t in 0..self.cols() as u32 {
                out.extend(self.basis(s, t));
            }
        }
        out
    }

    /// Generators leaving `src` (square spaces only).
    pub fn outgoing(&self, src: u32) -> Vec<Basis> {
        (0..self.cols() as u32).flat_map(|t| self.basis(src, t)).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.gens.iter().flatten().map(Vec::len).sum()
    }

    /// Parity of the sum of shifted degrees.
    pub fn sdeg_sum(&self, letters: &[Basis]) -> u8 {
        signs::parity(letters.iter().map(|b| self.sdeg(*b)))
    }
}

/// Linear combination of generators.
pub type Lin<R> = BTreeMap<Basis, R>;

pub fn lin_add_term<R: Ring>(acc: &mut Lin<R>, b: Basis, c: &R) {
    if c.is_zero() {
        return;
    }
    let v = match acc.get(&b) {
        Some(old) => old.add(c),
        None => c.clone(),
    };
    if v.is_zero() {
        acc.remove(&b);
    } else {
        acc.insert(b, v);
    }
}

/// `acc += c·x`.
pub fn lin_axpy<R: Ring>(acc: &mut Lin<R>, c: &R, x: &Lin<R>) {
    for (b, v) in x {
        lin_add_term(acc, *b, &c.mul(v));
    }
}

pub fn lin_scale<R: Ring>(x: &Lin<R>, c: &R) -> Lin<R> {
    let mut out = Lin::new();
    lin_axpy(&mut out, c, x);
    out
}

pub fn lin_sub<R: Ring>(a: &Lin<R>, b: &Lin<R>) -> Lin<R> {
    let mut out = a.clone();
    lin_axpy(&mut out, &R::one().neg(), b);
    out
}

pub fn lin_single<R: Ring>(b: Basis, c: R) -> Lin<R> {
    let mut out = Lin::new();
    lin_add_term(&mut out, b, &c);
    out
}

/// A composable word of generators starting at object `obj`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub obj: u32,
    pub letters: Vec<Basis>,
}

impl Word {
    pub fn empty(obj: u32) -> Self {
        Word { obj, letters: Vec::new() }
    }

    /// A non-empty word; its start object is read from the first letter.
    pub fn new(letters: Vec<Basis>) -> Self {
        let obj = letters.first().expect("Word::new needs letters").src;
        Word { obj, letters }
    }

    pub fn with_start(obj: u32, letters: Vec<Basis>) -> Self {
        match letters.first() {
            Some(b) => Word { obj: b.src, letters },
            None => Word { obj, letters },
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn end(&self) -> u32 {
        self.letters.last().map_or(self.obj, |b| b.tgt)
    }

    /// The object sitting between letters `l-1` and `l`.
    pub fn gap(&self, l: usize) -> u32 {
        if l == 0 {
            self.obj
        } else {
            self.letters[l - 1].tgt
        }
    }

    pub fn is_composable(&self) -> bool {
        self.letters.windows(2).all(|p| p[0].tgt == p[1].src) && self.letters.first().map_or(true, |b| b.src == self.obj)
    }

    pub fn sub(&self, from: usize, to: usize) -> Word {
        Word::with_start(self.gap(from), self.letters[from..to].to_vec())
    }
}

/// Linear combination of words: an element of the bar construction.
pub type Bar<R> = BTreeMap<Word, R>;

pub fn bar_add<R: Ring>(bar: &mut Bar<R>, w: Word, c: R) {
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

/// All composable words of length `len` in square spaces.
pub fn words(spaces: &Spaces, len: usize) -> Vec<Word> {
    let n = spaces.rows() as u32;
    let mut out: Vec<Word> = (0..n).map(Word::empty).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &out {
            for b in spaces.outgoing(w.end()) {
                let mut letters = w.letters.clone();
                letters.push(b);
                next.push(Word::with_start(w.obj, letters));
            }
        }
        out = next;
    }
    out
}

/// Words of length `len` starting at `obj`.
pub fn words_from(spaces: &Spaces, obj: u32, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty(obj)];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &out {
            for b in spaces.outgoing(w.end()) {
                let mut letters = w.letters.clone();
                letters.push(b);
                next.push(Word::with_start(obj, letters));
            }
        }
        out = next;
    }
    out
}

/// Words of length `len` ending at `obj`.
pub fn words_to(spaces: &Spaces, obj: u32, len: usize) -> Vec<Word> {
    let mut out: Vec<Vec<Basis>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &out {
            let head = w.first().map_or(obj, |b| b.src);
            for src in 0..spaces.rows() as u32 {
                for b in spaces.basis(src, head) {
                    let mut letters = Vec::with_capacity(w.len() + 1);
                    letters.push(b);
                    letters.extend_from_slice(w);
                    next.push(letters);
                }
            }
        }
        out = next;
    }
    out.into_iter().map(|l| Word::with_start(obj, l)).collect()
}

/// A finite A∞-category. `m` holds every nonzero structure constant with
/// arity at most `kmax`; `truncated` marks data known only up to `kmax`.
#[derive(Debug, Clone)]
pub struct AInfCategory<R> {
    pub objects: Vec<String>,
    pub homs: Spaces,
    m: HashMap<Word, Lin<R>>,
    pub units: Vec<Option<Lin<R>>>,
    pub kmax: usize,
    pub truncated: bool,
}

impl<R: Ring> AInfCategory<R> {
    pub fn new(objects: Vec<String>, homs: Spaces, kmax: usize) -> Self {
        let n = objects.len();
        assert_eq!(homs.rows(), n);
        assert_eq!(homs.cols(), n);
        AInfCategory { objects, homs, m: HashMap::new(), units: vec![None; n], kmax, truncated: false }
    }

    pub fn nobjects(&self) -> usize {
        self.objects.len()
    }

    pub fn set_m(&mut self, word: Word, out: Lin<R>) {
        debug_assert!(word.is_composable());
        self.kmax = self.kmax.max(word.len());
        let out: Lin<R> = out.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if out.is_empty() {
            self.m.remove(&word);
        } else {
            self.m.insert(word, out);
        }
    }

    pub fn add_m_term(&mut self, word: Word, b: Basis, c: &R) {
        self.kmax = self.kmax.max(word.len());
        let entry = self.m.entry(word.clone()).or_default();
        lin_add_term(entry, b, c);
        if entry.is_empty() {
            self.m.remove(&word);
        }
    }

    pub fn m(&self, word: &Word) -> Option<&Lin<R>> {
        self.m.get(word)
    }

    pub fn m0(&self, obj: u32) -> Lin<R> {
        self.m(&Word::empty(obj)).cloned().unwrap_or_default()
    }

    pub fn set_m0(&mut self, obj: u32, v: Lin<R>) {
        self.set_m(Word::empty(obj), v);
    }

    /// Nonzero structure constants in a deterministic order.
    pub fn structure(&self) -> Vec<(&Word, &Lin<R>)> {
        let mut v: Vec<_> = self.m.iter().collect();
        v.sort_by(|a, b| (a.0.len(), a.0).cmp(&(b.0.len(), b.0)));
        v
    }

    pub fn set_unit(&mut self, obj: u32, e: Lin<R>) {
        self.units[obj as usize] = Some(e);
    }

    pub fn unit(&self, obj: u32) -> Result<&Lin<R>, AinftyError> {
        self.units[obj as usize].as_ref().ok_or_else(|| AinftyError::NoUnit(self.objects[obj as usize].clone()))
    }

    pub fn words(&self, len: usize) -> Vec<Word> {
        words(&self.homs, len)
    }

    /// `m_k(args)` extended multilinearly; `obj` is used when `args` is empty.
    pub fn m_lin(&self, obj: u32, args: &[&Lin<R>]) -> Lin<R> {
        let mut out = Lin::new();
        if args.is_empty() {
            return self.m0(obj);
        }
        if args.len() > self.kmax {
            return out;
        }
        let mut letters = Vec::with_capacity(args.len());
        self.expand(args, &mut letters, R::one(), &mut out);
        out
    }

    fn expand(&self, args: &[&Lin<R>], letters: &mut Vec<Basis>, coeff: R, out: &mut Lin<R>) {
        let i = letters.len();
        if i == args.len() {
            if let Some(v) = self.m(&Word::new(letters.clone())) {
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
            self.expand(args, letters, coeff.mul(c), out);
            letters.pop();
        }
    }

    /// The bar differential `m̂` on a single word, curvature insertions included.
    pub fn bar_diff(&self, w: &Word) -> Bar<R> {
        let n = w.len();
        let mut out = Bar::new();
        let mut sign = 0u8;
        for l in 0..=n {
            for j in 0..=self.kmax.min(n - l) {
                let inner = w.sub(l, l + j);
                let Some(v) = self.m(&inner) else { continue };
                for (b, c) in v {
                    let mut letters = Vec::with_capacity(n - j + 1);
                    letters.extend_from_slice(&w.letters[..l]);
                    letters.push(*b);
                    letters.extend_from_slice(&w.letters[l + j..]);
                    bar_add(&mut out, Word::with_start(w.obj, letters), c.signed(signs::is_odd(sign)));
                }
            }
            if l < n {
                sign ^= self.homs.sdeg(w.letters[l]);
            }
        }
        out
    }

    /// Apply `m` to every word of a bar element.
    pub fn apply_m(&self, bar: &Bar<R>) -> Lin<R> {
        let mut out = Lin::new();
        for (w, c) in bar {
            if let Some(v) = self.m(w) {
                lin_axpy(&mut out, c, v);
            }
        }
        out
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> AInfCategory<S> {
        let map_lin = |l: &Lin<R>| -> Lin<S> { l.iter().map(|(b, c)| (*b, f(c))).filter(|(_, c)| !c.is_zero()).collect() };
        AInfCategory {
            objects: self.objects.clone(),
            homs: self.homs.clone(),
            m: self.m.iter().map(|(w, v)| (w.clone(), map_lin(v))).filter(|(_, v)| !v.is_empty()).collect(),
            units: self.units.iter().map(|u| u.as_ref().map(map_lin)).collect(),
            kmax: self.kmax,
            truncated: self.truncated,
        }
    }

    /// Apply `f` to every structure constant in place.
    pub fn transform(&mut self, f: impl Fn(&Word, &mut Lin<R>)) {
        for (w, v) in self.m.iter_mut() {
            f(w, v);
        }
        self.m.retain(|_, v| !v.is_empty());
    }

    pub fn name(&self, b: Basis) -> String {
        let g = &self.homs.gen(b).name;
        if self.nobjects() == 1 {
            g.clone()
        } else {
            format!("{}|{}:{g}", self.objects[b.src as usize], self.objects[b.tgt as usize])
        }
    }

    pub fn fmt_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return format!("() at {}", self.objects[w.obj as usize]);
        }
        let parts: Vec<String> = w.letters.iter().map(|b| self.name(*b)).collect();
        format!("({})", parts.join(", "))
    }

    pub fn fmt_lin(&self, v: &Lin<R>) -> String {
        fmt_lin_with(v, |b| self.name(b))
    }
}

/// Render a linear combination as `c1*g1 + c2*g2`.
pub fn fmt_lin_with<R: Ring>(v: &Lin<R>, name: impl Fn(Basis) -> String) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (b, c)) in v.iter().enumerate() {
        if i > 0 {
            s.push_str(" + ");
        }
        let _ = write!(s, "({c})*{}", name(*b));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn word_gaps() {
        let w = Word::new(vec![Basis::new(0, 1, 0), Basis::new(1, 2, 3)]);
        assert_eq!(w.gap(0), 0);
        assert_eq!(w.gap(1), 1);
        assert_eq!(w.gap(2), 2);
        assert_eq!(w.end(), 2);
        assert!(w.is_composable());
        assert_eq!(w.sub(1, 1), Word::empty(1));
    }

    #[test]
    fn word_enumeration_counts_composable_tuples() {
        let mut sp = Spaces::new(2, 2);
        sp.set(0, 0, vec![Gen::new("a", 0)]);
        sp.set(0, 1, vec![Gen::new("b", 1), Gen::new("c", 0)]);
        sp.set(1, 0, vec![Gen::new("d", 1)]);
        assert_eq!(words(&sp, 0).len(), 2);
        assert_eq!(words(&sp, 1).len(), 4);
        // aa ab ac bd cd da db dc
        assert_eq!(words(&sp, 2).len(), 8);
    }

    #[test]
    fn lin_cancellation() {
        let b = Basis::new(0, 0, 0);
        let mut v = lin_single(b, Rational::from_i64(2));
        lin_add_term(&mut v, b, &Rational::from_i64(-2));
        assert!(v.is_empty());
    }
}
