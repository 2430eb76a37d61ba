//! Hochschild cohomology in a length window by exact linear algebra.
//!
//! Cochains are expanded over the coefficient field `K` of the ring: a basis
//! cochain is `s·o` at one word, with `o` a module generator and `s` one of
//! the supplied scalar monomials (just `1` over a field).

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{HochError, HochschildCochain};
use crate::ainfty::{lin_axpy, AInfCategory, Basis, Lin, Word};
use crate::bimod::{AInfBimodule, BiWord};
use crate::linalg::{self, Echelon, Indexer, LinalgError, SparseVec};
use crate::ring::{Coords, Ring};
use crate::signs;

type Key = (Word, Basis, Vec<i32>);

/// The `K`-linear cochain space of a category with bimodule coefficients.
pub struct CochainSpace<R: Coords> {
    pub cat: Arc<AInfCategory<R>>,
    pub coeffs: Arc<AInfBimodule<R>>,
    scalars: Vec<(Vec<i32>, R)>,
    keys: Indexer<Key>,
}

/// Columns of `b*` on basis cochains, keyed by the source index.
struct Differential<K> {
    columns: BTreeMap<usize, SparseVec<K>>,
}

impl<R: Coords> CochainSpace<R>
where
    R::K: Ring,
{
    /// `scalars` must be monomials (one coordinate each); over a field pass `[1]`.
    pub fn new(cat: Arc<AInfCategory<R>>, coeffs: Arc<AInfBimodule<R>>, scalars: &[R]) -> Self {
        let scalars = scalars
            .iter()
            .map(|s| {
                let c = s.coords();
                assert_eq!(c.len(), 1, "scalar basis elements must be monomials");
                let (mono, k) = c.into_iter().next().expect("one coordinate");
                let norm = s.mul(&R::embed(&k.inv().expect("nonzero scalar over a field")));
                (mono, norm)
            })
            .collect();
        CochainSpace { cat, coeffs, scalars, keys: Indexer::default() }
    }

    fn words_upto(&self, len: usize) -> Vec<Word> {
        super::words_upto(&self.cat, len)
    }

    /// Coordinates of a cochain.
    pub fn to_vec(&mut self, phi: &HochschildCochain<R>) -> SparseVec<R::K> {
        let mut out = SparseVec::new();
        for (w, v) in phi.components() {
            self.push_lin(&mut out, w, v, &R::one());
        }
        out
    }

    fn push_lin(&mut self, out: &mut SparseVec<R::K>, w: &Word, v: &Lin<R>, scale: &R) {
        for (b, c) in v {
            for (mono, k) in c.mul(scale).coords() {
                let i = self.keys.index(&(w.clone(), *b, mono));
                linalg::axpy(out, &R::K::one(), &BTreeMap::from([(i, k)]));
            }
        }
    }

    /// The cochain with the given coordinates.
    pub fn to_cochain(&self, v: &SparseVec<R::K>, degree: u8) -> HochschildCochain<R> {
        let lookup: HashMap<&Vec<i32>, &R> = self.scalars.iter().map(|(m, s)| (m, s)).collect();
        let mut by_word: BTreeMap<Word, Lin<R>> = BTreeMap::new();
        for (i, k) in v {
            let (w, b, mono) = self.keys.key(*i);
            let s = lookup.get(mono).copied().cloned().unwrap_or_else(|| panic!("monomial {mono:?} outside the scalar basis"));
            lin_axpy(by_word.entry(w.clone()).or_default(), &s.mul(&R::embed(k)), &Lin::from([(*b, R::one())]));
        }
        let mut out = HochschildCochain::new(self.cat.clone(), self.coeffs.clone(), degree);
        for (w, l) in by_word {
            out.set(w, l);
        }
        out
    }

    /// Basis cochains on words of length at most `a`, with their shifted degree.
    fn sources(&mut self, a: usize) -> Vec<(usize, u8)> {
        let mut out = Vec::new();
        for w in self.words_upto(a) {
            let wdeg = self.cat.homs.sdeg_sum(&w.letters);
            let outs: Vec<Basis> = self.coeffs.spaces.basis(w.obj, w.end()).collect();
            for o in outs {
                let h = self.coeffs.mdeg(o) ^ wdeg;
                for s in 0..self.scalars.len() {
                    let key = (w.clone(), o, self.scalars[s].0.clone());
                    out.push((self.keys.index(&key), h));
                }
            }
        }
        out
    }

    /// `b*` on every basis cochain supported on words of length `≤ a`.
    fn differential(&mut self, a: usize) -> Differential<R::K> {
        let reach = a + self.cat.kmax.saturating_sub(1);
        let mut columns: BTreeMap<usize, SparseVec<R::K>> = BTreeMap::new();
        let cat = self.cat.clone();
        let coeffs = self.coeffs.clone();
        let scalars = self.scalars.clone();
        for w in self.words_upto(reach) {
            let n = w.len();
            // μ(x₁..x_i, s·o, x_{j+1}..), o = φ(x_{i+1}..x_j)
            let mut before = 0u8;
            for i in 0..=n {
                for j in i..=n.min(i + a) {
                    let u = w.sub(i, j);
                    let udeg = cat.homs.sdeg_sum(&u.letters);
                    for o in coeffs.spaces.basis(u.obj, u.end()) {
                        let h = coeffs.mdeg(o) ^ udeg;
                        let input = BiWord::new(w.letters[..i].to_vec(), o, w.letters[j..].to_vec());
                        let Some(v) = coeffs.mu(&input) else { continue };
                        let sign = R::one().signed(signs::koszul(h, before));
                        for (mono, s) in &scalars {
                            let col = self.keys.index(&(u.clone(), o, mono.clone()));
                            let mut target = SparseVec::new();
                            self.push_lin(&mut target, &w, v, &s.mul(&sign));
                            linalg::axpy(columns.entry(col).or_default(), &R::K::one(), &target);
                        }
                    }
                }
                if i < n {
                    before ^= cat.homs.sdeg(w.letters[i]);
                }
            }
            // −(-1)^h φ(m̂ w)
            for (u, c) in cat.bar_diff(&w) {
                if u.len() > a {
                    continue;
                }
                let udeg = cat.homs.sdeg_sum(&u.letters);
                for o in coeffs.spaces.basis(u.obj, u.end()) {
                    let h = coeffs.mdeg(o) ^ udeg;
                    let sign = c.signed(!signs::is_odd(h));
                    for (mono, s) in &scalars {
                        let col = self.keys.index(&(u.clone(), o, mono.clone()));
                        let mut target = SparseVec::new();
                        self.push_lin(&mut target, &w, &Lin::from([(o, R::one())]), &s.mul(&sign));
                        linalg::axpy(columns.entry(col).or_default(), &R::K::one(), &target);
                    }
                }
            }
        }
        Differential { columns }
    }
}

/// Dimensions of `HH⁰`, `HH¹` in a length window, with a comparison
/// against the next smaller window.
#[derive(Debug, Clone, PartialEq)]
pub struct HHReport {
    pub lmax: usize,
    /// Indexed by Hochschild degree.
    pub dims: [usize; 2],
    pub previous: [usize; 2],
    pub stable: bool,
}

impl HHReport {
    pub fn line(&self) -> String {
        let verdict = if self.stable { format!("stable at lmax = {}", self.lmax) } else { "NotStabilized".to_string() };
        format!(
            "HH^0 = {}, HH^1 = {} (lmax = {}; lmax - 1 gives {}, {}): {verdict}",
            self.dims[0], self.dims[1], self.lmax, self.previous[0], self.previous[1]
        )
    }
}

struct Window<K> {
    dims: [usize; 2],
    reps: [Vec<SparseVec<K>>; 2],
}

fn window<R: Coords>(space: &mut CochainSpace<R>, lmax: usize) -> Result<Window<R::K>, HochError>
where
    R::K: Ring,
{
    if !R::K::is_field() {
        return Err(LinalgError::CoefficientNotField.into());
    }
    let k = space.cat.kmax.max(1);
    let a = (lmax + 1).checked_sub(k).ok_or(HochError::TruncationOverflow { needed: k - 1, lmax })?;
    let sources = space.sources(a);
    let d = space.differential(a);
    let bsrc = (a + 1).saturating_sub(k);
    let mut dims = [0usize; 2];
    let mut reps: [Vec<SparseVec<R::K>>; 2] = [Vec::new(), Vec::new()];
    for h in 0..2u8 {
        let cols: Vec<usize> = sources.iter().filter(|(_, hh)| *hh == h).map(|(i, _)| *i).collect();
        let images: Vec<SparseVec<R::K>> = cols.iter().map(|c| d.columns.get(c).cloned().unwrap_or_default()).collect();
        let cycles: Vec<SparseVec<R::K>> = linalg::kernel(&images)?
            .into_iter()
            .map(|rel| rel.into_iter().map(|(j, c)| (cols[j], c)).collect())
            .collect();
        let mut bnd = Echelon::new(false);
        for (i, hh) in &sources {
            if *hh == h ^ 1 && space.keys.key(*i).0.len() <= bsrc {
                bnd.insert(d.columns.get(i).cloned().unwrap_or_default())?;
            }
        }
        let brank = bnd.rank();
        let dd = ((h + 1) & 1) as usize;
        dims[dd] = cycles.len() - brank;
        for z in cycles {
            if bnd.insert(z.clone())?.is_none() {
                reps[dd].push(z);
            }
        }
    }
    Ok(Window { dims, reps })
}

/// `HH*` of `cat` with coefficients `coeffs` from cochains of length
/// `≤ lmax − K + 1`, so that `b*` is computed without truncation loss.
pub fn hh_cohomology<R: Coords>(
    cat: Arc<AInfCategory<R>>,
    coeffs: Arc<AInfBimodule<R>>,
    lmax: usize,
    scalars: &[R],
) -> Result<(HHReport, [Vec<HochschildCochain<R>>; 2]), HochError>
where
    R::K: Ring,
{
    let mut space = CochainSpace::new(cat.clone(), coeffs.clone(), scalars);
    let cur = window(&mut space, lmax)?;
    let prev = if lmax > cat.kmax { window(&mut space, lmax - 1)?.dims } else { [usize::MAX; 2] };
    let reps = [0usize, 1].map(|d| {
        let h = ((d + 1) & 1) as u8;
        cur.reps[d].iter().map(|v| space.to_cochain(v, h)).collect()
    });
    let report = HHReport { lmax, dims: cur.dims, previous: prev, stable: prev == cur.dims };
    Ok((report, reps))
}

/// A cochain `ψ` supported on words of length `≤ a` with `b*ψ = φ`, if any.
pub fn solve_coboundary<R: Coords>(
    phi: &HochschildCochain<R>,
    a: usize,
    scalars: &[R],
) -> Result<Option<HochschildCochain<R>>, HochError>
where
    R::K: Ring,
{
    if !R::K::is_field() {
        return Err(LinalgError::CoefficientNotField.into());
    }
    let mut space = CochainSpace::new(phi.cat.clone(), phi.coeffs.clone(), scalars);
    let reach = a + phi.cat.kmax.saturating_sub(1);
    if phi.max_len() > reach {
        return Ok(None);
    }
    let h = phi.degree ^ 1;
    let sources: Vec<usize> = space.sources(a).into_iter().filter(|(_, hh)| *hh == h).map(|(i, _)| i).collect();
    let d = space.differential(a);
    let mut ech = Echelon::new(true);
    for c in &sources {
        ech.insert(d.columns.get(c).cloned().unwrap_or_default())?;
    }
    let target = space.to_vec(phi);
    Ok(ech.solve(&target)?.map(|sol| {
        let v: SparseVec<R::K> = sol.into_iter().map(|(j, c)| (sources[j], c)).collect();
        space.to_cochain(&v, h)
    }))
}
