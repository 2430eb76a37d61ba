//! Length-truncated Hochschild cochains and chains of a finite
//! A∞-category, the Getzler operations, cap product and the Morita maps.
//!
//! A cochain of shifted degree `h` sends a bar word to a module element of
//! degree `Σ|x|' + h`; its Hochschild degree is `h + 1` (see [`crate::signs`]).

mod chain;
mod cohomology;
mod morita;

pub use chain::{cap, chain_diff, HochschildChain};
pub use cohomology::{hh_cohomology, solve_coboundary, CochainSpace, HHReport};
pub use morita::{lm1, rm1};

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::ainfty::{lin_axpy, lin_scale, words, AInfCategory, AinftyError, Lin, Word};
use crate::bimod::{bibar_add, AInfBimodule, BiBar, BiWord};
use crate::linalg::LinalgError;
use crate::ring::Ring;
use crate::signs;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HochError {
    #[error("result needs words of length {needed} but the window stops at {lmax}")]
    TruncationOverflow { needed: usize, lmax: usize },
    #[error("operation needs diagonal coefficients")]
    NotDiagonal,
    #[error("cochains live on different categories or coefficient bimodules")]
    Mismatch,
    #[error(transparent)]
    Ainfty(#[from] AinftyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A cochain with finitely many nonzero components `φ(x₁,…,x_k)`.
#[derive(Debug, Clone)]
pub struct HochschildCochain<R> {
    pub cat: Arc<AInfCategory<R>>,
    pub coeffs: Arc<AInfBimodule<R>>,
    /// Shifted degree `h`.
    pub degree: u8,
    comps: HashMap<Word, Lin<R>>,
}

impl<R: Ring> HochschildCochain<R> {
    pub fn new(cat: Arc<AInfCategory<R>>, coeffs: Arc<AInfBimodule<R>>, degree: u8) -> Self {
        HochschildCochain { cat, coeffs, degree: degree & 1, comps: HashMap::new() }
    }

    /// Hochschild degree `h + 1`.
    pub fn hh_degree(&self) -> u8 {
        (self.degree + 1) & 1
    }

    pub fn set(&mut self, w: Word, v: Lin<R>) {
        let v: Lin<R> = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
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

    pub fn apply_bar(&self, bar: &crate::ainfty::Bar<R>) -> Lin<R> {
        let mut out = Lin::new();
        for (w, c) in bar {
            if let Some(v) = self.get(w) {
                lin_axpy(&mut out, c, v);
            }
        }
        out
    }

    pub fn components(&self) -> Vec<(&Word, &Lin<R>)> {
        let mut v: Vec<_> = self.comps.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Longest word with a nonzero value.
    pub fn max_len(&self) -> usize {
        self.comps.keys().map(Word::len).max().unwrap_or(0)
    }

    fn compatible(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.cat, &other.cat) && Arc::ptr_eq(&self.coeffs, &other.coeffs)
    }

    /// `self + c·other`; a zero summand adopts the other's degree.
    pub fn axpy(&self, c: &R, other: &Self) -> Result<Self, HochError> {
        if !self.compatible(other) {
            return Err(HochError::Mismatch);
        }
        let mut out = self.clone();
        if self.is_zero() {
            out.degree = other.degree;
        } else if !other.is_zero() && other.degree != self.degree {
            return Err(HochError::Mismatch);
        }
        for (w, v) in &other.comps {
            let mut acc = out.apply(w);
            lin_axpy(&mut acc, c, v);
            out.set(w.clone(), acc);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::new(self.cat.clone(), self.coeffs.clone(), self.degree);
        for (w, v) in &self.comps {
            out.set(w.clone(), lin_scale(v, c));
        }
        out
    }

    /// `φ̂` on one word: `φ` applied to every block, as bimodule inputs.
    pub fn hat(&self, w: &Word) -> BiBar<R> {
        let mut out = BiBar::new();
        let n = w.len();
        let mut before = 0u8;
        for i in 0..=n {
            for j in i..=n {
                let Some(v) = self.get(&w.sub(i, j)) else { continue };
                let negate = signs::koszul(self.degree, before);
                for (b, c) in v {
                    bibar_add(&mut out, BiWord::new(w.letters[..i].to_vec(), *b, w.letters[j..].to_vec()), c.signed(negate));
                }
            }
            if i < n {
                before ^= self.cat.homs.sdeg(w.letters[i]);
            }
        }
        out
    }

    pub fn fmt(&self) -> String {
        let parts: Vec<String> = self
            .components()
            .into_iter()
            .map(|(w, v)| format!("{} -> {}", self.cat.fmt_word(w), self.coeffs.fmt_lin(v)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("; ")
        }
    }
}

/// Length-0 cochain `r·e` built from the units of `cat`, with diagonal
/// coefficients (shifted degree 1, Hochschild degree 0).
pub fn unit_cochain<R: Ring>(cat: Arc<AInfCategory<R>>, coeffs: Arc<AInfBimodule<R>>, r: &R) -> Result<HochschildCochain<R>, HochError> {
    if !coeffs.is_diagonal {
        return Err(HochError::NotDiagonal);
    }
    let mut out = HochschildCochain::new(cat.clone(), coeffs, 1);
    for o in 0..cat.nobjects() as u32 {
        out.set(Word::empty(o), lin_scale(cat.unit(o)?, r));
    }
    Ok(out)
}

fn check_window(needed: usize, lmax: usize) -> Result<(), HochError> {
    if needed > lmax {
        return Err(HochError::TruncationOverflow { needed, lmax });
    }
    Ok(())
}

/// Longest output word of `M^k(φ₁,…,φ_k)`.
fn output_reach<R: Ring>(cat: &AInfCategory<R>, phis: &[&HochschildCochain<R>]) -> usize {
    let total: usize = phis.iter().map(|p| p.max_len()).sum();
    if phis.len() == 1 {
        total + cat.kmax.saturating_sub(1)
    } else {
        total + cat.kmax.saturating_sub(phis.len())
    }
}

/// `b*φ = μ∘φ̂ − (-1)^h φ∘m̂` on all words up to the reach of `φ`.
pub fn hochschild_diff<R: Ring>(phi: &HochschildCochain<R>, lmax: usize) -> Result<HochschildCochain<R>, HochError> {
    let reach = output_reach(&phi.cat, &[phi]);
    check_window(reach, lmax)?;
    let mut out = HochschildCochain::new(phi.cat.clone(), phi.coeffs.clone(), phi.degree ^ 1);
    let sign = R::one().signed(!signs::is_odd(phi.degree));
    for len in 0..=reach {
        for w in phi.cat.words(len) {
            let mut v = phi.coeffs.apply_mu(&phi.hat(&w));
            lin_axpy(&mut v, &sign, &phi.apply_bar(&phi.cat.bar_diff(&w)));
            out.set(w, v);
        }
    }
    Ok(out)
}

/// Getzler's `M^k`: `M⁰ = 0`, `M¹ = b*`, and for `k ≥ 2` the sum of
/// `m(…, φ₁(…), …, φ_k(…), …)` with sign `Σ h_l·(Σ|x before φ_l|')`.
pub fn gerstenhaber_mk<R: Ring>(phis: &[&HochschildCochain<R>], lmax: usize) -> Result<HochschildCochain<R>, HochError> {
    let Some(first) = phis.first() else {
        return Err(HochError::Mismatch);
    };
    if phis.iter().any(|p| !p.compatible(first)) {
        return Err(HochError::Mismatch);
    }
    if phis.len() == 1 {
        return hochschild_diff(first, lmax);
    }
    if !first.coeffs.is_diagonal {
        return Err(HochError::NotDiagonal);
    }
    let cat = &first.cat;
    let reach = output_reach(cat, phis);
    check_window(reach, lmax)?;
    let degree = phis.iter().fold(1u8, |d, p| d ^ p.degree);
    let mut out = HochschildCochain::new(cat.clone(), first.coeffs.clone(), degree);
    for len in 0..=reach {
        for w in cat.words(len) {
            let mut acc = Lin::new();
            let mut args = Vec::new();
            interleave(cat, phis, &w, 0, 0, 0, &mut args, &mut acc);
            out.set(w, acc);
        }
    }
    Ok(out)
}

/// Recursively place the blocks of `phis[l..]` into `w[p..]`.
#[allow(clippy::too_many_arguments)]
fn interleave<R: Ring>(
    cat: &AInfCategory<R>,
    phis: &[&HochschildCochain<R>],
    w: &Word,
    p: usize,
    l: usize,
    sign: u8,
    args: &mut Vec<Lin<R>>,
    acc: &mut Lin<R>,
) {
    if args.len() > cat.kmax {
        return;
    }
    if p == w.len() && l == phis.len() {
        let refs: Vec<&Lin<R>> = args.iter().collect();
        let v = cat.m_lin(w.obj, &refs);
        lin_axpy(acc, &R::one().signed(signs::is_odd(sign)), &v);
        return;
    }
    if l < phis.len() {
        let before = cat.homs.sdeg_sum(&w.letters[..p]);
        for q in p..=w.len() {
            let Some(v) = phis[l].get(&w.sub(p, q)) else { continue };
            args.push(v.clone());
            interleave(cat, phis, w, q, l + 1, sign ^ signs::koszul(phis[l].degree, before) as u8, args, acc);
            args.pop();
        }
    }
    if p < w.len() {
        args.push(crate::ainfty::lin_single(w.letters[p], R::one()));
        interleave(cat, phis, w, p + 1, l, sign, args, acc);
        args.pop();
    }
}

/// Yoneda product `φ ∪ ψ = (-1)^{h_φ + 1} M²(φ, ψ)`.
pub fn cup<R: Ring>(phi: &HochschildCochain<R>, psi: &HochschildCochain<R>, lmax: usize) -> Result<HochschildCochain<R>, HochError> {
    let m2 = gerstenhaber_mk(&[phi, psi], lmax)?;
    Ok(m2.scale(&R::one().signed(!signs::is_odd(phi.degree))))
}

/// Residual of the A∞ relations for `{M^k}` on the given cochains:
/// `Σ (-1)^{Σ_{t<i} h_t} M(φ₁,…,M(φ_{i+1},…,φ_j),…,φ_n)`.
pub fn getzler_residual<R: Ring>(phis: &[&HochschildCochain<R>], lmax: usize) -> Result<HochschildCochain<R>, HochError> {
    let n = phis.len();
    let first = phis.first().ok_or(HochError::Mismatch)?;
    let mut total = HochschildCochain::new(first.cat.clone(), first.coeffs.clone(), 0);
    for i in 0..n {
        for j in i + 1..=n {
            let inner = gerstenhaber_mk(&phis[i..j], lmax)?;
            let mut outer: Vec<&HochschildCochain<R>> = phis[..i].to_vec();
            outer.push(&inner);
            outer.extend_from_slice(&phis[j..]);
            let term = gerstenhaber_mk(&outer, lmax)?;
            let sign = phis[..i].iter().fold(0u8, |s, p| s ^ p.degree);
            total = total.axpy(&R::one().signed(signs::is_odd(sign)), &term)?;
        }
    }
    Ok(total)
}

/// A cochain with small random integer values on words of length `≤ max_len`.
pub fn random_cochain<R: Ring, G: Rng>(
    cat: Arc<AInfCategory<R>>,
    coeffs: Arc<AInfBimodule<R>>,
    degree: u8,
    max_len: usize,
    density: f64,
    rng: &mut G,
) -> HochschildCochain<R> {
    let mut out = HochschildCochain::new(cat.clone(), coeffs.clone(), degree);
    for w in words_upto(&cat, max_len) {
        let wdeg = cat.homs.sdeg_sum(&w.letters);
        let mut v = Lin::new();
        for b in coeffs.spaces.basis(w.obj, w.end()) {
            if coeffs.mdeg(b) != wdeg ^ (degree & 1) || !rng.gen_bool(density) {
                continue;
            }
            let c = rng.gen_range(-3..=3);
            if c != 0 {
                v.insert(b, R::from_i64(c));
            }
        }
        out.set(w, v);
    }
    out
}

/// All words of length at most `len`.
pub fn words_upto<R: Ring>(cat: &AInfCategory<R>, len: usize) -> Vec<Word> {
    (0..=len).flat_map(|k| words(&cat.homs, k)).collect()
}

#[cfg(test)]
mod tests;
