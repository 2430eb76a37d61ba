//! Hochschild chains `a₀ ⊗ a₁ ⊗ ⋯ ⊗ a_n`, their differential and the cap
//! product with cochains.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{HochError, HochschildCochain};
use crate::ainfty::{lin_single, AInfCategory, Basis, Lin};
use crate::ring::Ring;
use crate::signs;

/// A finite sum of cyclically composable tensors; `a₀` comes first.
#[derive(Debug, Clone)]
pub struct HochschildChain<R> {
    pub cat: Arc<AInfCategory<R>>,
    pub terms: BTreeMap<Vec<Basis>, R>,
}

impl<R: Ring> PartialEq for HochschildChain<R> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.cat, &other.cat) && self.terms == other.terms
    }
}

impl<R: Ring> HochschildChain<R> {
    pub fn new(cat: Arc<AInfCategory<R>>) -> Self {
        HochschildChain { cat, terms: BTreeMap::new() }
    }

    pub fn is_cyclic(letters: &[Basis]) -> bool {
        match (letters.first(), letters.last()) {
            (Some(a), Some(z)) => letters.windows(2).all(|p| p[0].tgt == p[1].src) && z.tgt == a.src,
            _ => false,
        }
    }

    pub fn add_term(&mut self, letters: Vec<Basis>, c: R) {
        debug_assert!(Self::is_cyclic(&letters));
        if c.is_zero() {
            return;
        }
        let v = match self.terms.get(&letters) {
            Some(old) => old.add(&c),
            None => c,
        };
        if v.is_zero() {
            self.terms.remove(&letters);
        } else {
            self.terms.insert(letters, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn axpy(&self, c: &R, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, x) in &other.terms {
            out.add_term(w.clone(), c.mul(x));
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.cat.clone()).axpy(c, self)
    }

    pub fn fmt(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{c}*{}", w.iter().map(|b| self.cat.name(*b)).collect::<Vec<_>>().join("⊗")))
            .collect();
        parts.join(" + ")
    }
}

fn sdeg_sum<R: Ring>(cat: &AInfCategory<R>, letters: &[Basis]) -> u8 {
    cat.homs.sdeg_sum(letters)
}

/// Add `c·m(args) ⊗ tail` to `out`.
fn push_wrapped<R: Ring>(out: &mut HochschildChain<R>, cat: &AInfCategory<R>, obj: u32, args: &[Lin<R>], tail: &[Basis], c: &R) {
    let refs: Vec<&Lin<R>> = args.iter().collect();
    for (b, x) in cat.m_lin(obj, &refs) {
        let mut letters = vec![b];
        letters.extend_from_slice(tail);
        out.add_term(letters, x.mul(c));
    }
}

fn letters_as_lins<R: Ring>(letters: &[Basis]) -> Vec<Lin<R>> {
    letters.iter().map(|b| lin_single(*b, R::one())).collect()
}

/// The cyclic bar differential: wrapped terms
/// `(-1)^{|a_{l+1..n}|'·|a_{0..l}|'} m(a_{l+1},…,a_n,a₀,…,a_k) ⊗ a_{k+1} ⊗ ⋯ ⊗ a_l`
/// plus inner terms `(-1)^{|a_{0..i}|'} a₀ ⊗ ⋯ ⊗ m(a_{i+1},…,a_j) ⊗ ⋯`.
pub fn chain_diff<R: Ring>(psi: &HochschildChain<R>) -> HochschildChain<R> {
    let cat = &*psi.cat;
    let mut out = HochschildChain::new(psi.cat.clone());
    for (a, c) in &psi.terms {
        let n = a.len() - 1;
        for l in 0..=n {
            let sign = signs::koszul(sdeg_sum(cat, &a[l + 1..]), sdeg_sum(cat, &a[..=l]));
            for k in 0..=l {
                if n - l + 1 + k > cat.kmax {
                    break;
                }
                let mut args = letters_as_lins::<R>(&a[l + 1..]);
                args.extend(letters_as_lins::<R>(&a[..=k]));
                push_wrapped(&mut out, cat, a[l].tgt, &args, &a[k + 1..=l], &c.signed(sign));
            }
        }
        for i in 0..=n {
            let sign = signs::is_odd(sdeg_sum(cat, &a[..=i]));
            for j in i..=n.min(i + cat.kmax) {
                let obj = a[i].tgt;
                let refs = letters_as_lins::<R>(&a[i + 1..=j]);
                let refs: Vec<&Lin<R>> = refs.iter().collect();
                for (b, x) in cat.m_lin(obj, &refs) {
                    let mut letters = a[..=i].to_vec();
                    letters.push(b);
                    letters.extend_from_slice(&a[j + 1..]);
                    out.add_term(letters, x.mul(c).signed(sign));
                }
            }
        }
    }
    out
}

/// `φ ∩ (a₀ ⊗ ⋯ ⊗ a_n)`: the sum over `0 ≤ k ≤ l ≤ i ≤ j ≤ n` of
/// `(-1)^⋆ m(a_{l+1},…,a_i, φ(a_{i+1},…,a_j), a_{j+1},…,a_n, a₀, a₁,…,a_k) ⊗ a_{k+1} ⊗ ⋯ ⊗ a_l`
/// with `⋆ = h·|a_{0..i}|' + (|a_{l+1..i}|' + |φ(…)|' + |a_{j+1..n}|')·|a_{0..l}|'`.
pub fn cap<R: Ring>(phi: &HochschildCochain<R>, psi: &HochschildChain<R>) -> Result<HochschildChain<R>, HochError> {
    if !Arc::ptr_eq(&phi.cat, &psi.cat) {
        return Err(HochError::Mismatch);
    }
    if !phi.coeffs.is_diagonal {
        return Err(HochError::NotDiagonal);
    }
    let cat = &*psi.cat;
    let h = phi.degree;
    let mut out = HochschildChain::new(psi.cat.clone());
    for (a, c) in &psi.terms {
        let n = a.len() - 1;
        for l in 0..=n {
            let head = sdeg_sum(cat, &a[..=l]);
            for i in l..=n {
                for j in i..=n {
                    let inner = crate::ainfty::Word::with_start(a[i].tgt, a[i + 1..=j].to_vec());
                    let Some(val) = phi.get(&inner) else { continue };
                    let out_deg = sdeg_sum(cat, &a[i + 1..=j]) ^ h;
                    let moved = sdeg_sum(cat, &a[l + 1..=i]) ^ out_deg ^ sdeg_sum(cat, &a[j + 1..]);
                    let star = signs::koszul(h, sdeg_sum(cat, &a[..=i])) ^ signs::koszul(moved, head);
                    for k in 0..=l {
                        let mut args = letters_as_lins::<R>(&a[l + 1..=i]);
                        args.push(val.clone());
                        args.extend(letters_as_lins::<R>(&a[j + 1..]));
                        args.extend(letters_as_lins::<R>(&a[..=k]));
                        if args.len() > cat.kmax {
                            continue;
                        }
                        let start = a[l].tgt;
                        push_wrapped(&mut out, cat, start, &args, &a[k + 1..=l], &c.signed(star));
                    }
                }
            }
        }
    }
    Ok(out)
}
