//! The maps `L¹`, `R¹` from Hochschild cochains to bimodule premorphisms.

use std::sync::Arc;

use super::{HochError, HochschildCochain};
use crate::ainfty::{lin_axpy, lin_single, Lin, Word};
use crate::bimod::{AInfBimodule, Premorphism};
use crate::ring::Ring;
use crate::signs;

fn singles<R: Ring>(letters: &[crate::ainfty::Basis]) -> Vec<Lin<R>> {
    letters.iter().map(|b| lin_single(*b, R::one())).collect()
}

/// `L¹(φ)(a⃗, m, b⃗) = Σ (-1)^{h·|a⃗₁|'} μ(a⃗₁, φ(a⃗₂), a⃗₃, m, b⃗)`, of degree `h + 1`.
pub fn lm1<R: Ring>(phi: &HochschildCochain<R>, m: Arc<AInfBimodule<R>>, rmax: usize, smax: usize) -> Result<Premorphism<R>, HochError> {
    if !Arc::ptr_eq(&phi.cat, &m.left) {
        return Err(HochError::Mismatch);
    }
    let mut f = Premorphism::new(m.clone(), m.clone(), phi.degree ^ 1);
    for r in 0..=rmax {
        for s in 0..=smax {
            for w in m.biwords(r, s) {
                let lw = Word::with_start(w.start(), w.left.clone());
                let mv = lin_single(w.m, R::one());
                let right = singles::<R>(&w.right);
                let right: Vec<&Lin<R>> = right.iter().collect();
                let mut acc = Lin::new();
                let mut before = 0u8;
                for i in 0..=r {
                    for j in i..=r {
                        let Some(val) = phi.get(&lw.sub(i, j)) else { continue };
                        let mut left = singles::<R>(&w.left[..i]);
                        left.push(val.clone());
                        left.extend(singles::<R>(&w.left[j..]));
                        let left: Vec<&Lin<R>> = left.iter().collect();
                        let v = m.mu_lin(&left, &mv, &right);
                        lin_axpy(&mut acc, &R::one().signed(signs::koszul(phi.degree, before)), &v);
                    }
                    if i < r {
                        before ^= m.left.homs.sdeg(w.left[i]);
                    }
                }
                f.set(w, acc);
            }
        }
    }
    Ok(f)
}

/// `R¹(φ)(a⃗, m, b⃗) = Σ (-1)^{h·(|a⃗|' + |m| + 1 + |b⃗₁|')} μ(a⃗, m, b⃗₁, φ(b⃗₂), b⃗₃)`, of degree `h + 1`.
pub fn rm1<R: Ring>(phi: &HochschildCochain<R>, m: Arc<AInfBimodule<R>>, rmax: usize, smax: usize) -> Result<Premorphism<R>, HochError> {
    if !Arc::ptr_eq(&phi.cat, &m.right) {
        return Err(HochError::Mismatch);
    }
    let mut f = Premorphism::new(m.clone(), m.clone(), phi.degree ^ 1);
    for r in 0..=rmax {
        for s in 0..=smax {
            for w in m.biwords(r, s) {
                let rw = Word::with_start(w.m.tgt, w.right.clone());
                let mv = lin_single(w.m, R::one());
                let left = singles::<R>(&w.left);
                let left: Vec<&Lin<R>> = left.iter().collect();
                let mut acc = Lin::new();
                let mut before = m.left.homs.sdeg_sum(&w.left) ^ m.mdeg(w.m) ^ 1;
                for i in 0..=s {
                    for j in i..=s {
                        let Some(val) = phi.get(&rw.sub(i, j)) else { continue };
                        let mut right = singles::<R>(&w.right[..i]);
                        right.push(val.clone());
                        right.extend(singles::<R>(&w.right[j..]));
                        let right: Vec<&Lin<R>> = right.iter().collect();
                        let v = m.mu_lin(&left, &mv, &right);
                        lin_axpy(&mut acc, &R::one().signed(signs::koszul(phi.degree, before)), &v);
                    }
                    if i < s {
                        before ^= m.right.homs.sdeg(w.right[i]);
                    }
                }
                f.set(w, acc);
            }
        }
    }
    Ok(f)
}
