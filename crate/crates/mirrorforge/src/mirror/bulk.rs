//! First-order bulk data `q(α; x₁,…,x_k) = ∂ₜm_k(t)|₀` of a one-parameter
//! family of A∞-structures.

use std::sync::Arc;

use super::{Mirror, MirrorError, Poly};
use crate::ainfty::{check_ainfty, deform_unchecked, lin_scale, AInfCategory, Lin, Word};
use crate::bimod::diagonal;
use crate::hoch::HochschildCochain;
use crate::report::CheckReport;
use crate::ring::Ring;

/// `m = m(0)` and `q = ∂ₜm(t)|₀`; `q` carries no units.
#[derive(Debug, Clone)]
pub struct BulkDatum<C> {
    pub base: AInfCategory<C>,
    pub q: AInfCategory<C>,
}

/// The unit coefficient of `v`, if `v` is a multiple of the unit `e`.
pub(super) fn unit_multiple<R: Ring>(v: &Lin<R>, e: &Lin<R>) -> Option<R> {
    let (pivot, inv) = e.iter().find_map(|(k, x)| x.inv().map(|i| (*k, i)))?;
    let c = v.get(&pivot).cloned().unwrap_or_else(R::zero).mul(&inv);
    (*v == lin_scale(e, &c)).then_some(c)
}

/// Residual of `Σ ± m(x⃗₁, q(x⃗₂), x⃗₃) + Σ ± q(x⃗₁, m(x⃗₂), x⃗₃)` with signs
/// `(-1)^{|x⃗₁|'}`, on every word up to `max_arity`.
pub fn check_qinfty<R: Ring>(m: &AInfCategory<R>, q: &AInfCategory<R>, max_arity: usize) -> CheckReport {
    let mut rep = CheckReport::new(format!("bulk relation up to arity {max_arity}"));
    for len in 0..=max_arity {
        for w in m.words(len) {
            let mut res = m.apply_m(&q.bar_diff(&w));
            crate::ainfty::lin_axpy(&mut res, &R::one(), &q.apply_m(&m.bar_diff(&w)));
            rep.check(res.is_empty(), || format!("{} -> {}", m.fmt_word(&w), m.fmt_lin(&res)));
        }
    }
    rep
}

/// Differentiates a family whose structure constants are polynomials in
/// one variable `t`. The family must satisfy the A∞-relations modulo `t³`.
pub fn bulk_from_family<C: Ring>(family: &AInfCategory<Poly<C>>) -> Result<BulkDatum<C>, MirrorError> {
    let multivariate = family.structure().into_iter().flat_map(|(_, v)| v.values()).any(|p| p.arity() > 1);
    if multivariate {
        return Err(MirrorError::FamilyNotAInfty("structure constants must be polynomials in t alone".into()));
    }
    let low = family.map_coeffs(|p| p.truncated(3));
    let rep = check_ainfty(&low, None);
    if !rep.passed {
        return Err(MirrorError::FamilyNotAInfty(rep.witness.unwrap_or_default()));
    }
    let base = family.map_coeffs(|p| p.constant_term());
    let mut q = family.map_coeffs(|p| p.derivative(0).constant_term());
    q.units = vec![None; q.nobjects()];
    let rel = check_qinfty(&base, &q, base.kmax + 1);
    if !rel.passed {
        return Err(MirrorError::FamilyNotAInfty(rel.witness.unwrap_or_default()));
    }
    for o in 0..base.nobjects() as u32 {
        let e = base.unit(o)?;
        if unit_multiple(&q.m0(o), e).is_none() {
            return Err(MirrorError::NotUnital(format!("q0 on {}", base.objects[o as usize])));
        }
    }
    Ok(BulkDatum { base, q })
}

/// `q` with the Maurer-Cartan elements of a mirror setup folded in.
#[derive(Debug, Clone)]
pub struct FoldedBulk<C> {
    /// On the objects of `Mirror::full`.
    pub q: Arc<AInfCategory<Poly<C>>>,
    /// `k̃s(α)` with `q₀` on `(𝕃, b)` equal to `k̃s(α)·e`.
    pub ks: Poly<C>,
}

impl<C: Ring> BulkDatum<C> {
    pub fn zero(base: AInfCategory<C>) -> Self {
        let mut q = AInfCategory::new(base.objects.clone(), base.homs.clone(), base.kmax);
        q.units = vec![None; q.nobjects()];
        BulkDatum { base, q }
    }

    pub fn fold(&self, mirror: &Mirror<C>) -> Result<FoldedBulk<C>, MirrorError> {
        let s = &mirror.setup;
        let mut assignments: Vec<(u32, Lin<Poly<C>>)> = s.branes.iter().map(|b| (b.obj, b.b0.clone())).collect();
        assignments.push((s.reference, s.b.clone()));
        let mut q = deform_unchecked(&self.q.map_coeffs(|c| Poly::constant(c.clone())), &assignments);
        q.objects = mirror.full.objects.clone();
        q.units = vec![None; q.nobjects()];
        let r = mirror.reference();
        let ks = unit_multiple(&q.m0(r), mirror.full.unit(r)?).ok_or_else(|| MirrorError::NotUnital("q0 on the reference".into()))?;
        for (i, br) in s.branes.iter().enumerate() {
            if unit_multiple(&q.m0(i as u32), mirror.full.unit(i as u32)?).is_none() {
                return Err(MirrorError::NotUnital(format!("q0 on {}", br.name)));
            }
        }
        Ok(FoldedBulk { q: Arc::new(q), ks })
    }
}

/// The cochain `(a₁,…,a_k) ↦ q(α; a₁,…,a_k)` on `𝒜_λ`.
pub fn co_cocycle<C: Ring>(mirror: &Mirror<C>, bulk: &FoldedBulk<C>) -> HochschildCochain<Poly<C>> {
    let diag = Arc::new(diagonal(mirror.source.clone()));
    let mut out = HochschildCochain::new(mirror.source.clone(), diag, 1);
    for k in 0..=bulk.q.kmax {
        for w in mirror.source.words(k) {
            if let Some(v) = bulk.q.m(&Word::with_start(w.obj, w.letters.clone())) {
                out.set(w, v.clone());
            }
        }
    }
    out
}
