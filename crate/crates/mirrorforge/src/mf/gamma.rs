//! Length-zero cochains `γ(r) = ⊕_X r·id_X` and their checks.
//!
//! Cocycle and product identities are checked on the `R`-linear category.
//! Coboundary questions need cochains linear over the ground field only;
//! they are decided in the model `C(A_d, A_d/𝔪^{d−1})` where `A_d` is the
//! category over `R/𝔪^d` with scalars restricted to `K`.

use super::{restrict_scalars, MfCategory, MfError, Restricted};
use crate::ainfty::{lin_scale, Word};
use crate::bimod::AInfBimodule;
use crate::hoch::{cup, hochschild_diff, solve_coboundary, HochError, HochschildCochain};
use crate::laurent::LaurentPoly;
use crate::report::CheckReport;
use crate::ring::{Coords, Ring};
use std::sync::Arc;

type Poly<C> = LaurentPoly<C>;

/// The cochain with `r_η·id_X` at every object `X` of summand `η`.
pub fn gamma<C: Ring>(m: &MfCategory<C>, rs: &[Poly<C>]) -> Result<HochschildCochain<Poly<C>>, MfError> {
    let mut out = HochschildCochain::new(m.cat.clone(), m.diag.clone(), 1);
    for o in 0..m.cat.nobjects() as u32 {
        let r = &rs[m.summand_of[o as usize]];
        out.set(Word::empty(o), lin_scale(m.cat.unit(o).map_err(HochError::from)?, r));
    }
    Ok(out)
}

/// What to feed `check_gamma` for one summand.
#[derive(Debug, Clone)]
pub struct GammaInput<C> {
    pub summand: usize,
    /// Representatives of a basis of the local Jacobian ring.
    pub reps: Vec<Poly<C>>,
    /// Generators of the local Jacobian ideal.
    pub ideal: Vec<Poly<C>>,
    /// Number of local coordinates.
    pub nvars: usize,
    /// Scalars are taken modulo `𝔪^order`, coefficients modulo `𝔪^{order−1}`.
    pub order: u32,
    /// Coboundaries are sought among cochains of length `≤ window`.
    pub window: usize,
}

fn on_summand<C: Ring>(m: &MfCategory<C>, summand: usize, r: &Poly<C>) -> Result<HochschildCochain<Poly<C>>, MfError> {
    let rs: Vec<Poly<C>> = (0..m.summands.len()).map(|k| if k == summand { r.clone() } else { Poly::zero() }).collect();
    gamma(m, &rs)
}

/// A length-zero `R`-linear cochain in the restricted quotient model.
fn lift_length_zero<C: Ring>(
    model: &Restricted<C>,
    coeffs: &Arc<AInfBimodule<C>>,
    phi: &HochschildCochain<Poly<C>>,
) -> Result<HochschildCochain<C>, MfError> {
    if phi.max_len() > 0 {
        return Err(MfError::Hoch(HochError::Mismatch));
    }
    let e = model.order - 1;
    let mut out = HochschildCochain::new(model.cat.clone(), coeffs.clone(), phi.degree);
    for (w, v) in phi.components() {
        out.set(w.clone(), model.project(e, &model.lift(v)));
    }
    Ok(out)
}

/// (a) `b*γ(r) = 0`; (b) `γ(r)∪γ(r') − γ(rr')` is a coboundary; (c) `γ(j)`
/// is a coboundary for `j` in the Jacobian ideal; (d) no basis class maps
/// to a coboundary.
pub fn check_gamma<C: Coords>(m: &MfCategory<C>, input: &GammaInput<C>) -> Result<Vec<CheckReport>, MfError> {
    if input.order < 2 {
        return Err(MfError::Shape("the restricted model needs order at least 2".into()));
    }
    let name = &m.summands[input.summand];
    let lmax = input.window + m.cat.kmax;
    let mut reps = vec![Poly::one()];
    reps.extend(input.reps.iter().filter(|r| !r.is_one()).cloned());
    let gammas: Vec<_> = reps.iter().map(|r| on_summand(m, input.summand, r)).collect::<Result<_, _>>()?;
    let model = restrict_scalars(&m.cat, input.nvars, input.order);
    let coeffs = Arc::new(model.quotient(input.order - 1));
    let one = [C::one()];
    let is_coboundary = |phi: &HochschildCochain<Poly<C>>| -> Result<bool, MfError> {
        let lifted = lift_length_zero(&model, &coeffs, phi)?;
        Ok(lifted.is_zero() || solve_coboundary(&lifted, input.window, &one)?.is_some())
    };
    let quantifier = format!("mod m^{}, length <= {}", input.order - 1, input.window);

    let mut cocycle = CheckReport::new(format!("gamma cocycle on {name}"));
    for (r, g) in reps.iter().zip(&gammas) {
        let d = hochschild_diff(g, lmax)?;
        cocycle.check(d.is_zero(), || format!("b*gamma({r}) = {}", d.fmt()));
    }

    let mut ring = CheckReport::new(format!("gamma multiplicative on {name}"));
    for (i, (r, g)) in reps.iter().zip(&gammas).enumerate() {
        for (s, h) in reps.iter().zip(&gammas).skip(i) {
            let diff = cup(g, h, lmax)?.axpy(&Poly::one().neg(), &on_summand(m, input.summand, &r.mul(s))?)?;
            let ok = is_coboundary(&diff)?;
            ring.check(ok, || format!("gamma({r}) cup gamma({s}) - gamma({}) is not a coboundary {quantifier}", r.mul(s)));
        }
    }

    let mut ideal = CheckReport::new(format!("gamma kills the Jacobian ideal on {name}"));
    for j in &input.ideal {
        let ok = is_coboundary(&on_summand(m, input.summand, j)?)?;
        ideal.check(ok, || format!("gamma({j}) is not a coboundary {quantifier}"));
    }

    let mut injective = CheckReport::new(format!("gamma injective on {name}"));
    for (r, g) in reps.iter().zip(&gammas) {
        let hit = is_coboundary(g)?;
        injective.check(!hit, || format!("gamma({r}) is a coboundary {quantifier}"));
    }
    Ok(vec![cocycle, ring, ideal, injective])
}
