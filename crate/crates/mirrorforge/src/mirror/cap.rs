//! The scalar action `γ(r) ∩ ψ = r·ψ` on Hochschild chains of `MF̄_{A∞}`.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::Poly;
use crate::ainfty::{AInfCategory, Basis};
use crate::hoch::{cap, HochschildChain};
use crate::mf::{gamma, MfCategory};
use crate::report::CheckReport;
use crate::ring::Ring;

/// `count` chains, each a combination of up to three cyclic words of
/// length at most `max_len + 1` with small integer coefficients.
pub fn sample_chains<C: Ring, G: Rng>(cat: &Arc<AInfCategory<Poly<C>>>, max_len: usize, count: usize, rng: &mut G) -> Vec<HochschildChain<Poly<C>>> {
    let cyclic: Vec<Vec<Basis>> = (1..=max_len + 1)
        .flat_map(|k| cat.words(k))
        .map(|w| w.letters)
        .filter(|l| HochschildChain::<Poly<C>>::is_cyclic(l))
        .collect();
    (0..count)
        .map(|_| {
            let mut psi = HochschildChain::new(cat.clone());
            for letters in cyclic.choose_multiple(rng, 3) {
                let c: i64 = *[-2, -1, 1, 2, 3].choose(rng).expect("nonempty");
                psi.add_term(letters.clone(), Poly::from_i64(c));
            }
            psi
        })
        .collect()
}

/// `cap(γ(r), ψ) = r·ψ` for every `r` in `reps` and every sampled `ψ`.
pub fn check_cap_scalar<C: Ring>(mf: &MfCategory<C>, reps: &[Poly<C>], chains: &[HochschildChain<Poly<C>>]) -> CheckReport {
    let mut rep = CheckReport::new(format!("cap(gamma(r), psi) = r psi on {} chains", chains.len()));
    for r in reps {
        let g = match gamma(mf, &vec![r.clone(); mf.summands.len()]) {
            Ok(g) => g,
            Err(e) => {
                rep.fail(|| format!("gamma({r}): {e}"));
                continue;
            }
        };
        for psi in chains {
            match cap(&g, psi) {
                Ok(out) => {
                    let res = out.axpy(&r.neg(), psi);
                    rep.check(res.is_zero(), || format!("r = {r}, psi = {}: residual {}", psi.fmt(), res.fmt()));
                }
                Err(e) => rep.fail(|| format!("r = {r}: {e}")),
            }
        }
    }
    rep
}
