//! The curved Clifford family, a synthetic weakly unobstructed model.

use super::{lin_single, AInfCategory, Basis, Gen, Spaces, Word};
use crate::ring::Ring;
use crate::signs;

fn mask_name(mask: u32, n: usize) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..n).filter(|i| mask >> i & 1 == 1).map(|i| format!("e{}", i + 1)).collect()
}

/// Sign and scalar of `e_I · e_J = ± ∏_{i∈I∩J} u_i · e_{I△J}`.
fn clifford_product<R: Ring>(a: u32, b: u32, u: &[R]) -> R {
    // Moving each generator of J left past the larger generators of I.
    let mut swaps = 0u32;
    for j in 0..u.len() {
        if b >> j & 1 == 1 {
            swaps += (a >> (j + 1)).count_ones();
        }
    }
    let mut c = R::one().signed(swaps % 2 == 1);
    for (i, ui) in u.iter().enumerate() {
        if (a & b) >> i & 1 == 1 {
            c = c.mul(ui);
        }
    }
    c
}

/// One object `L` whose endomorphisms are the Clifford algebra on odd
/// generators `e_i` with `e_i² = u_i`, curvature `w·1`, and
/// `m₂(x, y) = (-1)^{|x|·|y|'} x·y`.
pub fn curved_clifford<R: Ring>(w: R, u: Vec<R>) -> AInfCategory<R> {
    let n = u.len();
    let dim = 1u32 << n;
    let mut homs = Spaces::new(1, 1);
    homs.set(0, 0, (0..dim).map(|m| Gen::new(mask_name(m, n), (m.count_ones() % 2) as u8)).collect());
    let mut c = AInfCategory::new(vec!["L".into()], homs, 2);
    let one = Basis::new(0, 0, 0);
    c.set_m0(0, lin_single(one, w));
    for a in 0..dim {
        for b in 0..dim {
            let (x, y) = (Basis::new(0, 0, a), Basis::new(0, 0, b));
            let sign = signs::koszul(c.homs.deg(x), c.homs.sdeg(y));
            let coeff = clifford_product(a, b, &u).signed(sign);
            c.set_m(Word::new(vec![x, y]), lin_single(Basis::new(0, 0, a ^ b), coeff));
        }
    }
    c.set_unit(0, lin_single(one, R::one()));
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty::{check_ainfty, check_unit};
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn one_generator() {
        let c = curved_clifford(r(0), vec![r(1)]);
        assert_eq!(c.homs.dim(0, 0), 2);
        let e = Basis::new(0, 0, 1);
        assert_eq!(c.m(&Word::new(vec![e, e])), Some(&lin_single(Basis::new(0, 0, 0), r(1))));
        assert!(c.m0(0).is_empty());
    }

    #[test]
    fn no_generators_is_the_ring() {
        let c = curved_clifford(r(5), vec![]);
        assert_eq!(c.homs.dim(0, 0), 1);
        assert_eq!(c.m0(0), lin_single(Basis::new(0, 0, 0), r(5)));
        assert!(check_ainfty(&c, None).passed);
        assert!(check_unit(&c, 0).passed);
    }

    #[test]
    fn anticommuting_generators() {
        let c = curved_clifford(r(0), vec![r(1), r(1)]);
        let (e1, e2) = (Basis::new(0, 0, 1), Basis::new(0, 0, 2));
        let e12 = Basis::new(0, 0, 3);
        assert_eq!(c.m(&Word::new(vec![e1, e2])), Some(&lin_single(e12, r(1))));
        assert_eq!(c.m(&Word::new(vec![e2, e1])), Some(&lin_single(e12, r(-1))));
        assert_eq!(c.homs.gen(e12).name, "e1e2");
        assert_eq!(c.homs.deg(e12), 0);
        // (e1e2)(e1e2) = -u1 u2, then the sign (-1)^{0·1}.
        assert_eq!(c.m(&Word::new(vec![e12, e12])), Some(&lin_single(Basis::new(0, 0, 0), r(-1))));
    }

    #[test]
    fn relations_hold_for_three_generators() {
        let c = curved_clifford(r(2), vec![r(1), r(-3), r(7)]);
        assert!(check_ainfty(&c, None).passed);
        assert!(check_unit(&c, 0).passed);
    }
}
