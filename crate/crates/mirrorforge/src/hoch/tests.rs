use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::ainfty::{curved_clifford, lin_single, Basis};
use crate::bimod::{diagonal, premorphism_diff, Premorphism};
use crate::Rational;

fn r(n: i64) -> Rational {
    Rational::from_i64(n)
}

type Setup = (Arc<AInfCategory<Rational>>, Arc<AInfBimodule<Rational>>);

fn clifford(w: i64, u: &[i64]) -> Setup {
    let c = Arc::new(curved_clifford(r(w), u.iter().map(|&x| r(x)).collect()));
    let d = Arc::new(diagonal(c.clone()));
    (c, d)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn unit_cochain_is_closed() {
    for (w, u) in [(0, vec![1]), (2, vec![1, 3]), (0, vec![0])] {
        let (c, d) = clifford(w, &u);
        let e = unit_cochain(c, d, &r(1)).unwrap();
        assert_eq!(e.hh_degree(), 0);
        assert!(hochschild_diff(&e, 4).unwrap().is_zero());
    }
}

/// Classical `δf(a, b) = (-1)^{|f||a|} a·f(b) − f(ab) + f(a)·b` on `k[e]/e²`
/// with plain products; compared with `b*` up to the sign of each word.
#[test]
fn dual_numbers_match_classical_differential() {
    let (c, d) = clifford(0, &[0]);
    let (one, e) = (Basis::new(0, 0, 0), Basis::new(0, 0, 1));
    let product = |x: Basis, y: Basis| -> Option<Basis> {
        match (x.idx, y.idx) {
            (0, _) => Some(y),
            (_, 0) => Some(x),
            _ => None,
        }
    };
    for (src, tgt) in [(one, one), (e, one), (one, e), (e, e)] {
        let f = |x: Basis| (x == src).then_some(tgt);
        let fdeg = (src.idx ^ tgt.idx) & 1;
        let h = d.mdeg(tgt) ^ c.homs.sdeg(src);
        let mut phi = HochschildCochain::new(c.clone(), d.clone(), h);
        phi.set(Word::new(vec![src]), lin_single(tgt, r(1)));
        let got = hochschild_diff(&phi, 3).unwrap();
        for x in [one, e] {
            for y in [one, e] {
                let mut want: std::collections::BTreeMap<Basis, i64> = Default::default();
                if let Some(z) = f(y).and_then(|fy| product(x, fy)) {
                    *want.entry(z).or_default() += if fdeg & x.idx == 1 { -1 } else { 1 };
                }
                if let Some(z) = product(x, y).and_then(f) {
                    *want.entry(z).or_default() -= 1;
                }
                if let Some(z) = f(x).and_then(|fx| product(fx, y)) {
                    *want.entry(z).or_default() += 1;
                }
                want.retain(|_, v| *v != 0);
                let have = got.apply(&Word::new(vec![x, y]));
                let abs: std::collections::BTreeMap<Basis, i64> =
                    have.iter().map(|(b, c)| (*b, c.to_string().trim_start_matches('-').parse::<i64>().unwrap())).collect();
                let want_abs: std::collections::BTreeMap<Basis, i64> = want.iter().map(|(b, v)| (*b, v.abs())).collect();
                assert_eq!(abs, want_abs, "f: {src:?} -> {tgt:?} at ({x:?}, {y:?})");
            }
        }
    }
}

#[test]
fn b_star_squares_to_zero() {
    for seed in 0..6 {
        let (c, d) = clifford(seed as i64 % 3, &[1, -2]);
        let mut g = rng(seed);
        let phi = random_cochain(c, d, (seed % 2) as u8, 2, 0.4, &mut g);
        let b = hochschild_diff(&phi, 8).unwrap();
        let bb = hochschild_diff(&b, 8).unwrap();
        assert!(!b.is_zero());
        assert!(bb.is_zero(), "{}", bb.fmt());
    }
}

#[test]
fn truncation_overflow_is_reported() {
    let (c, d) = clifford(0, &[1]);
    let phi = random_cochain(c, d, 0, 3, 1.0, &mut rng(1));
    assert!(matches!(hochschild_diff(&phi, 3), Err(HochError::TruncationOverflow { needed: 4, lmax: 3 })));
}

#[test]
fn getzler_relations_hold() {
    for seed in 0..4 {
        let (c, d) = clifford(1, &[1]);
        let mut g = rng(100 + seed);
        let phis: Vec<HochschildCochain<Rational>> =
            (0..3).map(|i| random_cochain(c.clone(), d.clone(), ((seed + i) % 2) as u8, 1, 0.5, &mut g)).collect();
        for n in 1..=3 {
            let refs: Vec<&HochschildCochain<Rational>> = phis[..n].iter().collect();
            let res = getzler_residual(&refs, 12).unwrap();
            assert!(res.is_zero(), "n = {n}: {}", res.fmt());
        }
    }
}

#[test]
fn cup_with_unit_and_scalars() {
    let (c, d) = clifford(0, &[1]);
    let e = unit_cochain(c.clone(), d.clone(), &r(1)).unwrap();
    let phi = random_cochain(c.clone(), d.clone(), 1, 2, 0.5, &mut rng(5));
    let lhs = cup(&e, &phi, 6).unwrap();
    assert_eq!(lhs.components(), phi.components());
    let (k, kd) = clifford(0, &[]);
    let a = unit_cochain(k.clone(), kd.clone(), &r(3)).unwrap();
    let b = unit_cochain(k.clone(), kd.clone(), &r(-5)).unwrap();
    let ab = cup(&a, &b, 4).unwrap();
    assert_eq!(ab.components(), unit_cochain(k, kd, &r(-15)).unwrap().components());
}

#[test]
fn hh_of_the_ground_field() {
    let (k, kd) = clifford(0, &[]);
    let (rep, reps) = hh_cohomology(k, kd, 4, &[r(1)]).unwrap();
    assert_eq!(rep.dims, [1, 0]);
    assert!(rep.stable);
    assert_eq!(reps[0].len(), 1);
}

#[test]
fn hh_of_clifford_is_one_dimensional() {
    for lmax in [4, 5, 6] {
        let (c, d) = clifford(0, &[1]);
        let (rep, _) = hh_cohomology(c, d, lmax, &[r(1)]).unwrap();
        assert_eq!(rep.dims, [1, 0], "lmax = {lmax}");
        assert!(rep.stable, "{}", rep.line());
    }
}

#[test]
fn hh_of_dual_numbers_keeps_growing() {
    let dims: Vec<usize> = [4, 5, 6]
        .into_iter()
        .map(|l| {
            let (c, d) = clifford(0, &[0]);
            let (rep, _) = hh_cohomology(c, d, l, &[r(1)]).unwrap();
            assert!(!rep.stable, "{}", rep.line());
            rep.dims[0] + rep.dims[1]
        })
        .collect();
    assert!(dims.windows(2).all(|p| p[1] > p[0]), "{dims:?}");
}

#[test]
fn coboundaries_are_solved() {
    let (c, d) = clifford(0, &[1]);
    let psi = random_cochain(c.clone(), d.clone(), 0, 1, 0.7, &mut rng(9));
    let phi = hochschild_diff(&psi, 4).unwrap();
    let sol = solve_coboundary(&phi, 1, &[r(1)]).unwrap().expect("a primitive");
    let back = hochschild_diff(&sol, 4).unwrap();
    assert_eq!(back.components(), phi.components());
    let e = unit_cochain(c, d, &r(1)).unwrap();
    assert!(solve_coboundary(&e, 3, &[r(1)]).unwrap().is_none());
}

#[test]
fn cup_is_associative_up_to_coboundary() {
    let (c, d) = clifford(0, &[0]);
    let (_, reps) = hh_cohomology(c, d, 4, &[r(1)]).unwrap();
    let all: Vec<&HochschildCochain<Rational>> = reps.iter().flatten().collect();
    assert!(all.len() >= 2);
    for x in &all {
        for y in &all {
            for z in all.iter().take(2) {
                let l = cup(&cup(x, y, 12).unwrap(), z, 12).unwrap();
                let rr = cup(x, &cup(y, z, 12).unwrap(), 12).unwrap();
                let diff = l.axpy(&r(-1), &rr).unwrap();
                if diff.is_zero() {
                    continue;
                }
                let a = diff.max_len();
                assert!(solve_coboundary(&diff, a + 1, &[r(1)]).unwrap().is_some());
            }
        }
    }
}

fn random_chain(c: &Arc<AInfCategory<Rational>>, max_len: usize, g: &mut ChaCha8Rng) -> HochschildChain<Rational> {
    use rand::Rng;
    let mut out = HochschildChain::new(c.clone());
    for len in 1..=max_len {
        for w in c.words(len) {
            if HochschildChain::<Rational>::is_cyclic(&w.letters) && g.gen_bool(0.4) {
                out.add_term(w.letters.clone(), r(g.gen_range(-3..=3)));
            }
        }
    }
    out
}

#[test]
fn chain_differential_squares_to_zero() {
    for (w, u) in [(0, vec![1]), (3, vec![1, 2]), (0, vec![0])] {
        let (c, _) = clifford(w, &u);
        let psi = random_chain(&c, 3, &mut rng(11));
        let bb = chain_diff(&chain_diff(&psi));
        assert!(bb.is_zero(), "{}", bb.fmt());
    }
}

#[test]
fn cap_with_length_zero_cocycles_is_scalar() {
    let (c, d) = clifford(2, &[1, -1]);
    let psi = random_chain(&c, 3, &mut rng(12));
    for k in [1, -2, 7] {
        let g = unit_cochain(c.clone(), d.clone(), &r(k)).unwrap();
        assert_eq!(cap(&g, &psi).unwrap(), psi.scale(&r(k)));
    }
}

#[test]
fn lm1_of_unit_is_identity() {
    let (c, d) = clifford(1, &[1]);
    let e = unit_cochain(c, d.clone(), &r(1)).unwrap();
    let l = lm1(&e, d.clone(), 2, 2).unwrap();
    let id = Premorphism::identity(d);
    assert_eq!(l.degree, 0);
    assert_eq!(l.components(), id.components());
}

#[test]
fn rm1_of_scalar_is_right_multiplication() {
    let (c, d) = clifford(1, &[1]);
    let g = unit_cochain(c, d.clone(), &r(3)).unwrap();
    let rr = rm1(&g, d.clone(), 1, 1).unwrap();
    for m in d.spaces.all() {
        let got = rr.apply(&crate::bimod::BiWord::module(m));
        let want = d.left.m_lin(0, &[&lin_single(m, r(1)), &lin_single(Basis::new(0, 0, 0), r(3))]);
        let sign = r(1).signed(signs::is_odd(d.mdeg(m) ^ 1));
        assert_eq!(got, crate::ainfty::lin_scale(&want, &sign));
    }
}

#[test]
fn morita_maps_are_chain_maps() {
    for seed in 0..4 {
        let (c, d) = clifford(seed as i64 - 1, &[1, 2]);
        let mut g = rng(200 + seed);
        let phi = random_cochain(c.clone(), d.clone(), (seed % 2) as u8, 1, 0.5, &mut g);
        let bphi = hochschild_diff(&phi, 6).unwrap();
        // δ∘L¹ = −L¹∘b* and δ∘R¹ = R¹∘b*.
        for (name, f, fb, sign) in [
            ("L", lm1(&phi, d.clone(), 2, 2).unwrap(), lm1(&bphi, d.clone(), 1, 1).unwrap(), 1),
            ("R", rm1(&phi, d.clone(), 2, 2).unwrap(), rm1(&bphi, d.clone(), 1, 1).unwrap(), -1),
        ] {
            let df = premorphism_diff(&f, 1, 1);
            assert!(df.axpy(&r(sign), &fb).unwrap().is_zero(), "{name}");
        }
    }
}

/// Whether `x` is a Hochschild boundary of chains of length `≤ len`.
fn is_boundary(x: &HochschildChain<Rational>, len: usize) -> bool {
    let c = &x.cat;
    let mut keys = crate::linalg::Indexer::<Vec<Basis>>::default();
    let mut to_vec = |ch: &HochschildChain<Rational>| -> crate::linalg::SparseVec<Rational> {
        ch.terms.iter().map(|(w, v)| (keys.index(w), v.clone())).collect()
    };
    let mut ech = crate::linalg::Echelon::new(false);
    for l in 1..=len {
        for w in c.words(l) {
            if !HochschildChain::<Rational>::is_cyclic(&w.letters) {
                continue;
            }
            let mut g = HochschildChain::new(c.clone());
            g.add_term(w.letters.clone(), r(1));
            ech.insert(to_vec(&chain_diff(&g))).unwrap();
        }
    }
    ech.contains(&to_vec(x)).unwrap()
}

/// A basis of cycles among chains of length `≤ len`.
fn cycles(c: &Arc<AInfCategory<Rational>>, len: usize) -> Vec<HochschildChain<Rational>> {
    let mut gens = Vec::new();
    for l in 1..=len {
        gens.extend(c.words(l).into_iter().filter(|w| HochschildChain::<Rational>::is_cyclic(&w.letters)).map(|w| w.letters));
    }
    let mut keys = crate::linalg::Indexer::<Vec<Basis>>::default();
    let images: Vec<crate::linalg::SparseVec<Rational>> = gens
        .iter()
        .map(|w| {
            let mut g = HochschildChain::new(c.clone());
            g.add_term(w.clone(), r(1));
            chain_diff(&g).terms.iter().map(|(k, v)| (keys.index(k), v.clone())).collect()
        })
        .collect();
    crate::linalg::kernel(&images)
        .unwrap()
        .into_iter()
        .map(|rel| {
            let mut z = HochschildChain::new(c.clone());
            for (j, v) in rel {
                z.add_term(gens[j].clone(), v);
            }
            z
        })
        .collect()
}

#[test]
fn cap_module_axiom_up_to_boundary() {
    for (w, u) in [(0, vec![0]), (0, vec![1, 1])] {
        let (c, d) = clifford(w, &u);
        let (_, reps) = hh_cohomology(c.clone(), d.clone(), 3, &[r(1)]).unwrap();
        let mut g = rng(21);
        let cocycles: Vec<HochschildCochain<Rational>> = reps
            .iter()
            .flatten()
            .map(|x| {
                let t = random_cochain(c.clone(), d.clone(), x.degree ^ 1, 1, 0.5, &mut g);
                x.axpy(&r(1), &hochschild_diff(&t, 4).unwrap()).unwrap()
            })
            .collect();
        let mut nonzero = 0;
        for psi in cycles(&c, 3) {
            for x in &cocycles {
                assert!(chain_diff(&cap(x, &psi).unwrap()).is_zero());
                for y in &cocycles {
                    let lhs = cap(&cup(x, y, 12).unwrap(), &psi).unwrap();
                    let rhs = cap(x, &cap(y, &psi).unwrap()).unwrap();
                    let diff = lhs.axpy(&r(-1), &rhs);
                    nonzero += usize::from(!lhs.is_zero());
                    assert!(is_boundary(&diff, diff.max_len() + 1));
                }
            }
        }
        assert!(nonzero > 0);
    }
}
