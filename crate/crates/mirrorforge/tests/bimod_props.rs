use std::sync::Arc;

use mirrorforge::ainfty::curved_clifford;
use mirrorforge::bimod::{compose, diagonal, premorphism_diff, random_premorphism, tensor, AInfBimodule, Premorphism};
use mirrorforge::ring::Ring;
use mirrorforge::Rational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn clifford_diagonal(w: i64, u: &[i64]) -> Arc<AInfBimodule<Rational>> {
    let c = Arc::new(curved_clifford(Rational::from_i64(w), u.iter().map(|&x| Rational::from_i64(x)).collect()));
    Arc::new(diagonal(c))
}

fn leibniz_residual(f: &Premorphism<Rational>, g: &Premorphism<Rational>, rmax: usize, smax: usize) -> Premorphism<Rational> {
    let fg = compose(f, g, rmax + 1, smax + 1).unwrap();
    let lhs = premorphism_diff(&fg, rmax, smax);
    let df = premorphism_diff(f, rmax + 1, smax + 1);
    let dg = premorphism_diff(g, rmax + 1, smax + 1);
    let a = compose(&df, g, rmax, smax).unwrap();
    let b = compose(f, &dg, rmax, smax).unwrap();
    let sign = Rational::one().signed(f.degree == 1);
    let rhs = a.axpy(&sign, &b).unwrap();
    lhs.axpy(&Rational::from_i64(-1), &rhs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn delta_squared_vanishes(seed in any::<u64>(), deg in 0u8..2, w in -2i64..3, u1 in -2i64..3, u2 in -2i64..3) {
        let d = clifford_diagonal(w, &[u1, u2]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_premorphism(d.clone(), d, deg, 1, 1, 0.3, &mut rng);
        let df = premorphism_diff(&f, 2, 2);
        let ddf = premorphism_diff(&df, 1, 1);
        prop_assert!(ddf.is_zero());
    }

    #[test]
    fn leibniz_holds(seed in any::<u64>(), df in 0u8..2, dg in 0u8..2, w in -2i64..3, u in -2i64..3) {
        let d = clifford_diagonal(w, &[u]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_premorphism(d.clone(), d.clone(), df, 1, 1, 0.5, &mut rng);
        let g = random_premorphism(d.clone(), d, dg, 1, 1, 0.5, &mut rng);
        prop_assert!(leibniz_residual(&f, &g, 1, 1).is_zero());
    }

    #[test]
    fn identity_composes_trivially(seed in any::<u64>(), deg in 0u8..2) {
        let d = clifford_diagonal(1, &[1]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_premorphism(d.clone(), d.clone(), deg, 2, 2, 0.5, &mut rng);
        let id = Premorphism::identity(d);
        let left = compose(&id, &f, 2, 2).unwrap();
        let right = compose(&f, &id, 2, 2).unwrap();
        prop_assert_eq!(left.components(), f.components());
        prop_assert_eq!(right.components(), f.components());
    }
}

#[test]
fn delta_squared_on_a_tensor_product() {
    let d = clifford_diagonal(0, &[1]);
    let t = Arc::new(tensor(&d, &d, 2).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = random_premorphism(t.clone(), d, 1, 1, 1, 0.2, &mut rng);
    let ddf = premorphism_diff(&premorphism_diff(&f, 2, 2), 1, 1);
    assert!(ddf.is_zero());
}

#[test]
fn linear_maps_compose_with_koszul_sign() {
    let d = clifford_diagonal(0, &[0]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = random_premorphism(d.clone(), d.clone(), 1, 0, 0, 1.0, &mut rng);
    let g = random_premorphism(d.clone(), d.clone(), 1, 0, 0, 1.0, &mut rng);
    let fg = compose(&f, &g, 0, 0).unwrap();
    for m in d.spaces.all() {
        let w = mirrorforge::bimod::BiWord::module(m);
        let mut want = mirrorforge::ainfty::Lin::new();
        for (b, c) in g.apply(&w) {
            for (b2, c2) in f.apply(&mirrorforge::bimod::BiWord::module(b)) {
                mirrorforge::ainfty::lin_add_term(&mut want, b2, &c.mul(&c2));
            }
        }
        assert_eq!(fg.apply(&w), want);
    }
}
