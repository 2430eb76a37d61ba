use mirrorforge::coeff::Rational;
use mirrorforge::laurent::{groebner_basis_polynomial, Ideal, LaurentPoly};
use mirrorforge::Ring;
use proptest::prelude::*;

type P = LaurentPoly<Rational>;

fn coeff() -> impl Strategy<Value = Rational> {
    (-3i64..=3).prop_map(Rational::from_int)
}

fn laurent(nvars: usize) -> impl Strategy<Value = P> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, nvars), coeff()), 0..5)
        .prop_map(|terms| P::from_terms(terms))
}

fn polynomial(nvars: usize, max_deg: i32) -> impl Strategy<Value = P> {
    prop::collection::vec((prop::collection::vec(0i32..=max_deg, nvars), coeff()), 1..4).prop_map(
        move |terms| P::from_terms(terms.into_iter().filter(|(e, _)| e.iter().sum::<i32>() <= max_deg)),
    )
}

/// Exponent vectors of total degree ≤ d in n variables.
fn monomials(n: usize, d: i32) -> Vec<Vec<i32>> {
    if n == 0 {
        return vec![vec![]];
    }
    (0..=d)
        .flat_map(|a| monomials(n - 1, d - a).into_iter().map(move |mut rest| {
            rest.insert(0, a);
            rest
        }))
        .collect()
}

/// Brute-force membership: is `f` in the span of `m·g` over monomials `m`
/// with `deg(m·g) ≤ cap`?
fn in_span(f: &P, gens: &[P], n: usize, cap: i32) -> bool {
    let mut rows: Vec<P> = Vec::new();
    for g in gens {
        let dg = g.max_degree().unwrap_or(0);
        for m in monomials(n, cap - dg) {
            rows.push(g.mul_mono(&m));
        }
    }
    let basis = monomials(n, cap);
    let vec_of = |p: &P| -> Vec<Rational> { basis.iter().map(|e| p.coeff(e)).collect() };
    let mut mat: Vec<Vec<Rational>> = rows.iter().map(vec_of).collect();
    let rank_before = rank(&mut mat.clone());
    mat.push(vec_of(f));
    rank(&mut mat) == rank_before
}

fn rank(m: &mut [Vec<Rational>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].mul(&inv);
                for k in 0..cols {
                    let v = m[i][k].sub(&f.mul(&m[r][k]));
                    m[i][k] = v;
                }
            }
        }
        r += 1;
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in laurent(2), b in laurent(2), c in laurent(2)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn log_derivative_is_a_derivation(f in laurent(2), g in laurent(2), i in 0usize..2) {
        let lhs = f.mul(&g).log_derivative(i);
        let rhs = f.mul(&g.log_derivative(i)).add(&g.mul(&f.log_derivative(i)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn groebner_membership_matches_linear_algebra(
        gens in prop::collection::vec(polynomial(2, 2), 1..3),
        f in polynomial(2, 3),
        mults in prop::collection::vec(polynomial(2, 1), 2),
    ) {
        let q = groebner_basis_polynomial(&Ideal::new(2, gens.clone())).unwrap();
        prop_assert!(q.satisfies_buchberger_criterion());
        // constructed members reduce to zero
        let member = gens.iter().zip(mults.iter().cycle()).fold(P::zero(), |acc, (g, h)| acc.add(&g.mul(h)));
        prop_assert!(q.contains(&member).unwrap());
        // linear-algebra membership at a degree cap implies ideal membership
        if in_span(&f, &gens, 2, 4) {
            prop_assert!(q.contains(&f).unwrap());
        }
        // remainders are multiplicative modulo the ideal
        let nf = |p: &P| q.normal_form(p).unwrap();
        prop_assert_eq!(nf(&f.mul(&member.add(&f))), nf(&nf(&f).mul(&nf(&member.add(&f)))));
    }

    #[test]
    fn three_variable_membership(
        gens in prop::collection::vec(polynomial(3, 3), 1..3),
        h in polynomial(3, 1),
    ) {
        let q = groebner_basis_polynomial(&Ideal::new(3, gens.clone())).unwrap();
        prop_assert!(q.satisfies_buchberger_criterion());
        let member = gens[0].mul(&h);
        prop_assert!(q.contains(&member).unwrap());
    }
}
