//! Relation checks, units, weak Maurer–Cartan theory and deformation.

use super::{lin_axpy, lin_scale, lin_sub, AInfCategory, AinftyError, Basis, Gen, Lin, Spaces};
use crate::report::CheckReport;
use crate::ring::Ring;

/// Evaluate `m ∘ m̂` on every composable word of length up to `max_arity`
/// (default `2·kmax − 1`, the longest word on which the relation involves
/// only stored structure maps).
pub fn check_ainfty<R: Ring>(c: &AInfCategory<R>, max_arity: Option<usize>) -> CheckReport {
    let n = max_arity.unwrap_or((2 * c.kmax).saturating_sub(1));
    let mut rep = CheckReport::new(format!("A-infinity relation up to arity {n}"));
    for len in 0..=n {
        for w in c.words(len) {
            let res = c.apply_m(&c.bar_diff(&w));
            rep.check(res.is_empty(), || format!("{} -> {}", c.fmt_word(&w), c.fmt_lin(&res)));
        }
    }
    rep
}

/// Unit axioms for the declared unit of `obj`.
pub fn check_unit<R: Ring>(c: &AInfCategory<R>, obj: u32) -> CheckReport {
    let mut rep = CheckReport::new(format!("unit of {}", c.objects[obj as usize]));
    let e = match c.unit(obj) {
        Ok(e) => e.clone(),
        Err(err) => {
            rep.check(false, || err.to_string());
            return rep;
        }
    };
    for other in 0..c.nobjects() as u32 {
        for x in c.homs.basis(obj, other) {
            let xl = super::lin_single(x, R::one());
            let got = c.m_lin(obj, &[&e, &xl]);
            rep.check(got == xl, || format!("m2(e, {}) = {}", c.name(x), c.fmt_lin(&got)));
        }
        for y in c.homs.basis(other, obj) {
            let yl = super::lin_single(y, R::one());
            let got = c.m_lin(other, &[&yl, &e]);
            let want = lin_scale(&yl, &R::one().signed(c.homs.deg(y) == 1));
            rep.check(got == want, || format!("m2({}, e) = {}", c.name(y), c.fmt_lin(&got)));
        }
    }
    // m_{k+1}(..., e, ...) = 0 for k ≠ 1.
    for k in (0..c.kmax).filter(|&k| k != 1) {
        for w in c.words(k) {
            for p in 0..=k {
                if w.gap(p) != obj {
                    continue;
                }
                let singles: Vec<Lin<R>> = w.letters.iter().map(|b| super::lin_single(*b, R::one())).collect();
                let mut args: Vec<&Lin<R>> = singles.iter().collect();
                args.insert(p, &e);
                let got = c.m_lin(w.obj, &args);
                rep.check(got.is_empty(), || {
                    format!("m{}: e inserted at {p} into {} gives {}", k + 1, c.fmt_word(&w), c.fmt_lin(&got))
                });
            }
        }
    }
    rep
}

fn check_odd_endo<R: Ring>(c: &AInfCategory<R>, obj: u32, b: &Lin<R>) -> Result<(), AinftyError> {
    let ok = b.keys().all(|x| x.src == obj && x.tgt == obj && c.homs.deg(*x) == 1);
    if ok {
        Ok(())
    } else {
        Err(AinftyError::NotDegreeOne(c.objects[obj as usize].clone()))
    }
}

/// `m(e^b) = Σ_k m_k(b, …, b)`. Exact for untruncated categories; a
/// truncated category needs an explicit order.
pub fn m_exp_b<R: Ring>(c: &AInfCategory<R>, obj: u32, b: &Lin<R>, truncation: Option<usize>) -> Result<Lin<R>, AinftyError> {
    check_odd_endo(c, obj, b)?;
    let top = match (c.truncated, truncation) {
        (true, None) => return Err(AinftyError::NonConvergent),
        (_, Some(t)) => t.min(c.kmax),
        (false, None) => c.kmax,
    };
    let mut out = Lin::new();
    for k in 0..=top {
        let args = vec![b; k];
        lin_axpy(&mut out, &R::one(), &c.m_lin(obj, &args));
    }
    Ok(out)
}

/// The potential `λ` with `m(e^b) = λ·e`, or `None` when `m(e^b)` is not
/// a multiple of the unit.
pub fn is_weak_mc<R: Ring>(c: &AInfCategory<R>, obj: u32, b: &Lin<R>) -> Result<Option<R>, AinftyError> {
    let v = m_exp_b(c, obj, b, None)?;
    let e = c.unit(obj)?;
    let (pivot, inv) = e
        .iter()
        .find_map(|(k, x)| x.inv().map(|i| (*k, i)))
        .ok_or_else(|| AinftyError::NoUnit(c.objects[obj as usize].clone()))?;
    let lambda = v.get(&pivot).cloned().unwrap_or_else(R::zero).mul(&inv);
    Ok((v == lin_scale(e, &lambda)).then_some(lambda))
}

/// The category `𝒞_λ` on objects `(A_i, b_i)`, requiring a common potential.
pub fn deform<R: Ring>(c: &AInfCategory<R>, assignments: &[(u32, Lin<R>)]) -> Result<AInfCategory<R>, AinftyError> {
    let mut potentials = Vec::new();
    for (obj, b) in assignments {
        potentials.push(is_weak_mc(c, *obj, b)?);
    }
    let first = potentials.first().cloned().flatten();
    let bad: Vec<String> = assignments
        .iter()
        .zip(&potentials)
        .enumerate()
        .filter(|(_, (_, p))| p.is_none() || **p != first)
        .map(|(i, ((obj, _), p))| match p {
            Some(l) => format!("#{i} ({}): potential {l}", c.objects[*obj as usize]),
            None => format!("#{i} ({}): not weak Maurer-Cartan", c.objects[*obj as usize]),
        })
        .collect();
    if !bad.is_empty() {
        return Err(AinftyError::PotentialMismatch(bad));
    }
    Ok(deform_unchecked(c, assignments))
}

/// Compositions of `total` into `parts` non-negative summands.
fn compositions(parts: usize, total: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(parts - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Deformed structure maps `m_k^{b_0,…,b_k}` without comparing potentials.
/// Objects may carry different curvatures; the result is still an
/// A∞-category (curvature need not be shared for the relation to hold).
pub fn deform_unchecked<R: Ring>(c: &AInfCategory<R>, assignments: &[(u32, Lin<R>)]) -> AInfCategory<R> {
    let n = assignments.len();
    let mut homs = Spaces::new(n, n);
    for (i, (a, _)) in assignments.iter().enumerate() {
        for (j, (b, _)) in assignments.iter().enumerate() {
            let gens: Vec<Gen> = c.homs.gens(*a, *b).to_vec();
            homs.set(i, j, gens);
        }
    }
    let objects = assignments
        .iter()
        .enumerate()
        .map(|(i, (a, b))| if b.is_empty() { c.objects[*a as usize].clone() } else { format!("{}_b{i}", c.objects[*a as usize]) })
        .collect();
    let mut out = AInfCategory::new(objects, homs, c.kmax);
    out.truncated = c.truncated;
    let old_obj = |i: u32| assignments[i as usize].0;
    for k in 0..=c.kmax {
        for w in out.words(k) {
            let xs: Vec<Lin<R>> = w
                .letters
                .iter()
                .map(|x| super::lin_single(Basis::new(old_obj(x.src), old_obj(x.tgt), x.idx), R::one()))
                .collect();
            let mut acc = Lin::new();
            for extra in 0..=c.kmax - k {
                for ls in compositions(k + 1, extra) {
                    let mut args: Vec<&Lin<R>> = Vec::with_capacity(k + extra);
                    for (t, l) in ls.iter().enumerate() {
                        let b = &assignments[w.gap(t) as usize].1;
                        args.extend(std::iter::repeat(b).take(*l));
                        if t < k {
                            args.push(&xs[t]);
                        }
                    }
                    lin_axpy(&mut acc, &R::one(), &c.m_lin(old_obj(w.obj), &args));
                }
            }
            let remapped: Lin<R> = acc.into_iter().map(|(b, v)| (Basis::new(w.obj, w.end(), b.idx), v)).collect();
            out.set_m(w, remapped);
        }
    }
    for (i, (a, _)) in assignments.iter().enumerate() {
        if let Some(e) = &c.units[*a as usize] {
            let e: Lin<R> = e.iter().map(|(b, v)| (Basis::new(i as u32, i as u32, b.idx), v.clone())).collect();
            out.set_unit(i as u32, e);
        }
    }
    out
}

/// Subtract `λ·e_A` from every curvature; the relations are unchanged
/// because the unit is strict.
pub fn normalize_curvature<R: Ring>(c: &AInfCategory<R>, lambda: &R) -> Result<AInfCategory<R>, AinftyError> {
    let mut out = c.clone();
    for obj in 0..c.nobjects() as u32 {
        let e = c.unit(obj)?.clone();
        let m0 = lin_sub(&c.m0(obj), &lin_scale(&e, lambda));
        out.set_m0(obj, m0);
    }
    Ok(out)
}

/// Check `(m₁)² = 0` on every generator (of a deformed category).
pub fn check_m1_squared<R: Ring>(c: &AInfCategory<R>) -> CheckReport {
    let mut rep = CheckReport::new("m1 squares to zero");
    for x in c.homs.all() {
        let xl = super::lin_single(x, R::one());
        let once = c.m_lin(x.src, &[&xl]);
        let twice = c.m_lin(x.src, &[&once]);
        rep.check(twice.is_empty(), || format!("m1(m1({})) = {}", c.name(x), c.fmt_lin(&twice)));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty::{curved_clifford, lin_single, Word};
    use crate::laurent::LaurentPoly;
    use crate::Rational;

    type P = LaurentPoly<Rational>;

    fn q(n: i64) -> P {
        P::from_i64(n)
    }

    fn x(i: usize) -> P {
        P::var(i)
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2).len(), 6);
        assert_eq!(compositions(1, 0), vec![vec![0]]);
    }

    #[test]
    fn clifford_passes_relations_and_unit() {
        let c = curved_clifford(q(3), vec![q(1), q(-2)]);
        assert!(check_ainfty(&c, None).passed);
        assert!(check_unit(&c, 0).passed);
    }

    #[test]
    fn flipped_sign_is_caught() {
        let mut c = curved_clifford(q(0), vec![q(1)]);
        let e = Basis::new(0, 0, 1);
        let one = Basis::new(0, 0, 0);
        // m2(1, e) = e; flip it.
        c.set_m(Word::new(vec![one, e]), lin_single(e, q(-1)));
        let rep = check_ainfty(&c, None);
        assert!(!rep.passed);
        assert!(rep.witness.is_some());
        assert!(!check_unit(&c, 0).passed);
    }

    #[test]
    fn missing_unit_sign_fails_unit_check() {
        let mut c = curved_clifford(q(0), vec![q(1)]);
        let e = Basis::new(0, 0, 1);
        let one = Basis::new(0, 0, 0);
        c.set_m(Word::new(vec![e, one]), lin_single(e, q(1)));
        assert!(!check_unit(&c, 0).passed);
    }

    #[test]
    fn potential_of_clifford() {
        let c = curved_clifford(P::var(2), vec![P::var(3)]);
        let e = Basis::new(0, 0, 1);
        let b = lin_single(e, x(0));
        let v = m_exp_b(&c, 0, &b, None).unwrap();
        let want = P::var(2).add(&P::var(3).mul(&x(0)).mul(&x(0)));
        assert_eq!(v, lin_single(Basis::new(0, 0, 0), want.clone()));
        assert_eq!(is_weak_mc(&c, 0, &b).unwrap(), Some(want));
        // b = 0 gives back the curvature.
        assert_eq!(m_exp_b(&c, 0, &Lin::new(), None).unwrap(), c.m0(0));
    }

    #[test]
    fn two_generator_potential() {
        let c = curved_clifford(q(0), vec![q(2), q(5)]);
        let b: Lin<P> = [(Basis::new(0, 0, 1), x(0)), (Basis::new(0, 0, 2), x(1))].into_iter().collect();
        let lam = is_weak_mc(&c, 0, &b).unwrap().unwrap();
        let want = q(2).mul(&x(0)).mul(&x(0)).add(&q(5).mul(&x(1)).mul(&x(1)));
        assert_eq!(lam, want);
    }

    #[test]
    fn non_scalar_curvature_is_not_weak_mc() {
        let mut c = curved_clifford(q(0), vec![q(1)]);
        c.set_m0(0, lin_single(Basis::new(0, 0, 1), q(1)));
        assert_eq!(is_weak_mc(&c, 0, &Lin::new()).unwrap(), None);
        let flat = curved_clifford(q(0), vec![q(1)]);
        assert_eq!(is_weak_mc(&flat, 0, &Lin::new()).unwrap(), Some(q(0)));
    }

    #[test]
    fn odd_b_required() {
        let c = curved_clifford(q(0), vec![q(1)]);
        let b = lin_single(Basis::new(0, 0, 0), q(1));
        assert!(matches!(m_exp_b(&c, 0, &b, None), Err(AinftyError::NotDegreeOne(_))));
        let mut t = c.clone();
        t.truncated = true;
        assert_eq!(m_exp_b(&t, 0, &Lin::new(), None), Err(AinftyError::NonConvergent));
    }

    #[test]
    fn deform_trivially() {
        let c = curved_clifford(q(0), vec![q(1)]);
        let d = deform(&c, &[(0, Lin::new())]).unwrap();
        assert_eq!(d.structure().len(), c.structure().len());
        for (w, v) in c.structure() {
            assert_eq!(d.m(w), Some(v));
        }
    }

    #[test]
    fn deform_requires_common_potential() {
        let c = curved_clifford(q(0), vec![q(1)]);
        let b = lin_single(Basis::new(0, 0, 1), x(0));
        let err = deform(&c, &[(0, Lin::new()), (0, b.clone())]).unwrap_err();
        assert!(matches!(err, AinftyError::PotentialMismatch(ref v) if v.len() == 1));
        // With the potential w + u x² on both objects the deformation is accepted.
        let d = deform(&c, &[(0, b.clone()), (0, b)]).unwrap();
        assert!(check_ainfty(&d, None).passed);
        assert!(check_m1_squared(&d).passed);
    }

    #[test]
    fn mixed_deformation_is_still_ainfty() {
        let c = curved_clifford(P::var(1), vec![q(1), q(1)]);
        let b: Lin<P> = [(Basis::new(0, 0, 1), x(2)), (Basis::new(0, 0, 2), x(3))].into_iter().collect();
        let d = deform_unchecked(&c, &[(0, Lin::new()), (0, b)]);
        assert!(check_ainfty(&d, None).passed);
        for o in 0..2 {
            assert!(check_unit(&d, o).passed);
        }
        let n = normalize_curvature(&d, &P::var(1)).unwrap();
        assert!(n.m0(0).is_empty());
        assert!(check_ainfty(&n, None).passed);
    }
}
