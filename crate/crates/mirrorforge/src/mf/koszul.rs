//! Koszul factorizations of `W − W(η)` in local coordinates `x = y − η`.

use super::{zeros, MatrixFactorization, MfError, MfMode};
use crate::ainfty::{curved_clifford, AInfCategory};
use crate::laurent::{total_degree, LaurentPoly, Mono};
use crate::ring::Ring;

/// `(η + x)^e` for any integer `e`, as a series truncated below `d`
/// when `e < 0`.
fn shifted_power<C: Ring>(i: usize, eta: &C, e: i32, d: u32) -> Result<LaurentPoly<C>, MfError> {
    let var = LaurentPoly::<C>::var(i);
    if e >= 0 {
        let base = LaurentPoly::constant(eta.clone()).add(&var);
        return Ok(base.powi(e).expect("non-negative power"));
    }
    let inv = eta.inv().ok_or_else(|| MfError::NotCritical(format!("y{} = 0 lies outside the torus", i + 1)))?;
    // η^e Σ_k binom(e, k) (x/η)^k
    let mut out = LaurentPoly::zero();
    let mut binom = C::one();
    let mut inv_pow = C::one();
    for k in 0..d as i32 {
        let term = LaurentPoly::monomial(mono(i, k), binom.mul(&inv_pow));
        out = out.add(&term);
        binom = binom.mul(&C::from_i64((e - k) as i64)).mul(&C::from_i64(k as i64 + 1).inv().expect("field"));
        inv_pow = inv_pow.mul(&inv);
    }
    let lead = inv.pow(e.unsigned_abs());
    Ok(out.scale(&lead).truncated(d))
}

fn mono(i: usize, k: i32) -> Mono {
    let mut e = vec![0; i + 1];
    e[i] = k;
    e
}

/// `W(η + x)`, exact when `W` is a polynomial and truncated below `d`
/// otherwise.
pub fn local_expansion<C: Ring>(w: &LaurentPoly<C>, eta: &[C], d: u32) -> Result<(LaurentPoly<C>, MfMode), MfError> {
    if w.arity() > eta.len() {
        return Err(MfError::NotCritical(format!("point has {} coordinates, W uses {}", eta.len(), w.arity())));
    }
    let mode = if w.has_negative_exponents() { MfMode::Adic(d) } else { MfMode::Exact };
    let mut out = LaurentPoly::zero();
    for (e, c) in w.terms() {
        let mut t = LaurentPoly::constant(c.clone());
        for (i, &a) in e.iter().enumerate() {
            t = t.mul(&shifted_power(i, &eta[i], a, d)?);
        }
        out = out.add(&t);
    }
    Ok((if let MfMode::Adic(d) = mode { out.truncated(d) } else { out.exact() }, mode))
}

/// A Koszul factorization together with the data it was built from.
#[derive(Debug, Clone)]
pub struct KoszulMf<C> {
    pub mf: MatrixFactorization<C>,
    /// `W(η)`.
    pub value: C,
    /// `W_i` with `W − W(η) = Σ x_i W_i`.
    pub factors: Vec<LaurentPoly<C>>,
}

/// `Q = Σ_i (x_i θ_i∧ + W_i ι_i)` on `Λ(θ_1, …, θ_n)`, with even
/// basis elements listed first.
pub fn koszul_mf<C: Ring>(w: &LaurentPoly<C>, eta: &[C], d_max: u32) -> Result<KoszulMf<C>, MfError> {
    let n = eta.len();
    let (local, mode) = local_expansion(w, eta, d_max)?;
    let value = local.constant_term();
    let shifted = local.sub(&LaurentPoly::constant(value.clone()));
    if let Some((e, c)) = shifted.terms().find(|(e, _)| total_degree(e) < 2) {
        return Err(MfError::NotCritical(format!("W - W(eta) has the term {c}*x^{e:?}")));
    }
    let mut factors = vec![LaurentPoly::<C>::zero(); n];
    for (e, c) in shifted.terms() {
        let i = e.iter().position(|&a| a > 0).expect("degree at least two");
        let mut rest = e.clone();
        rest[i] -= 1;
        factors[i] = factors[i].add(&LaurentPoly::monomial(rest, c.clone()));
    }
    if let MfMode::Adic(d) = mode {
        for f in &mut factors {
            *f = f.truncated(d);
        }
    }
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| (m.count_ones() % 2, *m));
    let pos = |m: u32| masks.iter().position(|x| *x == m).expect("mask");
    let mut q = zeros(masks.len(), masks.len());
    for (j, &s) in masks.iter().enumerate() {
        for i in 0..n {
            let bit = 1u32 << i;
            let negate = (s & (bit - 1)).count_ones() % 2 == 1;
            let (t, coeff) = if s & bit == 0 {
                (s | bit, LaurentPoly::var(i))
            } else {
                (s & !bit, factors[i].clone())
            };
            let coeff = if let MfMode::Adic(d) = mode { coeff.truncated(d) } else { coeff };
            let k = pos(t);
            q[k][j] = q[k][j].add(&coeff.signed(negate));
        }
    }
    let degs = masks.iter().map(|m| (m.count_ones() % 2) as u8).collect();
    let mf = MatrixFactorization::new(shifted, degs, q, mode)?;
    Ok(KoszulMf { mf, value, factors })
}

impl<C: Ring> KoszulMf<C> {
    /// The quadratic part of `W − W(η)` diagonalised, `Σ u_i x_i²`.
    ///
    /// Fails with `NotCritical` when the Hessian is degenerate.
    pub fn hessian_diagonal(&self) -> Result<Vec<C>, MfError> {
        let n = self.factors.len();
        let half = C::from_i64(2).inv().ok_or_else(|| MfError::NotCritical("2 is not invertible".into()))?;
        let mut a = vec![vec![C::zero(); n]; n];
        for (e, c) in self.mf.w.terms().filter(|(e, _)| total_degree(e) == 2) {
            let idx: Vec<usize> = e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize)).collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                a[i][i] = a[i][i].add(c);
            } else {
                a[i][j] = a[i][j].add(&c.mul(&half));
                a[j][i] = a[j][i].add(&c.mul(&half));
            }
        }
        symmetric_diagonal(a).ok_or_else(|| MfError::NotCritical("the Hessian is degenerate".into()))
    }

    /// The Clifford algebra of the Hessian, a minimal model for the
    /// endomorphisms of this factorization when the point is Morse.
    pub fn clifford_model(&self) -> Result<AInfCategory<C>, MfError> {
        Ok(curved_clifford(C::zero(), self.hessian_diagonal()?))
    }
}

/// Congruence diagonalisation of a symmetric form; `None` if it is degenerate.
fn symmetric_diagonal<C: Ring>(mut a: Vec<Vec<C>>) -> Option<Vec<C>> {
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if let Some(j) = (k + 1..n).find(|&j| a[k][k].is_zero() && !a[j][j].is_zero()) {
            a.swap(k, j);
            for row in &mut a {
                row.swap(k, j);
            }
        }
        if a[k][k].is_zero() {
            // all remaining diagonal entries vanish, so x_k ↦ x_k + x_j gives 2a_kj
            let j = (k + 1..n).find(|&j| !a[k][j].is_zero())?;
            let col: Vec<C> = (0..n).map(|i| a[i][j].clone()).collect();
            for i in 0..n {
                a[i][k] = a[i][k].add(&col[i]);
            }
            let row = a[j].clone();
            for i in 0..n {
                a[k][i] = a[k][i].add(&row[i]);
            }
        }
        let p = a[k][k].clone();
        let inv = p.inv()?;
        for i in k + 1..n {
            let f = a[i][k].mul(&inv);
            for j in k..n {
                let v = f.mul(&a[k][j]);
                a[i][j] = a[i][j].sub(&v);
            }
        }
        for j in k + 1..n {
            a[k][j] = C::zero();
        }
        out.push(p);
    }
    Some(out)
}
