//! Length-filtered tensor products of bimodules.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{AInfBimodule, BiWord, BimodError, Filtration, Premorphism, TensorGen};
use crate::ainfty::{lin_add_term, words_from, Basis, Gen, Lin, Spaces, Word};
use crate::ring::Ring;
use crate::signs;

struct Indexed {
    gens: Vec<Vec<Vec<Gen>>>,
    index: HashMap<TensorGen, Basis>,
    pieces: BTreeMap<Basis, TensorGen>,
}

fn enumerate<R: Ring>(m: &AInfBimodule<R>, n: &AInfBimodule<R>, bound: usize) -> Indexed {
    let (rows, cols) = (m.spaces.rows(), n.spaces.cols());
    let mid = &m.right.homs;
    let mut out = Indexed { gens: vec![vec![Vec::new(); cols]; rows], index: HashMap::new(), pieces: BTreeMap::new() };
    for a in m.spaces.all() {
        for k in 0..=bound {
            for w in words_from(mid, a.tgt, k) {
                for b in n.spaces.all().into_iter().filter(|b| b.src == w.end()) {
                    let deg = m.mdeg(a) ^ mid.sdeg_sum(&w.letters) ^ n.mdeg(b);
                    let mut parts = vec![m.mname(a)];
                    parts.extend(w.letters.iter().map(|d| m.right.name(*d)));
                    parts.push(n.mname(b));
                    let cell = &mut out.gens[a.src as usize][b.tgt as usize];
                    let basis = Basis::new(a.src, b.tgt, cell.len() as u32);
                    cell.push(Gen::new(parts.join("⊗"), deg));
                    let t = TensorGen { m: a, bar: w.letters.clone(), n: b };
                    out.index.insert(t.clone(), basis);
                    out.pieces.insert(basis, t);
                }
            }
        }
    }
    out
}

/// `M ⊗_𝒟 N` with bar words of length at most `bound`. Terms that would
/// exceed the bound (curvature insertions at the top) are dropped and the
/// resulting [`Filtration`] records where the relation stays exact.
pub fn tensor<R: Ring>(m: &AInfBimodule<R>, n: &AInfBimodule<R>, bound: usize) -> Result<AInfBimodule<R>, BimodError> {
    if !Arc::ptr_eq(&m.right, &n.left) {
        return Err(BimodError::Mismatch("the middle categories differ".into()));
    }
    let ix = enumerate(m, n, bound);
    let mut spaces = Spaces::new(m.spaces.rows(), n.spaces.cols());
    for (x, row) in ix.gens.iter().enumerate() {
        for (z, cell) in row.iter().enumerate() {
            spaces.set(x, z, cell.clone());
        }
    }
    let mid = m.right.clone();
    let mut out = AInfBimodule::new(m.left.clone(), n.right.clone(), spaces);
    out.truncated = m.truncated || n.truncated;

    let mut by_m: HashMap<Basis, Vec<(&BiWord, &Lin<R>)>> = HashMap::new();
    for (w, v) in m.structure() {
        by_m.entry(w.m).or_default().push((w, v));
    }
    let mut by_n: HashMap<Basis, Vec<(&BiWord, &Lin<R>)>> = HashMap::new();
    for (w, v) in n.structure() {
        by_n.entry(w.m).or_default().push((w, v));
    }

    let mut acc: BTreeMap<BiWord, Lin<R>> = BTreeMap::new();
    let mut emit = |input: BiWord, t: TensorGen, c: R| {
        if let Some(b) = ix.index.get(&t) {
            lin_add_term(acc.entry(input).or_default(), *b, &c);
        }
    };
    for (g, t) in &ix.pieces {
        let k = t.bar.len();
        // μ_M(c⃗, m, d₁..d_i) ⊗ d_{i+1}.. ⊗ n
        for (w, v) in by_m.get(&t.m).into_iter().flatten() {
            if w.s() > k || w.right[..] != t.bar[..w.s()] {
                continue;
            }
            for (b, c) in v.iter() {
                let nt = TensorGen { m: *b, bar: t.bar[w.s()..].to_vec(), n: t.n };
                emit(BiWord::new(w.left.clone(), *g, Vec::new()), nt, c.clone());
            }
        }
        // m ⊗ d₁..m^D(..)..d_k ⊗ n
        let bw = Word::with_start(t.m.tgt, t.bar.clone());
        let mut sign = m.mdeg(t.m);
        for l in 0..=k {
            for j in 0..=mid.kmax.min(k - l) {
                let Some(v) = mid.m(&bw.sub(l, l + j)) else { continue };
                for (b, c) in v {
                    let mut bar = t.bar[..l].to_vec();
                    bar.push(*b);
                    bar.extend_from_slice(&t.bar[l + j..]);
                    let nt = TensorGen { m: t.m, bar, n: t.n };
                    emit(BiWord::module(*g), nt, c.signed(signs::is_odd(sign)));
                }
            }
            if l < k {
                sign ^= mid.homs.sdeg(t.bar[l]);
            }
        }
        // m ⊗ d₁..d_j ⊗ μ_N(d_{j+1}.., n, e⃗)
        for (w, v) in by_n.get(&t.n).into_iter().flatten() {
            let r = w.r();
            if r > k || w.left[..] != t.bar[k - r..] {
                continue;
            }
            let sign = m.mdeg(t.m) ^ mid.homs.sdeg_sum(&t.bar[..k - r]);
            for (b, c) in v.iter() {
                let nt = TensorGen { m: t.m, bar: t.bar[..k - r].to_vec(), n: *b };
                emit(BiWord::new(Vec::new(), *g, w.right.clone()), nt, c.signed(signs::is_odd(sign)));
            }
        }
    }
    for (w, v) in acc {
        out.set_mu(w, v);
    }
    out.filtration = Some(Filtration { bound, pieces: ix.pieces, curved: curved_anywhere(&mid) });
    Ok(out)
}

fn curved_anywhere<R: Ring>(c: &crate::ainfty::AInfCategory<R>) -> bool {
    (0..c.nobjects() as u32).any(|o| !c.m0(o).is_empty())
}

/// The map `𝒞_Δ ⊗_𝒞 N → N`, `(c⃗, m ⊗ d⃗ ⊗ n, e⃗) ↦ μ_N(c⃗, m, d⃗, n, e⃗)`,
/// an odd premorphism, materialized for `r ≤ rmax`, `s ≤ smax`.
pub fn unit_insertion<R: Ring>(
    tensor: Arc<AInfBimodule<R>>,
    n: Arc<AInfBimodule<R>>,
    rmax: usize,
    smax: usize,
) -> Result<Premorphism<R>, BimodError> {
    let Some(filt) = tensor.filtration.clone() else {
        return Err(BimodError::Mismatch("source is not a tensor product".into()));
    };
    if !Arc::ptr_eq(&tensor.right, &n.right) {
        return Err(BimodError::Mismatch("right categories differ".into()));
    }
    let mut f = Premorphism::new(tensor.clone(), n.clone(), 1);
    for r in 0..=rmax {
        for s in 0..=smax {
            for w in tensor.biwords(r, s) {
                let t = &filt.pieces[&w.m];
                let mut left = w.left.clone();
                left.push(t.m);
                left.extend_from_slice(&t.bar);
                let input = BiWord::new(left, t.n, w.right.clone());
                if let Some(v) = n.mu(&input) {
                    f.set(w, v.clone());
                }
            }
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty::curved_clifford;
    use crate::bimod::{check_bimodule, check_premorphism_closed, diagonal, h0_is_quasi_iso};
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn bar_construction_squares_to_zero() {
        let c = Arc::new(curved_clifford(r(0), vec![r(1)]));
        let d = diagonal(c);
        let t = tensor(&d, &d, 2).unwrap();
        assert_eq!(t.spaces.dim(0, 0), 2 * 2 * (1 + 2 + 4));
        assert!(check_bimodule(&t, Some(3)).passed);
        for w in t.biwords(1, 1) {
            assert!(t.mu(&w).is_none());
        }
    }

    #[test]
    fn bar_differential_by_hand() {
        // k[e]/e², length one: d(1 ⊗ e ⊗ 1) = m2(1, e) ⊗ 1 − 1 ⊗ m2(e, 1)
        // with the sign (-1)^{|1|'} = -1 on the second term.
        let c = Arc::new(curved_clifford(r(0), vec![r(0)]));
        let d = diagonal(c);
        let t = tensor(&d, &d, 1).unwrap();
        let f = t.filtration.as_ref().unwrap();
        let (one, e) = (Basis::new(0, 0, 0), Basis::new(0, 0, 1));
        let find = |m, bar: Vec<Basis>, n| *f.pieces.iter().find(|(_, t)| **t == TensorGen { m, bar: bar.clone(), n }).unwrap().0;
        let g = find(one, vec![e], one);
        let got = t.mu(&BiWord::module(g)).cloned().unwrap_or_default();
        // m2(1, e) = (-1)^{|1||e|'} e = e; m2(e, 1) = (-1)^{|e||1|'} e = -e.
        let mut want = Lin::new();
        lin_add_term(&mut want, find(e, vec![], one), &r(1));
        lin_add_term(&mut want, find(one, vec![], e), &r(1));
        assert_eq!(got, want);
    }

    #[test]
    fn zero_bimodule_gives_zero() {
        let c = Arc::new(curved_clifford(r(0), vec![r(1)]));
        let d = diagonal(c.clone());
        let z = AInfBimodule::zero(c.clone(), c);
        assert_eq!(tensor(&d, &z, 3).unwrap().spaces.total_dim(), 0);
        assert_eq!(tensor(&z, &d, 3).unwrap().spaces.total_dim(), 0);
    }

    #[test]
    fn curved_tensor_is_exact_below_the_top() {
        let c = Arc::new(curved_clifford(r(2), vec![r(1)]));
        let d = diagonal(c);
        let t = tensor(&d, &d, 3).unwrap();
        assert!(t.filtration.as_ref().unwrap().curved);
        assert!(check_bimodule(&t, Some(3)).passed);
    }

    #[test]
    fn unit_insertion_is_a_quasi_iso() {
        for u in [0, 1] {
            let c = Arc::new(curved_clifford(r(0), vec![r(u)]));
            let d = Arc::new(diagonal(c));
            let t = Arc::new(tensor(&d, &d, 3).unwrap());
            let f = unit_insertion(t, d, 2, 2).unwrap();
            assert!(check_premorphism_closed(&f, 2, 2).passed);
            assert!(h0_is_quasi_iso(&f).unwrap());
        }
    }
}
