//! The A∞-category `MF_A∞` of a direct sum of factorization categories.

use std::sync::Arc;

use super::{zeros, MatrixFactorization, MfError};
use crate::ainfty::{lin_single, AInfCategory, Basis, Gen, Lin, Spaces, Word};
use crate::bimod::{diagonal, AInfBimodule};
use crate::laurent::LaurentPoly;
use crate::ring::Ring;

/// Factorizations of one potential, typically the local one at a critical point.
#[derive(Debug, Clone)]
pub struct MfSummand<C> {
    pub name: String,
    pub objects: Vec<(String, MatrixFactorization<C>)>,
}

/// The assembled category with its summand bookkeeping.
#[derive(Debug, Clone)]
pub struct MfCategory<C> {
    pub cat: Arc<AInfCategory<LaurentPoly<C>>>,
    pub diag: Arc<AInfBimodule<LaurentPoly<C>>>,
    pub summands: Vec<String>,
    /// Summand index of each object.
    pub summand_of: Vec<usize>,
    pub factorizations: Vec<Arc<MatrixFactorization<C>>>,
}

impl<C: Ring> MfCategory<C> {
    pub fn objects_of(&self, summand: usize) -> impl Iterator<Item = u32> + '_ {
        (0..self.summand_of.len()).filter(move |&o| self.summand_of[o] == summand).map(|o| o as u32)
    }

    /// Basis element `U_ab` of `Hom(i, j) = Hom_R(E_j, E_i)`.
    pub fn unit_matrix(&self, i: u32, j: u32, a: usize, b: usize) -> Basis {
        Basis::new(i, j, (a * self.factorizations[j as usize].dim() + b) as u32)
    }

    /// `Hom(i, j)` element as a `dim(E_i) × dim(E_j)` matrix.
    pub fn to_matrix(&self, i: u32, j: u32, v: &Lin<LaurentPoly<C>>) -> Vec<Vec<LaurentPoly<C>>> {
        let cols = self.factorizations[j as usize].dim();
        let mut out = vec![vec![LaurentPoly::zero(); cols]; self.factorizations[i as usize].dim()];
        for (b, c) in v {
            debug_assert_eq!((b.src, b.tgt), (i, j));
            let (r, s) = (b.idx as usize / cols, b.idx as usize % cols);
            out[r][s] = out[r][s].add(c);
        }
        out
    }

    pub fn from_matrix(&self, i: u32, j: u32, m: &[Vec<LaurentPoly<C>>]) -> Lin<LaurentPoly<C>> {
        let mut out = Lin::new();
        for (a, row) in m.iter().enumerate() {
            for (b, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    out.insert(self.unit_matrix(i, j, a, b), x.clone());
                }
            }
        }
        out
    }
}

/// `Hom(E, F) = Hom_R(F, E)` with `m₁Φ = Q_E Φ − (-1)^{|Φ|} Φ Q_F`,
/// `m₂(Φ, Ψ) = (-1)^{|Φ|} Φ∘Ψ`, no higher products and no morphisms
/// between different summands.
pub fn mf_ainfty_category<C: Ring>(summands: &[MfSummand<C>]) -> Result<MfCategory<C>, MfError> {
    let mut names = Vec::new();
    let mut summand_of = Vec::new();
    let mut mfs: Vec<Arc<MatrixFactorization<C>>> = Vec::new();
    for (k, s) in summands.iter().enumerate() {
        if s.objects.windows(2).any(|p| p[0].1.w != p[1].1.w) {
            return Err(MfError::PotentialMismatch);
        }
        for (name, mf) in &s.objects {
            names.push(if summands.len() > 1 { format!("{}/{name}", s.name) } else { name.clone() });
            summand_of.push(k);
            mfs.push(Arc::new(mf.clone()));
        }
    }
    let n = names.len();
    let mut homs = Spaces::new(n, n);
    for i in 0..n {
        for j in (0..n).filter(|&j| summand_of[j] == summand_of[i]) {
            let (ei, ej) = (&mfs[i], &mfs[j]);
            let gens = (0..ei.dim())
                .flat_map(|a| (0..ej.dim()).map(move |b| (a, b)))
                .map(|(a, b)| Gen::new(format!("u{a}_{b}"), ei.degs[a] ^ ej.degs[b]))
                .collect();
            homs.set(i, j, gens);
        }
    }
    let mut cat = AInfCategory::new(names, homs, 2);
    let dims: Vec<usize> = mfs.iter().map(|m| m.dim()).collect();
    let one = LaurentPoly::<C>::one();
    let to_lin = |i: u32, j: u32, m: &[Vec<LaurentPoly<C>>]| -> Lin<LaurentPoly<C>> {
        let mut out = Lin::new();
        for (a, row) in m.iter().enumerate() {
            for (b, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    out.insert(Basis::new(i, j, (a * dims[j as usize] + b) as u32), x.clone());
                }
            }
        }
        out
    };
    for i in 0..n as u32 {
        let (ei, di) = (&mfs[i as usize], dims[i as usize]);
        for j in 0..n as u32 {
            let (ej, dj) = (&mfs[j as usize], dims[j as usize]);
            for x in cat.homs.basis(i, j).collect::<Vec<_>>() {
                let (a, b) = (x.idx as usize / dj, x.idx as usize % dj);
                // Q_E U_ab − (-1)^{|x|} U_ab Q_F
                let odd = cat.homs.deg(x) == 1;
                let mut d = zeros(di, dj);
                for r in 0..di {
                    d[r][b] = d[r][b].add(&ei.q[r][a]);
                }
                for s in 0..dj {
                    d[a][s] = d[a][s].add(&ej.q[b][s].signed(!odd));
                }
                cat.set_m(Word::new(vec![x]), to_lin(i, j, &d));
                for k in 0..n as u32 {
                    let dk = dims[k as usize];
                    for y in cat.homs.basis(j, k).collect::<Vec<_>>() {
                        if y.idx as usize / dk == b {
                            let out = Basis::new(i, k, (a * dk + y.idx as usize % dk) as u32);
                            cat.set_m(Word::new(vec![x, y]), lin_single(out, one.signed(odd)));
                        }
                    }
                }
            }
        }
        let e: Lin<LaurentPoly<C>> = (0..di).map(|a| (Basis::new(i, i, (a * di + a) as u32), one.clone())).collect();
        cat.set_unit(i, e);
    }
    let cat = Arc::new(cat);
    let diag = Arc::new(diagonal(cat.clone()));
    Ok(MfCategory { cat, diag, summands: summands.iter().map(|s| s.name.clone()).collect(), summand_of, factorizations: mfs })
}
