//! The localized mirror functor from a weakly unobstructed category to
//! matrix factorizations, bulk data from one-parameter families, and the
//! homotopy `𝒢 − ℱ = δξ` between the two bimodule endomorphisms.
//!
//! Every category here is synthetic: it satisfies exactly the axioms the
//! argument uses (weak unobstructedness, strict units, the bulk relation,
//! unit-valued `q₀` and `m₀`) and nothing geometric.

mod bulk;
mod cap;
mod json;
mod theorem;

pub use bulk::{bulk_from_family, check_qinfty, co_cocycle, BulkDatum, FoldedBulk};
pub use cap::{check_cap_scalar, sample_chains};
pub use json::{BraneJson, SetupJson};
pub use theorem::{build_fg_xi, check_main_theorem, FgXi, TheoremReport};

use std::sync::Arc;

use thiserror::Error;

use crate::ainfty::{
    check_functor, deform_unchecked, is_weak_mc, lin_add_term, lin_single, AInfCategory, AInfFunctor, AinftyError, Basis, Lin,
};
use crate::bimod::BimodError;
use crate::hoch::HochError;
use crate::laurent::LaurentPoly;
use crate::mf::{mf_ainfty_category, validate_mf, MatrixFactorization, MfCategory, MfError, MfMode, MfSummand};
use crate::report::CheckReport;
use crate::ring::Ring;

type Poly<C> = LaurentPoly<C>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MirrorError {
    #[error("not a weak Maurer-Cartan element on {0}")]
    McInvalid(String),
    #[error("branes disagree on the potential: {0:?}")]
    PotentialMismatch(Vec<String>),
    #[error("family is not A-infinity: {0}")]
    FamilyNotAInfty(String),
    #[error("{0} is not a multiple of the unit")]
    NotUnital(String),
    #[error("malformed setup: {0}")]
    Setup(String),
    #[error(transparent)]
    Ainfty(#[from] AinftyError),
    #[error(transparent)]
    Bimod(#[from] BimodError),
    #[error(transparent)]
    Hoch(#[from] HochError),
    #[error(transparent)]
    Mf(#[from] MfError),
}

/// An object `L` of the source category with its Maurer-Cartan element.
#[derive(Debug, Clone)]
pub struct Brane<C> {
    pub name: String,
    pub obj: u32,
    pub b0: Lin<Poly<C>>,
}

/// A finite category over the coefficient field, a reference object
/// `(𝕃, b = Σ xᵢXᵢ)` with formal `xᵢ`, and branes of a common potential.
#[derive(Debug, Clone)]
pub struct MirrorSetup<C> {
    pub category: AInfCategory<C>,
    pub vars: Vec<String>,
    pub reference: u32,
    pub b: Lin<Poly<C>>,
    pub branes: Vec<Brane<C>>,
}

impl<C: Ring> MirrorSetup<C> {
    /// Curved Clifford algebra on one object with `b = Σ xᵢeᵢ` and the
    /// brane `(𝕃, 0)`.
    pub fn clifford(w: C, u: Vec<C>) -> Self {
        let n = u.len();
        let category = crate::ainfty::curved_clifford(w, u);
        let b = (0..n).map(|i| (Basis::new(0, 0, 1 << i), Poly::var(i))).collect();
        MirrorSetup {
            category,
            vars: (1..=n).map(|i| format!("x{i}")).collect(),
            reference: 0,
            b,
            branes: vec![Brane { name: "L".into(), obj: 0, b0: Lin::new() }],
        }
    }

    /// `b₀ = Σ cᵢeᵢ` for a constant vector `c` on the Clifford object.
    pub fn clifford_brane(name: &str, c: &[C]) -> Brane<C> {
        let b0 = c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (Basis::new(0, 0, 1 << i), Poly::constant(x.clone())))
            .collect();
        Brane { name: name.into(), obj: 0, b0 }
    }
}

/// The deformed category, its potential and the image of the functor.
#[derive(Debug, Clone)]
pub struct Mirror<C> {
    pub setup: MirrorSetup<C>,
    /// Branes first, then `(𝕃, b)`; curvature shifted by `−λ·e`.
    pub full: Arc<AInfCategory<Poly<C>>>,
    /// `𝒜_λ`: the branes alone, uncurved.
    pub source: Arc<AInfCategory<Poly<C>>>,
    pub w: Poly<C>,
    pub lambda: Poly<C>,
    pub mf: MfCategory<C>,
    pub functor: AInfFunctor<Poly<C>>,
}

impl<C: Ring> Mirror<C> {
    pub fn build(setup: MirrorSetup<C>) -> Result<Self, MirrorError> {
        let a = setup.category.map_coeffs(|c| Poly::constant(c.clone()));
        let ref_name = a.objects.get(setup.reference as usize).cloned().ok_or_else(|| MirrorError::Setup("no reference object".into()))?;
        let w = is_weak_mc(&a, setup.reference, &setup.b)?.ok_or_else(|| MirrorError::McInvalid(ref_name.clone()))?;
        if setup.branes.is_empty() {
            return Err(MirrorError::Setup("no branes".into()));
        }
        let mut potentials = Vec::new();
        for br in &setup.branes {
            potentials.push(is_weak_mc(&a, br.obj, &br.b0)?.ok_or_else(|| MirrorError::McInvalid(br.name.clone()))?);
        }
        let lambda = potentials[0].clone();
        if potentials.iter().any(|p| *p != lambda) {
            let listed = setup.branes.iter().zip(&potentials).map(|(b, p)| format!("{}: {p}", b.name)).collect();
            return Err(MirrorError::PotentialMismatch(listed));
        }
        let mut assignments: Vec<(u32, Lin<Poly<C>>)> = setup.branes.iter().map(|b| (b.obj, b.b0.clone())).collect();
        assignments.push((setup.reference, setup.b.clone()));
        let mut full = crate::ainfty::normalize_curvature(&deform_unchecked(&a, &assignments), &lambda)?;
        full.objects = setup.branes.iter().map(|b| b.name.clone()).chain([format!("{ref_name}_b")]).collect();
        let nb = setup.branes.len();
        let keep: Vec<(u32, Lin<Poly<C>>)> = (0..nb as u32).map(|i| (i, Lin::new())).collect();
        let mut source = deform_unchecked(&full, &keep);
        source.objects = full.objects[..nb].to_vec();
        let refo = nb as u32;
        let shifted = w.sub(&lambda);
        let mut objects = Vec::new();
        for (i, br) in setup.branes.iter().enumerate() {
            let gens: Vec<Basis> = full.homs.basis(i as u32, refo).collect();
            let degs = gens.iter().map(|g| full.homs.deg(*g)).collect();
            let mut q = vec![vec![Poly::zero(); gens.len()]; gens.len()];
            for (c, g) in gens.iter().enumerate() {
                for (a, x) in full.m_lin(i as u32, &[&lin_single(*g, Poly::one())]) {
                    q[a.idx as usize][c] = x.neg();
                }
            }
            objects.push((format!("LM({})", br.name), MatrixFactorization::new(shifted.clone(), degs, q, MfMode::Exact)?));
        }
        let mf = mf_ainfty_category(&[MfSummand { name: "lambda".into(), objects }])?;
        let mut out = Mirror {
            setup,
            full: Arc::new(full),
            source: Arc::new(source),
            w,
            lambda,
            mf,
            functor: AInfFunctor::new((0..nb as u32).collect()),
        };
        out.functor = out.lm_functor(&out.full);
        Ok(out)
    }

    pub fn reference(&self) -> u32 {
        self.setup.branes.len() as u32
    }

    /// The map `• ↦ f(•)` from `Hom(L_j, 𝕃)` to `Hom(L_i, 𝕃)`, as a
    /// morphism `LM(L_i) → LM(L_j)`.
    pub fn as_morphism(&self, i: u32, j: u32, f: impl Fn(Basis) -> Lin<Poly<C>>) -> Lin<Poly<C>> {
        let mut out = Lin::new();
        for c in self.full.homs.basis(j, self.reference()) {
            for (a, x) in f(c) {
                debug_assert_eq!((a.src, a.tgt), (i, self.reference()));
                lin_add_term(&mut out, self.mf.unit_matrix(i, j, a.idx as usize, c.idx as usize), &x);
            }
        }
        out
    }

    /// `(x₁,…,x_k) ↦ op(x₁,…,x_k, •)` for the operations of `ops`, which
    /// share the objects of `full`.
    pub fn lm_functor(&self, ops: &AInfCategory<Poly<C>>) -> AInfFunctor<Poly<C>> {
        let mut f = AInfFunctor::new((0..self.source.nobjects() as u32).collect());
        for k in 1..ops.kmax {
            for w in self.source.words(k) {
                let args: Vec<Lin<Poly<C>>> = w.letters.iter().map(|b| lin_single(*b, Poly::one())).collect();
                let v = self.as_morphism(w.obj, w.end(), |c| {
                    let bullet = lin_single(c, Poly::one());
                    let mut refs: Vec<&Lin<Poly<C>>> = args.iter().collect();
                    refs.push(&bullet);
                    ops.m_lin(w.obj, &refs)
                });
                if !v.is_empty() {
                    f.set(w, v);
                }
            }
        }
        f
    }

    pub fn lm_object(&self, brane: usize) -> &MatrixFactorization<C> {
        &self.mf.factorizations[brane]
    }

    /// `Q² = (W − λ)·Id` on every image object.
    pub fn check_objects(&self) -> CheckReport {
        if self.w == self.lambda {
            let mut rep = CheckReport::new("(m1^{b0,b})^2 = (W - lambda) Id: skipped, W - lambda = 0");
            rep.witness = Some("degenerate potential".into());
            return rep;
        }
        let mut rep = CheckReport::new(format!("(m1^{{b0,b}})^2 = (W - lambda) Id with W - lambda = {}", self.w.sub(&self.lambda)));
        for (br, mf) in self.setup.branes.iter().zip(&self.mf.factorizations) {
            let v = validate_mf(mf);
            rep.check(v.passed, || format!("{}: {}", br.name, v.line()));
        }
        rep
    }

    pub fn check_functor(&self, max_arity: usize) -> CheckReport {
        let mut rep = check_functor(&self.functor, &self.source, &self.mf.cat, max_arity);
        rep.name = format!("localized mirror functor: {}", rep.name);
        rep
    }
}

/// Which structure constant of a curved Clifford algebra moves with `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliffordFamily {
    /// `w(t) = w + t`.
    W,
    /// `u_i(t) = u_i + t`.
    U(usize),
}

/// `curved_clifford(w(t), u(t))` with structure constants in `C[t]`.
pub fn clifford_family<C: Ring>(w: C, u: Vec<C>, kind: CliffordFamily) -> AInfCategory<Poly<C>> {
    let t = Poly::<C>::var(0);
    let mut w = Poly::constant(w);
    let mut u: Vec<Poly<C>> = u.into_iter().map(Poly::constant).collect();
    match kind {
        CliffordFamily::W => w = w.add(&t),
        CliffordFamily::U(i) => u[i] = u[i].add(&t),
    }
    crate::ainfty::curved_clifford(w, u)
}

/// The shipped setups with their bulk data, by name.
pub fn builtin_setups<C: Ring>() -> Vec<(&'static str, MirrorSetup<C>, BulkDatum<C>)> {
    let one = C::one;
    let mut out = Vec::new();
    let specs: [(&'static str, Vec<C>, CliffordFamily); 4] = [
        ("clifford1-w", vec![one()], CliffordFamily::W),
        ("clifford1-u", vec![one()], CliffordFamily::U(0)),
        ("clifford2-w", vec![one(), one()], CliffordFamily::W),
        ("clifford2-u", vec![one(), one()], CliffordFamily::U(0)),
    ];
    for (name, u, kind) in specs {
        let datum = bulk_from_family(&clifford_family(C::zero(), u.clone(), kind)).expect("Clifford families are A-infinity");
        out.push((name, MirrorSetup::clifford(C::zero(), u), datum));
    }
    // two branes (𝕃, ±e) of potential u = 1
    let datum = bulk_from_family(&clifford_family(C::zero(), vec![one()], CliffordFamily::U(0))).expect("Clifford families are A-infinity");
    let mut pair = MirrorSetup::clifford(C::zero(), vec![one()]);
    pair.branes = vec![MirrorSetup::clifford_brane("L+", &[one()]), MirrorSetup::clifford_brane("L-", &[one().neg()])];
    out.push(("clifford1-pair-u", pair, datum));
    out
}

pub fn builtin_setup<C: Ring>(name: &str) -> Option<(MirrorSetup<C>, BulkDatum<C>)> {
    builtin_setups().into_iter().find(|(n, _, _)| *n == name).map(|(_, s, d)| (s, d))
}
