//! `ℱ = L¹(𝒞𝒪(α))`, `𝒢 = R¹(γ(k̃s(α)))` and `ξ` on `ℳ = (ℒℳ ⊗ 1)*ℬ_Δ`,
//! with `𝒢 − ℱ = δξ` and the intermediate identities checked separately.

use std::sync::Arc;

use super::{co_cocycle, FoldedBulk, Mirror, MirrorError, Poly};
use crate::ainfty::{lin_axpy, lin_scale, lin_single, lin_sub, AInfCategory, AInfFunctor, Basis, Lin, Word};
use crate::bimod::{base_change, premorphism_diff, AInfBimodule, BiWord, Premorphism};
use crate::hoch::{lm1, rm1};
use crate::mf::gamma;
use crate::report::CheckReport;
use crate::ring::Ring;
use crate::signs;

/// The three premorphisms of `ℳ` on inputs with `r ≤ rmax`, `s ≤ smax`.
#[derive(Debug, Clone)]
pub struct FgXi<C> {
    pub module: Arc<AInfBimodule<Poly<C>>>,
    pub f: Premorphism<Poly<C>>,
    pub g: Premorphism<Poly<C>>,
    pub xi: Premorphism<Poly<C>>,
    pub rmax: usize,
    pub smax: usize,
}

fn singles<R: Ring>(letters: &[Basis]) -> Vec<Lin<R>> {
    letters.iter().map(|b| lin_single(*b, R::one())).collect()
}

/// Which `(i, j)` an insertion sum keeps, for a word `a₁⋯a_r•` of length `n = r + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Range {
    /// The inner word avoids `•`.
    Inside,
    /// The inner word ends with `•`; `with_empty_head` allows `i = 0`.
    Through { with_empty_head: bool, with_bullet_alone: bool },
    /// The empty word after `•`.
    After,
}

impl Range {
    fn keeps(self, i: usize, j: usize, n: usize) -> bool {
        match self {
            Range::Inside => j < n,
            Range::Through { with_empty_head, with_bullet_alone } => {
                j == n && i < n && (with_empty_head || i > 0) && (with_bullet_alone || i + 1 < n)
            }
            Range::After => i == n && j == n,
        }
    }
}

/// `Σ (-1)^{|x⃗₁|'} outer(x⃗₁, inner(x⃗₂), x⃗₃)` over the splittings of
/// `word` kept by `range`.
fn insertion_sum<R: Ring>(outer: &AInfCategory<R>, inner: &AInfCategory<R>, word: &Word, range: Range) -> Lin<R> {
    let n = word.len();
    let mut out = Lin::new();
    let mut before = 0u8;
    for i in 0..=n {
        for j in i..=n.min(i + inner.kmax) {
            if !range.keeps(i, j, n) {
                continue;
            }
            let Some(v) = inner.m(&word.sub(i, j)) else { continue };
            let mut args = singles::<R>(&word.letters[..i]);
            args.push(v.clone());
            args.extend(singles::<R>(&word.letters[j..]));
            let refs: Vec<&Lin<R>> = args.iter().collect();
            lin_axpy(&mut out, &R::one().signed(signs::is_odd(before)), &outer.m_lin(word.obj, &refs));
        }
        if i < n {
            before ^= inner.homs.sdeg(word.letters[i]);
        }
    }
    out
}

impl<C: Ring> Mirror<C> {
    /// `ℳ = (ℒℳ ⊗ 1)*ℬ_Δ` on `𝒜_λ` and `ℬ`.
    pub fn module(&self) -> Result<AInfBimodule<Poly<C>>, MirrorError> {
        let id = AInfFunctor::identity(&self.mf.cat);
        Ok(base_change(&self.functor, &id, &self.mf.diag, self.source.clone(), self.mf.cat.clone(), None)?)
    }

    /// `• ↦ q(a⃗, •)` as a morphism of `ℬ`.
    pub fn q_morphism(&self, bulk: &FoldedBulk<C>, w: &Word) -> Lin<Poly<C>> {
        let args = singles::<Poly<C>>(&w.letters);
        self.as_morphism(w.obj, w.end(), |c| {
            let bullet = lin_single(c, Poly::one());
            let mut refs: Vec<&Lin<Poly<C>>> = args.iter().collect();
            refs.push(&bullet);
            bulk.q.m_lin(w.obj, &refs)
        })
    }

    /// `• ↦ sign(•)·Σ outer(…inner(…)…)` over the word `a⃗•`, as a morphism.
    fn bullet_sum(
        &self,
        outer: &AInfCategory<Poly<C>>,
        inner: &AInfCategory<Poly<C>>,
        a: &Word,
        range: Range,
        sign: impl Fn(Basis) -> bool,
    ) -> Lin<Poly<C>> {
        self.as_morphism(a.obj, a.end(), |c| {
            let mut letters = a.letters.clone();
            letters.push(c);
            let v = insertion_sum(outer, inner, &Word::with_start(a.obj, letters), range);
            lin_scale(&v, &Poly::one().signed(sign(c)))
        })
    }
}

/// `ℱ`, `𝒢` and `ξ^{r|1|0}(a⃗, m̄) = m₂^ℬ(q(a⃗, •), m̄)`, zero for `s > 0`.
pub fn build_fg_xi<C: Ring>(mirror: &Mirror<C>, bulk: &FoldedBulk<C>, rmax: usize, smax: usize) -> Result<FgXi<C>, MirrorError> {
    let module = Arc::new(mirror.module()?);
    build_on(mirror, bulk, module, rmax, smax)
}

fn build_on<C: Ring>(
    mirror: &Mirror<C>,
    bulk: &FoldedBulk<C>,
    module: Arc<AInfBimodule<Poly<C>>>,
    rmax: usize,
    smax: usize,
) -> Result<FgXi<C>, MirrorError> {
    let co = co_cocycle(mirror, bulk);
    let f = lm1(&co, module.clone(), rmax, smax)?;
    let ks = vec![bulk.ks.clone(); mirror.mf.summands.len()];
    let g = rm1(&gamma(&mirror.mf, &ks)?, module.clone(), rmax, smax)?;
    let mut xi = Premorphism::new(module.clone(), module.clone(), 1);
    for r in 0..=rmax {
        for w in module.biwords(r, 0) {
            let q = mirror.q_morphism(bulk, &Word::with_start(w.start(), w.left.clone()));
            xi.set(w.clone(), mirror.mf.cat.m_lin(w.start(), &[&q, &lin_single(w.m, Poly::one())]));
        }
    }
    Ok(FgXi { module, f, g, xi, rmax, smax })
}

/// Per-identity verdicts of one run.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub header: String,
    pub checks: Vec<CheckReport>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }

    pub fn first_failure(&self) -> Option<&CheckReport> {
        self.checks.iter().find(|c| !c.passed)
    }
}

struct Ctx<'a, C: Ring> {
    mirror: &'a Mirror<C>,
    fgx: &'a FgXi<C>,
    dxi: &'a Premorphism<Poly<C>>,
}

impl<C: Ring> Ctx<'_, C> {
    fn module(&self) -> &AInfBimodule<Poly<C>> {
        &self.fgx.module
    }

    /// `m₂^ℬ(Φ, m̄)`.
    fn act(&self, phi: &Lin<Poly<C>>, w: &BiWord) -> Lin<Poly<C>> {
        self.mirror.mf.cat.m_lin(w.start(), &[phi, &lin_single(w.m, Poly::one())])
    }

    fn a(&self, w: &BiWord) -> Word {
        Word::with_start(w.start(), w.left.clone())
    }

    /// `|a⃗|' + |•|'` for the sign of the terms after `•`.
    fn after_sign(&self, a: &Word) -> impl Fn(Basis) -> bool + '_ {
        let base = self.mirror.full.homs.sdeg_sum(&a.letters);
        move |c| signs::is_odd(base ^ self.mirror.full.homs.sdeg(c))
    }

    fn moved(&self, outer: &AInfCategory<Poly<C>>, inner: &AInfCategory<Poly<C>>, w: &BiWord, range: Range) -> Lin<Poly<C>> {
        let a = self.a(w);
        let sign = if range == Range::After { Box::new(self.after_sign(&a)) as Box<dyn Fn(Basis) -> bool> } else { Box::new(|_| false) };
        let phi = self.mirror.bullet_sum(outer, inner, &a, range, |c| !sign(c));
        self.act(&phi, w)
    }
}

fn compare<R: Ring>(rep: &mut CheckReport, m: &AInfBimodule<R>, w: &BiWord, lhs: &Lin<R>, rhs: &Lin<R>) {
    let res = lin_sub(lhs, rhs);
    rep.check(res.is_empty(), || format!("{} -> {}", m.fmt_biword(w), m.fmt_lin(&res)));
}

/// Every identity of the homotopy argument, each as its own check.
///
/// For `r ≥ 1` the terms of the bulk relation whose inner operation is
/// `m₁(•)` or `m₁(q(a⃗, •))` are kept apart: together they form
/// `m₂^ℬ(m₁^ℬ(q(a⃗, •)), m̄)`, which matches the `m₁^ℬ` parts of `ξ∘μ̂` and
/// `μ∘ξ̂` only after the A∞-relation of `ℬ`.
pub fn check_main_theorem<C: Ring>(mirror: &Mirror<C>, bulk: &FoldedBulk<C>, rmax: usize) -> Result<TheoremReport, MirrorError> {
    let module = Arc::new(mirror.module()?);
    let fgx = build_on(mirror, bulk, module.clone(), rmax, 1)?;
    let dxi = premorphism_diff(&fgx.xi, rmax, 1);
    let wide = build_on(mirror, bulk, module.clone(), rmax.min(1), 2)?;
    let wide_dxi = premorphism_diff(&wide.xi, rmax.min(1), 2);
    let ctx = Ctx { mirror, fgx: &fgx, dxi: &dxi };
    let m = ctx.module();
    let full = &*mirror.full;
    let q = &*bulk.q;

    let mut main = CheckReport::new(format!("G - F = d(xi) for r <= {rmax}, s <= 1"));
    let mut s_pos = CheckReport::new(format!("d(xi)^(r|1|s) = 0 for s = 1 (r <= {rmax}) and s = 2 (r <= {})", rmax.min(1)));
    let mut fg_pos = CheckReport::new("F^(r|1|s) = G^(r|1|s) = 0 for s > 0");
    for (fg, d, top, smax) in [(&fgx, &dxi, rmax, 1), (&wide, &wide_dxi, rmax.min(1), 2)] {
        for r in 0..=top {
            for s in 0..=smax {
                for w in m.biwords(r, s) {
                    let gf = lin_sub(&fg.g.apply(&w), &fg.f.apply(&w));
                    if smax == 1 {
                        compare(&mut main, m, &w, &gf, &d.apply(&w));
                    }
                    if s > 0 {
                        s_pos.check(d.apply(&w).is_empty(), || format!("{} -> {}", m.fmt_biword(&w), m.fmt_lin(&d.apply(&w))));
                        fg_pos.check(gf.is_empty(), || format!("{} -> {}", m.fmt_biword(&w), m.fmt_lin(&gf)));
                    }
                }
            }
        }
    }

    let mut lm1_exp = CheckReport::new("(lm1) F = sum m2(LM(a, q(a), a), m)");
    let mut split = CheckReport::new("(qinfty) F = (moduleandxi) + (xiandmodule) + (qunit) + (aiunit)");
    let mut mxi = CheckReport::new("(moduleandxi) = -(-1)^{|xi|} xi o mu^ off the m1 terms");
    let mut xim = CheckReport::new("(xiandmodule) = -mu o xi^ off the m1 terms");
    let mut units = CheckReport::new("(qunit) = (aiunit) = 0");
    let mut boundary = CheckReport::new("m1 terms: -m2(q(a, m1 .) + m1 q(a, .), m) = -(xi(a, m1 m) + m1 xi(a, m))");
    for r in 1..=rmax {
        for w in m.biwords(r, 0) {
            let f = fgx.f.apply(&w);
            let lm = ctx.act(&mirror.bullet_sum(full, q, &ctx.a(&w), Range::Inside, |_| false), &w);
            compare(&mut lm1_exp, m, &w, &f, &lm);

            let through = |head: bool, alone: bool| Range::Through { with_empty_head: head, with_bullet_alone: alone };
            let module_xi = {
                let mut v = ctx.moved(q, full, &w, Range::Inside);
                lin_axpy(&mut v, &Poly::one(), &ctx.moved(q, full, &w, through(true, false)));
                v
            };
            let xi_module = ctx.moved(full, q, &w, through(false, true));
            let qunit = ctx.moved(q, full, &w, Range::After);
            let aiunit = ctx.moved(full, q, &w, Range::After);
            let edge = {
                let mut v = ctx.moved(q, full, &w, through(true, true));
                lin_axpy(&mut v, &Poly::one().neg(), &ctx.moved(q, full, &w, through(true, false)));
                lin_axpy(&mut v, &Poly::one(), &ctx.moved(full, q, &w, through(true, true)));
                lin_axpy(&mut v, &Poly::one().neg(), &ctx.moved(full, q, &w, through(false, true)));
                v
            };
            let mut total = module_xi.clone();
            for v in [&xi_module, &qunit, &aiunit, &edge] {
                lin_axpy(&mut total, &Poly::one(), v);
            }
            compare(&mut split, m, &w, &f, &total);
            units.check(qunit.is_empty() && aiunit.is_empty(), || {
                format!("{}: qunit {}, aiunit {}", m.fmt_biword(&w), m.fmt_lin(&qunit), m.fmt_lin(&aiunit))
            });

            // ξ∘μ̂ and μ∘ξ̂ without their m₁^ℬ parts
            let xi_mu = fgx.xi.apply_bar(&m.bar_diff(&w));
            let m1m = m.mu_lin(&[], &lin_single(w.m, Poly::one()), &[]);
            let sign_a = signs::is_odd(full.homs.sdeg_sum(&w.left));
            let xi_of_m1: Lin<Poly<C>> = {
                let mut v = Lin::new();
                for (b, c) in &m1m {
                    lin_axpy(&mut v, c, &fgx.xi.apply(&BiWord::new(w.left.clone(), *b, vec![])));
                }
                lin_scale(&v, &Poly::one().signed(sign_a))
            };
            let mu_xi = m.apply_mu(&fgx.xi.hat(&w));
            let m1_xi = m.mu_lin(&[], &fgx.xi.apply(&w), &[]);
            compare(&mut mxi, m, &w, &module_xi, &lin_scale(&lin_sub(&xi_mu, &xi_of_m1), &Poly::one().neg()));
            compare(&mut xim, m, &w, &xi_module, &lin_scale(&lin_sub(&mu_xi, &m1_xi), &Poly::one().neg()));
            let mut rhs = xi_of_m1.clone();
            lin_axpy(&mut rhs, &Poly::one(), &m1_xi);
            compare(&mut boundary, m, &w, &edge, &lin_scale(&rhs, &Poly::one().neg()));
        }
    }

    let mut fminusgm = CheckReport::new("(fminusgm) (F - G)^(0|1|0) = m2(m2(q0^L, .) - (-1)^{|.|} m2(., q0^LL), m)");
    let mut qm1m1q = CheckReport::new("(fminusgm) = (qm1m1q) + (qunit2)");
    let mut qunit2 = CheckReport::new("(qunit2) = 0");
    let mut deltaxi = CheckReport::new("(deltaxi) d(xi)^(0|1|0) = m2(q(.), m1 m) + m1 m2(q(.), m)");
    let mut opposite = CheckReport::new("(qm1m1q) = -(deltaxi)");
    for w in m.biwords(0, 0) {
        let fg = lin_sub(&fgx.f.apply(&w), &fgx.g.apply(&w));
        let l = w.start();
        let refo = mirror.reference();
        let q0l = q.m0(l);
        let q0ref = q.m0(refo);
        let phi = mirror.as_morphism(l, l, |c| {
            let bullet = lin_single(c, Poly::one());
            let mut v = full.m_lin(l, &[&q0l, &bullet]);
            let right = full.m_lin(l, &[&bullet, &q0ref]);
            lin_axpy(&mut v, &Poly::one().signed(!signs::is_odd(full.homs.deg(c))), &right);
            v
        });
        let fmg = ctx.act(&phi, &w);
        compare(&mut fminusgm, m, &w, &fg, &fmg);
        let a = Word::empty(l);
        let qm = {
            let mut v = ctx.moved(q, full, &w, Range::Through { with_empty_head: true, with_bullet_alone: true });
            lin_axpy(&mut v, &Poly::one(), &ctx.moved(full, q, &w, Range::Through { with_empty_head: true, with_bullet_alone: true }));
            v
        };
        let qu = {
            let m0l = full.m0(l);
            let m0ref = full.m0(refo);
            let psi = mirror.as_morphism(l, l, |c| {
                let bullet = lin_single(c, Poly::one());
                let mut v = q.m_lin(l, &[&m0l, &bullet]);
                lin_axpy(&mut v, &Poly::one().signed(signs::is_odd(full.homs.sdeg(c))), &q.m_lin(l, &[&bullet, &m0ref]));
                lin_scale(&v, &Poly::one().neg())
            });
            ctx.act(&psi, &w)
        };
        let mut sum = qm.clone();
        lin_axpy(&mut sum, &Poly::one(), &qu);
        compare(&mut qm1m1q, m, &w, &fmg, &sum);
        qunit2.check(qu.is_empty(), || format!("{} -> {}", m.fmt_biword(&w), m.fmt_lin(&qu)));
        let qb = mirror.q_morphism(bulk, &a);
        let mbar = lin_single(w.m, Poly::one());
        let m1m = m.mu_lin(&[], &mbar, &[]);
        let mut dx = mirror.mf.cat.m_lin(l, &[&qb, &m1m]);
        lin_axpy(&mut dx, &Poly::one(), &m.mu_lin(&[], &ctx.act(&qb, &w), &[]));
        compare(&mut deltaxi, m, &w, &ctx.dxi.apply(&w), &dx);
        compare(&mut opposite, m, &w, &qm, &lin_scale(&dx, &Poly::one().neg()));
    }

    let header = format!(
        "synthetic category (axioms only), W = {}, lambda = {}, ks = {}, r <= {rmax}, s <= 1 (s = 2 for r <= {})",
        mirror.w,
        mirror.lambda,
        bulk.ks,
        rmax.min(1)
    );
    let mut checks = vec![main, s_pos, fg_pos];
    if rmax > 0 {
        checks.extend([lm1_exp, split, mxi, xim, units, boundary]);
    }
    checks.extend([fminusgm, qm1m1q, qunit2, deltaxi, opposite]);
    Ok(TheoremReport { header, checks })
}
