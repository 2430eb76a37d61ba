//! Acceptance suite: one timed PASS/FAIL line per criterion.
//!
//! Runs without the test harness so the lines always print; exits nonzero
//! when any criterion fails or overruns its time budget.

use std::sync::Arc;
use std::time::{Duration, Instant};

use mirrorforge::ainfty::{check_ainfty, check_m1_squared, check_unit, curved_clifford, deform, lin_single, AInfCategory, Basis, Word};
use mirrorforge::bimod::{check_bimodule, compose, diagonal, premorphism_diff, random_premorphism, tensor, AInfBimodule, Premorphism};
use mirrorforge::hoch::{hh_cohomology, hochschild_diff, random_cochain};
use mirrorforge::laurent::{LaurentPoly, PolyRing};
use mirrorforge::mf::{check_gamma, koszul_mf, mf_ainfty_category, validate_mf, GammaInput, MfCategory, MfMode, MfSummand};
use mirrorforge::mirror::{builtin_setups, check_cap_scalar, check_main_theorem, sample_chains, FoldedBulk, Mirror};
use mirrorforge::report::CheckReport;
use mirrorforge::toric::{self, critical_points, jacobian_ring, ks_divisor_check, qh_presentation};
use mirrorforge::{NovScalar, Rational, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every algebraic identity is checked with zero tolerance.
const EXACT_RESIDUAL: usize = 0;
/// Critical points: `|∇| ≤` this after Newton polishing, at `T = 1/4`.
const CRITICAL_RESIDUAL_TOL: f64 = 1e-10;
/// Morse: `|det Hess| >` this.
const MORSE_DET_TOL: f64 = 1e-8;
/// Adic factorizations are built with this `d_max`.
const ADIC_DMAX: u32 = 6;
const SEED: u64 = 2024;

type Outcome = Result<String, String>;

fn ensure(rep: &CheckReport) -> Result<(), String> {
    if rep.passed {
        Ok(())
    } else {
        Err(rep.line())
    }
}

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

fn clifford(w: i64, u: &[i64]) -> Arc<AInfCategory<Rational>> {
    Arc::new(curved_clifford(q(w), u.iter().map(|&x| q(x)).collect()))
}

fn built_mirrors() -> Vec<(&'static str, Mirror<Rational>, FoldedBulk<Rational>)> {
    builtin_setups::<Rational>()
        .into_iter()
        .map(|(name, setup, datum)| {
            let m = Mirror::build(setup).expect("built-in setup");
            let b = datum.fold(&m).expect("built-in bulk datum");
            (name, m, b)
        })
        .collect()
}

fn toric_pipeline() -> Outcome {
    let t0 = Rational::new(1, 4);
    let mut lines = Vec::new();
    for (name, expected) in [("CP1", 2), ("CP2", 3), ("CP1xCP1", 4)] {
        let p = toric::potential(&toric::builtin(name).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let (_, dim) = jacobian_ring(&p).map_err(|e| e.to_string())?;
        if dim != expected {
            return Err(format!("{name}: dim Jac = {dim}, expected {expected}"));
        }
        let pts = critical_points(&p, &t0).map_err(|e| e.to_string())?;
        let total: usize = pts.iter().map(|c| c.multiplicity).sum();
        if total != dim {
            return Err(format!("{name}: multiplicities sum to {total}"));
        }
        if let Some(c) = pts.iter().find(|c| !c.morse || c.hessian_det <= MORSE_DET_TOL || c.residual > CRITICAL_RESIDUAL_TOL) {
            return Err(format!("{name}: point {:?} has |det Hess| {:.3e}, residual {:.3e}", c.coords, c.hessian_det, c.residual));
        }
        let ks = ks_divisor_check(&qh_presentation(name).map_err(|e| e.to_string())?, &p).map_err(|e| e.to_string())?;
        lines.push(format!("{name}: dim {dim}, {} Morse points, {} relations killed", pts.len(), ks.relations_checked));
    }
    Ok(lines.join("; "))
}

fn ainfty_core() -> Outcome {
    let mut cats: Vec<(String, AInfCategory<LaurentPoly<Rational>>)> = Vec::new();
    let constant = |c: &AInfCategory<Rational>| c.map_coeffs(|x| LaurentPoly::constant(x.clone()));
    for (name, u) in [("clifford e^2 = 1", vec![1]), ("clifford2", vec![1, 1]), ("dual numbers", vec![0]), ("clifford3", vec![1, -1, 2])] {
        cats.push((name.into(), constant(&clifford(3, &u))));
    }
    let mut deformed = 0;
    for (name, m, _) in built_mirrors() {
        cats.push((format!("{name}: base"), m.setup.category.map_coeffs(|x| LaurentPoly::constant(x.clone()))));
        cats.push((format!("{name}: source"), (*m.source).clone()));
        cats.push((format!("{name}: full"), (*m.full).clone()));
        cats.push((format!("{name}: MF"), (*m.mf.cat).clone()));
        let a = m.setup.category.map_coeffs(|x| LaurentPoly::constant(x.clone()));
        let assignments: Vec<_> = m.setup.branes.iter().map(|b| (b.obj, b.b0.clone())).collect();
        let c = deform(&a, &assignments).map_err(|e| format!("{name}: {e}"))?;
        ensure(&check_m1_squared(&c)).map_err(|e| format!("{name}: {e}"))?;
        ensure(&check_m1_squared(&m.source)).map_err(|e| format!("{name}: {e}"))?;
        cats.push((format!("{name}: deformed"), c));
        deformed += 1;
    }
    for (name, c) in &cats {
        ensure(&check_ainfty(c, None)).map_err(|e| format!("{name}: {e}"))?;
        for o in 0..c.nobjects() as u32 {
            if c.units[o as usize].is_some() {
                ensure(&check_unit(c, o)).map_err(|e| format!("{name}: {e}"))?;
            }
        }
    }
    // one flipped sign: m2(1, e1) = -e1
    let mut bad = (*clifford(0, &[1, 1])).clone();
    let (one, e1) = (Basis::new(0, 0, 0), Basis::new(0, 0, 1));
    bad.set_m(Word::new(vec![one, e1]), lin_single(e1, q(-1)));
    let rel = check_ainfty(&bad, None);
    let unit = check_unit(&bad, 0);
    if rel.passed || rel.witness.is_none() || unit.passed {
        return Err("the flipped sign went unnoticed".into());
    }
    Ok(format!("{} categories, {deformed} deformed; control fails at {}", cats.len(), rel.witness.unwrap_or_default()))
}

/// `δ` at arity `(1, 1)` reads inputs one letter longer when curvature can be inserted.
fn window<R: Ring>(d: &AInfBimodule<R>) -> usize {
    let curved = |c: &AInfCategory<R>| (0..c.nobjects() as u32).any(|o| !c.m0(o).is_empty());
    if curved(&d.left) || curved(&d.right) {
        2
    } else {
        1
    }
}

fn delta_squared<R: Ring>(name: &str, d: Arc<AInfBimodule<R>>, count: usize, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = window(&d);
    for i in 0..count {
        let f = random_premorphism(d.clone(), d.clone(), (i % 2) as u8, 1, 1, 0.3, rng);
        let ddf = premorphism_diff(&premorphism_diff(&f, n, n), 1, 1);
        if !ddf.is_zero() {
            return Err(format!("{name}: delta^2 != 0 on sample {i}"));
        }
    }
    Ok(())
}

fn leibniz(f: &Premorphism<Rational>, g: &Premorphism<Rational>) -> Result<bool, String> {
    let e = |e: mirrorforge::bimod::BimodError| e.to_string();
    let n = window(&f.source);
    let lhs = premorphism_diff(&compose(f, g, n, n).map_err(e)?, 1, 1);
    let a = compose(&premorphism_diff(f, n, n), g, 1, 1).map_err(e)?;
    let b = compose(f, &premorphism_diff(g, n, n), 1, 1).map_err(e)?;
    let rhs = a.axpy(&Rational::one().signed(f.degree == 1), &b).map_err(e)?;
    Ok(lhs.axpy(&q(-1), &rhs).map_err(e)?.is_zero())
}

fn bimodule_calculus() -> Outcome {
    const SAMPLES: usize = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut diagonals = Vec::new();
    for (name, w, u) in [("clifford e^2 = 1", 0, vec![1]), ("clifford2", 0, vec![1, -1]), ("curved clifford", 2, vec![3]), ("dual numbers", 0, vec![0])] {
        let d = Arc::new(diagonal(clifford(w, &u)));
        ensure(&check_bimodule(&d, None)).map_err(|e| format!("{name}: {e}"))?;
        delta_squared(name, d.clone(), SAMPLES, &mut rng)?;
        diagonals.push((name, d));
    }
    let (setup_name, m, _) = built_mirrors().into_iter().next().expect("a setup");
    let module = Arc::new(m.module().map_err(|e| e.to_string())?);
    ensure(&check_bimodule(&module, Some(3))).map_err(|e| format!("{setup_name} module: {e}"))?;
    delta_squared(setup_name, module, SAMPLES, &mut rng)?;
    let t = tensor(&diagonals[0].1, &diagonals[0].1, 3).map_err(|e| e.to_string())?;
    ensure(&check_bimodule(&t, None)).map_err(|e| format!("tensor: {e}"))?;
    let d = diagonals[2].1.clone();
    for i in 0..50 {
        let f = random_premorphism(d.clone(), d.clone(), (i % 2) as u8, 1, 1, 0.5, &mut rng);
        let g = random_premorphism(d.clone(), d.clone(), (i / 2 % 2) as u8, 1, 1, 0.5, &mut rng);
        if !leibniz(&f, &g)? {
            return Err(format!("Leibniz fails on pair {i}"));
        }
    }
    Ok(format!("{SAMPLES} premorphisms on each of 5 bimodules, tensor product, 50 Leibniz pairs"))
}

fn hochschild() -> Outcome {
    let c = clifford(0, &[1]);
    let d = Arc::new(diagonal(c.clone()));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for degree in [0, 1] {
        for _ in 0..10 {
            let phi = random_cochain(c.clone(), d.clone(), degree, 2, 0.5, &mut rng);
            let dd = hochschild_diff(&hochschild_diff(&phi, 6).map_err(|e| e.to_string())?, 6).map_err(|e| e.to_string())?;
            if !dd.is_zero() {
                return Err(format!("b*^2 = {}", dd.fmt()));
            }
        }
    }
    let mut lines = Vec::new();
    for lmax in [4, 5, 6] {
        let (rep, _) = hh_cohomology(c.clone(), d.clone(), lmax, &[q(1)]).map_err(|e| e.to_string())?;
        if rep.dims != [1, 0] || !rep.stable {
            return Err(rep.line());
        }
        lines.push(format!("lmax {lmax}: {:?}", rep.dims));
    }
    // the Morse point of x^2: local Jacobian ring k[x]/(2x) has dimension 1
    let ring = PolyRing::new(["x"]);
    let k = koszul_mf(&ring.parse::<Rational>("x^2").map_err(|e| e.to_string())?, &[q(0)], 4).map_err(|e| e.to_string())?;
    let model = Arc::new(k.clifford_model().map_err(|e| e.to_string())?);
    let (rep, _) = hh_cohomology(model.clone(), Arc::new(diagonal(model)), 4, &[q(1)]).map_err(|e| e.to_string())?;
    if rep.dims[0] != 1 {
        return Err(format!("Hessian model of x^2: {}", rep.line()));
    }
    let dual = clifford(0, &[0]);
    let dd = Arc::new(diagonal(dual.clone()));
    let mut growth = Vec::new();
    for lmax in [4, 5, 6] {
        let (rep, _) = hh_cohomology(dual.clone(), dd.clone(), lmax, &[q(1)]).map_err(|e| e.to_string())?;
        if rep.stable {
            return Err(format!("dual numbers stabilized: {}", rep.line()));
        }
        growth.push(rep.dims[0] + rep.dims[1]);
    }
    if !growth.windows(2).all(|p| p[1] > p[0]) {
        return Err(format!("dual numbers do not grow: {growth:?}"));
    }
    Ok(format!("Clifford HH {}; x^2 model HH^0 = 1; dual numbers total {growth:?}", lines.join(", ")))
}

fn cp1_summands(d: u32) -> Result<(MfCategory<NovScalar>, Vec<LaurentPoly<NovScalar>>), String> {
    let w = toric::potential(&toric::builtin("CP1").map_err(|e| e.to_string())?).map_err(|e| e.to_string())?.poly;
    let mut summands = Vec::new();
    let mut ideals = Vec::new();
    for (name, eta) in [("y=1", 1), ("y=-1", -1)] {
        let k = koszul_mf(&w, &[NovScalar::from_i64(eta)], d).map_err(|e| e.to_string())?;
        let v = validate_mf(&k.mf);
        if !matches!(k.mf.mode, MfMode::Adic(_)) || !v.passed || v.order.is_some_and(|o| o < d as i32) {
            return Err(format!("CP1 at {name}: {}", v.line()));
        }
        ideals.push(k.mf.w.derivative(0));
        summands.push(MfSummand { name: name.into(), objects: vec![("K".into(), k.mf)] });
    }
    Ok((mf_ainfty_category(&summands).map_err(|e| e.to_string())?, ideals))
}

fn x_squared() -> Result<MfCategory<Rational>, String> {
    let ring = PolyRing::new(["x"]);
    let k = koszul_mf(&ring.parse::<Rational>("x^2").map_err(|e| e.to_string())?, &[q(0)], 4).map_err(|e| e.to_string())?;
    mf_ainfty_category(&[MfSummand { name: "0".into(), objects: vec![("K".into(), k.mf)] }]).map_err(|e| e.to_string())
}

fn matrix_factorizations() -> Outcome {
    let mut exact = 0;
    for (_, m, _) in built_mirrors() {
        for f in &m.mf.factorizations {
            let v = validate_mf(f);
            if m.w != m.lambda && (!v.passed || v.order.is_some()) {
                return Err(v.line());
            }
            exact += 1;
        }
    }
    let ring = PolyRing::new(["x", "y"]);
    for w in ["x^2", "x^2 + y^2", "x^3 + x*y^2"] {
        let n = if w == "x^2" { 1 } else { 2 };
        let k = koszul_mf(&ring.parse::<Rational>(w).map_err(|e| e.to_string())?, &vec![q(0); n], 4).map_err(|e| e.to_string())?;
        let v = validate_mf(&k.mf);
        if k.mf.mode != MfMode::Exact || v.order.is_some() {
            return Err(format!("{w}: {}", v.line()));
        }
        exact += 1;
    }
    let x2 = x_squared()?;
    let x = PolyRing::new(["x"]);
    let input = GammaInput {
        summand: 0,
        reps: vec![LaurentPoly::one()],
        ideal: vec![x.parse("2*x").map_err(|e| e.to_string())?],
        nvars: 1,
        order: 3,
        window: 2,
    };
    for r in check_gamma(&x2, &input).map_err(|e| e.to_string())? {
        ensure(&r).map_err(|e| format!("MF(x^2): {e}"))?;
    }
    let (cp1, ideals) = cp1_summands(ADIC_DMAX)?;
    let (cp1_low, _) = cp1_summands(3)?;
    for (s, ideal) in ideals.into_iter().enumerate() {
        let ideal = vec![ideal.truncated(3)];
        let input = GammaInput { summand: s, reps: vec![LaurentPoly::one()], ideal, nvars: 1, order: 3, window: 1 };
        for r in check_gamma(&cp1_low, &input).map_err(|e| e.to_string())? {
            ensure(&r).map_err(|e| format!("CP1 {}: {e}", cp1.summands[s]))?;
        }
    }
    Ok(format!("{exact} exact factorizations; CP1 adic residual order >= {ADIC_DMAX}; gamma checks on MF(x^2) and both CP1 summands"))
}

fn mirror_functor() -> Outcome {
    let mut n = 0;
    for (name, m, _) in built_mirrors() {
        let objects = m.check_objects();
        if !objects.passed || (m.w != m.lambda && objects.witness.is_some()) {
            return Err(format!("{name}: {}", objects.line()));
        }
        let f = m.check_functor(4);
        ensure(&f).map_err(|e| format!("{name}: {e}"))?;
        n += f.cases;
    }
    Ok(format!("Q^2 = (W - lambda) Id on 1- and 2-generator setups; functor equation on {n} words up to arity 4"))
}

fn main_theorem() -> Outcome {
    let mut cases = 0;
    let mut checks = 0;
    let mut families = Vec::new();
    for (name, m, bulk) in built_mirrors() {
        let rep = check_main_theorem(&m, &bulk, 3).map_err(|e| e.to_string())?;
        if let Some(f) = rep.first_failure() {
            return Err(format!("{name}: {}", f.line()));
        }
        cases += rep.checks.iter().map(|c| c.cases).sum::<usize>();
        checks = rep.checks.len();
        families.push(name);
    }
    let (_, m, bulk) = built_mirrors().into_iter().find(|(n, _, _)| *n == "clifford1-u").expect("u-family");
    let mut corrupted = (*bulk.q).clone();
    let e = Basis::new(0, 0, 1);
    corrupted.add_m_term(Word::new(vec![e, e]), Basis::new(0, 0, 0), &LaurentPoly::one());
    let bad = FoldedBulk { q: Arc::new(corrupted), ks: bulk.ks.clone() };
    let rep = check_main_theorem(&m, &bad, 3).map_err(|e| e.to_string())?;
    let failed: Vec<&str> = rep.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        return Err("corrupted q passed".into());
    }
    Ok(format!("{checks} identities on {} ({cases} cases, residual tolerance {EXACT_RESIDUAL}); corrupted q fails {:?}", families.join(", "), failed))
}

fn cap_product() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let x = PolyRing::new(["x"]);
    let mut n = 0;
    for w in ["x^2", "x^3"] {
        let k = koszul_mf(&x.parse::<Rational>(w).map_err(|e| e.to_string())?, &[q(0)], 4).map_err(|e| e.to_string())?;
        let m = mf_ainfty_category(&[MfSummand { name: "0".into(), objects: vec![("K".into(), k.mf)] }]).map_err(|e| e.to_string())?;
        let chains = sample_chains(&m.cat, 2, 8, &mut rng);
        let reps = ["1", "x", "x^2 + 3"].iter().map(|r| x.parse(r)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
        let rep = check_cap_scalar(&m, &reps, &chains);
        ensure(&rep).map_err(|e| format!("{w}: {e}"))?;
        n += rep.cases;
    }
    let (cp1, _) = cp1_summands(3)?;
    let chains = sample_chains(&cp1.cat, 1, 6, &mut rng);
    let rep = check_cap_scalar(&cp1, &[LaurentPoly::one(), x.parse("x").map_err(|e| e.to_string())?], &chains);
    ensure(&rep).map_err(|e| format!("CP1: {e}"))?;
    n += rep.cases;
    Ok(format!("{n} (r, chain) pairs exact"))
}

fn main() {
    type Criterion = (u32, &'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        (1, "toric pipeline", 10, toric_pipeline),
        (2, "A-infinity core", 5, ainfty_core),
        (3, "bimodule calculus", 30, bimodule_calculus),
        (4, "Hochschild cohomology", 60, hochschild),
        (5, "matrix factorizations", 30, matrix_factorizations),
        (6, "localized mirror functor", 10, mirror_functor),
        (7, "main theorem", 60, main_theorem),
        (8, "cap product", 5, cap_product),
    ];
    let mut failures = 0;
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(budget);
        let (verdict, detail) = match outcome {
            Ok(d) if elapsed <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("over budget; {d}")),
            Err(e) => ("FAIL", e),
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        println!("{verdict} criterion {n} {name} ({:.2?} / {budget:?}): {detail}", elapsed);
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}

