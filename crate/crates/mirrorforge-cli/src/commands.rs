//! One function per subcommand; each returns a report or a validation error.

use std::path::Path;
use std::sync::Arc;

use mirrorforge::ainfty::{check_ainfty, check_unit, AInfCategory, CategoryJson};
use mirrorforge::bimod::diagonal;
use mirrorforge::hoch::{hh_cohomology, hochschild_diff, random_cochain};
use mirrorforge::laurent::PolyRing;
use mirrorforge::mf::{check_gamma, mf_ainfty_category, validate_mf, GammaInput, MfJson, MfSummand};
use mirrorforge::mirror::{builtin_setup, check_cap_scalar, check_main_theorem, sample_chains, Mirror, SetupJson};
use mirrorforge::report::CheckReport;
use mirrorforge::toric::{self, ToricError, ToricFanoData};
use mirrorforge::{NovScalar, Rational, Ring};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::report::Report;

/// A malformed or invalid input; exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invalid(pub String);

impl<E: std::fmt::Display> From<E> for Invalid {
    fn from(e: E) -> Self {
        Invalid(e.to_string())
    }
}

type Result<T> = std::result::Result<T, Invalid>;

pub const SEED_VAR: &str = "MIRRORFORGE_SEED";

pub fn seed() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| Invalid(format!("{SEED_VAR} must be an unsigned integer, got {s:?}"))),
        Err(_) => Ok(0),
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Invalid(format!("{}: malformed JSON at line {} column {}: {e}", path.display(), e.line(), e.column())))
}

/// A built-in name or a path to a JSON file.
#[derive(Debug, Clone)]
pub enum Source {
    Builtin(String),
    File(std::path::PathBuf),
}

impl Source {
    pub fn label(&self) -> String {
        match self {
            Source::Builtin(n) => format!("builtin:{n}"),
            Source::File(p) => p.display().to_string(),
        }
    }
}

fn polytope(src: &Source) -> Result<ToricFanoData> {
    match src {
        Source::Builtin(n) => Ok(toric::builtin(n)?),
        Source::File(p) => read_json(p),
    }
}

pub fn potential(src: &Source) -> Result<Report> {
    let data = polytope(src)?;
    let p = toric::potential(&data)?;
    let mut rep = Report::new("potential", src.label());
    rep.param("dim", data.dim).param("facets", data.facets.len());
    rep.note(format!("potential: {}", p.ring.format(&p.poly)));
    let values: Vec<String> = p.facet_values.iter().map(|v| v.to_string()).collect();
    rep.note(format!("facet values at the basepoint: [{}]", values.join(", ")));
    let mut check = CheckReport::new("fan is smooth, normals primitive, basepoint interior");
    check.check(true, String::new);
    rep.push(check);
    Ok(rep)
}

pub fn mirror_check(src: &Source, t0: &Rational) -> Result<Report> {
    if !t0.is_positive() || *t0 >= Rational::one() {
        return Err(Invalid("t0 must lie in (0, 1)".into()));
    }
    let data = polytope(src)?;
    let p = toric::potential(&data)?;
    let mut rep = Report::new("mirror-check", src.label());
    rep.param("t0", t0);
    let (_, dim) = toric::jacobian_ring(&p)?;
    rep.note(format!("dim Jac = {dim}"));

    let mut crit = CheckReport::new(format!("critical point multiplicities sum to dim Jac = {dim}"));
    let mut morse = CheckReport::new("every critical point is Morse");
    match toric::critical_points(&p, t0) {
        Ok(pts) => {
            crit.check(pts.iter().map(|c| c.multiplicity).sum::<usize>() == dim, || format!("{} points", pts.len()));
            for (i, c) in pts.iter().enumerate() {
                let coords: Vec<String> = c.coords.iter().map(|(re, im)| format!("{re:.6}{im:+.6}i")).collect();
                rep.note(format!(
                    "critical point {i}: y = ({}), value {:.6}{:+.6}i, |det Hess| = {:.3e}",
                    coords.join(", "),
                    c.critical_value.0,
                    c.critical_value.1,
                    c.hessian_det
                ));
                morse.check(c.morse, || format!("point {i} has |det Hess| = {:.3e}", c.hessian_det));
            }
        }
        Err(e @ ToricError::MultiplicityMismatch { .. }) => crit.fail(|| e.to_string()),
        Err(e) => return Err(e.into()),
    }
    rep.push(crit);
    rep.push(morse);

    let pres = toric::presentation_for(&data)?;
    let mut ks = CheckReport::new("ks kills the quantum cohomology relations and ranks agree");
    match toric::ks_divisor_check(&pres, &p) {
        Ok(r) => {
            ks.check(true, String::new);
            rep.note(format!(
                "{} relations checked; QH rank {}, Jacobian dim {}, image rank {}",
                r.relations_checked, r.qh_rank, r.jacobian_dim, r.image_rank
            ));
        }
        Err(e @ (ToricError::RelationNotKilled { .. } | ToricError::RankMismatch { .. })) => ks.check(false, || e.to_string()),
        Err(e) => return Err(e.into()),
    }
    rep.push(ks);
    Ok(rep)
}

pub fn theorem(src: &Source, rmax: usize, kmax: usize) -> Result<Report> {
    let (setup, datum) = match src {
        Source::Builtin(n) => builtin_setup::<Rational>(n).ok_or_else(|| Invalid(format!("unknown built-in setup {n:?}")))?,
        Source::File(p) => read_json::<SetupJson>(p)?.to_setup::<Rational>()?,
    };
    let mirror = Mirror::build(setup)?;
    let bulk = datum.fold(&mirror)?;
    let mut rep = Report::new("theorem", src.label());
    rep.param("rmax", rmax).param("smax", 1).param("smax (r <= 1)", 2).param("functor arity", kmax);
    rep.note("weak Maurer-Cartan decorations are folded into the deformed category before cochains are built");
    rep.push(mirror.check_objects());
    rep.push(mirror.check_functor(kmax));
    let t = check_main_theorem(&mirror, &bulk, rmax)?;
    rep.note(t.header.clone());
    for c in t.checks {
        rep.push(c);
    }
    Ok(rep)
}

fn rational_category(j: &CategoryJson) -> Result<AInfCategory<Rational>> {
    if !j.vars.is_empty() {
        return Err(Invalid("Hochschild cohomology needs scalar structure constants; remove \"vars\"".into()));
    }
    Ok(AInfCategory::from_json(j, |s| s.parse::<Rational>().map_err(|e| e.to_string()))?)
}

pub fn hochschild(src: &Source, lmax: usize, kmax: Option<usize>) -> Result<Report> {
    let j: CategoryJson = match src {
        Source::Builtin(n) => crate::examples::category(n).ok_or_else(|| Invalid(format!("unknown built-in category {n:?}")))?,
        Source::File(p) => read_json(p)?,
    };
    let cat = Arc::new(rational_category(&j)?);
    let seed = seed()?;
    let mut rep = Report::new("hochschild", src.label());
    rep.param("lmax", lmax).param("kmax", cat.kmax).param("seed", seed);
    rep.push(check_ainfty(&cat, kmax));
    for o in 0..cat.nobjects() as u32 {
        rep.push(check_unit(&cat, o));
    }
    let diag = Arc::new(diagonal(cat.clone()));

    let mut sq = CheckReport::new(format!("b*^2 = 0 on random cochains of length <= 1, window {lmax}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for degree in [0, 1] {
        for _ in 0..8 {
            let phi = random_cochain(cat.clone(), diag.clone(), degree, 1, 0.6, &mut rng);
            match hochschild_diff(&phi, lmax).and_then(|d| hochschild_diff(&d, lmax)) {
                Ok(dd) => sq.check(dd.is_zero(), || dd.fmt()),
                Err(e) => return Err(e.into()),
            }
        }
    }
    rep.push(sq);

    let (hh, _) = hh_cohomology(cat, diag, lmax, &[Rational::one()])?;
    rep.note(hh.line());
    if !hh.stable {
        rep.warnings.push(format!("NotStabilized: {}", hh.line()));
    }
    Ok(rep)
}

/// A single factorization or a list of them.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum MfFile {
    One(MfJson),
    Many(Vec<MfJson>),
}

pub fn mf(path: &Path) -> Result<Report> {
    let list = match read_json::<MfFile>(path)? {
        MfFile::One(m) => vec![m],
        MfFile::Many(v) => v,
    };
    let mut rep = Report::new("mf", path.display().to_string());
    for (i, j) in list.iter().enumerate() {
        let m = j.to_mf::<NovScalar>()?;
        let v = validate_mf(&m);
        let mut check = CheckReport::new(format!("factorization {i} (W = {}, ranks {:?}, {:?})", j.w, m.ranks(), m.mode));
        check.check(v.passed, || v.line());
        rep.push(check);
    }
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedMf {
    pub name: String,
    pub mf: MfJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummandJson {
    pub name: String,
    pub objects: Vec<NamedMf>,
}

/// The local Jacobian data of one summand, in its local coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaCheckJson {
    pub summand: String,
    pub vars: Vec<String>,
    pub reps: Vec<String>,
    pub ideal: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaBundle {
    pub summands: Vec<SummandJson>,
    pub checks: Vec<GammaCheckJson>,
    /// Number of sampled Hochschild chains for the cap check.
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_samples() -> usize {
    4
}

pub fn gamma(src: &Source, dmax: u32, window: usize) -> Result<Report> {
    let bundle: GammaBundle = match src {
        Source::Builtin(n) => crate::examples::gamma_bundle(n).ok_or_else(|| Invalid(format!("unknown built-in bundle {n:?}")))?,
        Source::File(p) => read_json(p)?,
    };
    if dmax < 2 {
        return Err(Invalid("dmax must be at least 2".into()));
    }
    let summands = bundle
        .summands
        .iter()
        .map(|s| {
            let objects = s.objects.iter().map(|o| Ok((o.name.clone(), o.mf.to_mf::<NovScalar>()?))).collect::<Result<Vec<_>>>()?;
            Ok(MfSummand { name: s.name.clone(), objects })
        })
        .collect::<Result<Vec<_>>>()?;
    let m = mf_ainfty_category(&summands)?;
    let seed = seed()?;
    let mut rep = Report::new("gamma", src.label());
    rep.param("order (dmax)", dmax).param("window (lmax)", window).param("samples", bundle.samples).param("seed", seed);
    let mut all_reps = Vec::new();
    for c in &bundle.checks {
        let summand = m.summands.iter().position(|s| *s == c.summand).ok_or_else(|| Invalid(format!("unknown summand {:?}", c.summand)))?;
        let ring = PolyRing::new(c.vars.clone());
        let parse = |xs: &[String]| xs.iter().map(|s| ring.parse::<NovScalar>(s)).collect::<std::result::Result<Vec<_>, _>>();
        let reps = parse(&c.reps)?;
        let ideal = parse(&c.ideal)?;
        all_reps.extend(reps.iter().cloned());
        let input = GammaInput { summand, reps, ideal, nvars: c.vars.len(), order: dmax, window };
        for r in check_gamma(&m, &input)? {
            rep.push(r);
        }
    }
    all_reps.dedup();
    let chains = sample_chains(&m.cat, 2, bundle.samples, &mut ChaCha8Rng::seed_from_u64(seed));
    rep.push(check_cap_scalar(&m, &all_reps, &chains));
    Ok(rep)
}
