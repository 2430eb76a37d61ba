//! Built-in inputs, by name, and their JSON files.

use std::path::Path;

use mirrorforge::ainfty::{curved_clifford, CategoryJson};
use mirrorforge::laurent::PolyRing;
use mirrorforge::mf::{koszul_mf, MfJson};
use mirrorforge::mirror::{builtin_setups, SetupJson};
use mirrorforge::toric;
use mirrorforge::{NovScalar, Rational, Ring};

use crate::commands::{GammaBundle, GammaCheckJson, NamedMf, SummandJson};

pub const POLYTOPES: [&str; 5] = ["CP1", "CP2", "CP3", "CP4", "CP1xCP1"];
pub const CATEGORIES: [&str; 3] = ["clifford-e2", "clifford2", "dual-numbers"];
pub const BUNDLES: [&str; 2] = ["x2", "cp1"];

pub fn category(name: &str) -> Option<CategoryJson> {
    let u: Vec<i64> = match name {
        "clifford-e2" => vec![1],
        "clifford2" => vec![1, 1],
        "dual-numbers" => vec![0],
        _ => return None,
    };
    let c = curved_clifford(Rational::zero(), u.into_iter().map(Rational::from_i64).collect());
    Some(c.to_json(&[], |x| x.to_string()))
}

fn local(w: &str, eta: i64, d: u32) -> (MfJson, String) {
    let ring = PolyRing::numbered("y", 1);
    let w = ring.parse::<NovScalar>(w).expect("built-in potential");
    let k = koszul_mf(&w, &[NovScalar::from_i64(eta)], d).expect("built-in factorization");
    let x = PolyRing::new(["x"]);
    (MfJson::from_mf(&k.mf, &x), x.format(&k.mf.w.derivative(0)))
}

pub fn gamma_bundle(name: &str) -> Option<GammaBundle> {
    let points: Vec<(String, String, i64, u32)> = match name {
        "x2" => vec![("0".into(), "y1^2".into(), 0, 4)],
        "cp1" => {
            let p = toric::potential(&toric::builtin("CP1").ok()?).ok()?;
            let w = p.ring.format(&p.poly);
            vec![("y=1".into(), w.clone(), 1, 3), ("y=-1".into(), w, -1, 3)]
        }
        _ => return None,
    };
    let mut summands = Vec::new();
    let mut checks = Vec::new();
    for (s, w, eta, d) in points {
        let (mf, ideal) = local(&w, eta, d);
        summands.push(SummandJson { name: s.clone(), objects: vec![NamedMf { name: "K".into(), mf }] });
        checks.push(GammaCheckJson { summand: s, vars: vec!["x".into()], reps: vec!["1".into()], ideal: vec![ideal] });
    }
    Some(GammaBundle { summands, checks, samples: 4 })
}

fn write(dir: &Path, file: String, value: &impl serde::Serialize) -> std::io::Result<String> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    std::fs::write(dir.join(&file), text)?;
    Ok(file)
}

/// Writes every built-in input to `dir`; returns the file names.
pub fn write_all(dir: &Path) -> std::io::Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    for n in POLYTOPES {
        out.push(write(dir, format!("polytope-{n}.json"), &toric::builtin(n).expect("built-in"))?);
    }
    for n in CATEGORIES {
        out.push(write(dir, format!("category-{n}.json"), &category(n).expect("built-in"))?);
    }
    for n in BUNDLES {
        let b = gamma_bundle(n).expect("built-in");
        out.push(write(dir, format!("mf-{n}.json"), &b.summands.iter().map(|s| s.objects[0].mf.clone()).collect::<Vec<_>>())?);
        out.push(write(dir, format!("gamma-{n}.json"), &b)?);
    }
    for (n, setup, datum) in builtin_setups::<Rational>() {
        out.push(write(dir, format!("setup-{n}.json"), &SetupJson::from_setup(&setup, &datum))?);
    }
    Ok(out)
}

pub fn listing() -> Vec<String> {
    let setups: Vec<&str> = builtin_setups::<Rational>().into_iter().map(|(n, _, _)| n).collect();
    vec![
        format!("polytopes (potential, mirror-check): {}", POLYTOPES.join(", ")),
        format!("categories (hochschild): {}", CATEGORIES.join(", ")),
        format!("matrix factorization bundles (gamma): {}", BUNDLES.join(", ")),
        format!("mirror setups (theorem): {}", setups.join(", ")),
    ]
}
