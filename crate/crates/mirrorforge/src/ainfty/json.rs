//! Structure-constant JSON for finite A∞-categories.
//!
//! Generators are referenced as `"A|B:name"`; single-object categories
//! may use the bare generator name.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AInfCategory, AinftyError, Basis, Gen, Lin, Spaces, Word};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenJson {
    pub name: String,
    pub deg: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpJson {
    pub k: usize,
    /// Needed for curvature entries, whose input list is empty.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
    pub inputs: Vec<String>,
    pub output: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub homs: BTreeMap<String, Vec<GenJson>>,
    pub m: Vec<OpJson>,
    #[serde(default)]
    pub units: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kmax: Option<usize>,
    /// Formal variables allowed in coefficient expressions.
    #[serde(default)]
    pub vars: Vec<String>,
}

fn bad(msg: impl Into<String>) -> AinftyError {
    AinftyError::Json(msg.into())
}

impl<R: Ring> AInfCategory<R> {
    pub(crate) fn gen_ref(&self, b: Basis) -> String {
        format!("{}|{}:{}", self.objects[b.src as usize], self.objects[b.tgt as usize], self.homs.gen(b).name)
    }

    pub(crate) fn resolve(&self, r: &str) -> Result<Basis, AinftyError> {
        let (pair, name) = match r.split_once(':') {
            Some((p, n)) => (Some(p), n),
            None => (None, r),
        };
        let obj = |s: &str| -> Result<u32, AinftyError> {
            self.objects.iter().position(|o| o == s).map(|i| i as u32).ok_or_else(|| bad(format!("unknown object {s:?}")))
        };
        let (src, tgt) = match pair {
            Some(p) => {
                let (a, b) = p.split_once('|').ok_or_else(|| bad(format!("bad generator reference {r:?}")))?;
                (obj(a)?, obj(b)?)
            }
            None if self.nobjects() == 1 => (0, 0),
            None => return Err(bad(format!("generator {r:?} needs an A|B: prefix"))),
        };
        let idx = self
            .homs
            .gens(src, tgt)
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| bad(format!("unknown generator {r:?}")))?;
        Ok(Basis::new(src, tgt, idx as u32))
    }

    pub fn lin_from(&self, terms: &[(String, String)], parse: &impl Fn(&str) -> Result<R, String>) -> Result<Lin<R>, AinftyError> {
        let mut out = Lin::new();
        for (r, c) in terms {
            let b = self.resolve(r)?;
            let c = parse(c).map_err(bad)?;
            super::lin_add_term(&mut out, b, &c);
        }
        Ok(out)
    }

    pub fn lin_to(&self, v: &Lin<R>, fmt: &impl Fn(&R) -> String) -> Vec<(String, String)> {
        v.iter().map(|(b, c)| (self.gen_ref(*b), fmt(c))).collect()
    }

    pub fn from_json(j: &CategoryJson, parse: impl Fn(&str) -> Result<R, String>) -> Result<Self, AinftyError> {
        let n = j.objects.len();
        let mut homs = Spaces::new(n, n);
        for (key, gens) in &j.homs {
            let (a, b) = key.split_once('|').ok_or_else(|| bad(format!("hom key {key:?} is not A|B")))?;
            let pos = |s: &str| j.objects.iter().position(|o| o == s).ok_or_else(|| bad(format!("unknown object {s:?}")));
            if gens.iter().any(|g| g.deg > 1) {
                return Err(bad(format!("degrees in {key:?} must be 0 or 1")));
            }
            homs.set(pos(a)?, pos(b)?, gens.iter().map(|g| Gen::new(g.name.clone(), g.deg)).collect());
        }
        let mut c = AInfCategory::new(j.objects.clone(), homs, j.kmax.unwrap_or(0));
        for op in &j.m {
            if op.inputs.len() != op.k {
                return Err(bad(format!("m{} entry has {} inputs", op.k, op.inputs.len())));
            }
            let letters = op.inputs.iter().map(|r| c.resolve(r)).collect::<Result<Vec<_>, _>>()?;
            let word = if letters.is_empty() {
                let name = match &op.object {
                    Some(o) => o.as_str(),
                    None if n == 1 => j.objects[0].as_str(),
                    None => return Err(bad("curvature entry needs an object")),
                };
                let obj = j.objects.iter().position(|o| o == name).ok_or_else(|| bad(format!("unknown object {name:?}")))?;
                Word::empty(obj as u32)
            } else {
                Word::new(letters)
            };
            if !word.is_composable() {
                return Err(bad(format!("inputs {:?} are not composable", op.inputs)));
            }
            let out = c.lin_from(&op.output, &parse)?;
            if out.keys().any(|b| b.src != word.obj || b.tgt != word.end()) {
                return Err(bad(format!("output of {:?} lies in the wrong hom space", op.inputs)));
            }
            for (b, v) in out {
                c.add_m_term(word.clone(), b, &v);
            }
        }
        if let Some(k) = j.kmax {
            if c.kmax > k {
                return Err(bad(format!("structure maps of arity {} exceed kmax {k}", c.kmax)));
            }
            c.kmax = k;
        }
        for (name, terms) in &j.units {
            let obj = j.objects.iter().position(|o| o == name).ok_or_else(|| bad(format!("unknown object {name:?}")))?;
            let e = c.lin_from(terms, &parse)?;
            c.set_unit(obj as u32, e);
        }
        Ok(c)
    }

    pub fn to_json(&self, vars: &[String], fmt: impl Fn(&R) -> String) -> CategoryJson {
        let mut homs = BTreeMap::new();
        for a in 0..self.nobjects() as u32 {
            for b in 0..self.nobjects() as u32 {
                let gens = self.homs.gens(a, b);
                if !gens.is_empty() {
                    let key = format!("{}|{}", self.objects[a as usize], self.objects[b as usize]);
                    homs.insert(key, gens.iter().map(|g| GenJson { name: g.name.clone(), deg: g.deg }).collect());
                }
            }
        }
        let m = self
            .structure()
            .into_iter()
            .map(|(w, v)| OpJson {
                k: w.len(),
                object: w.is_empty().then(|| self.objects[w.obj as usize].clone()),
                inputs: w.letters.iter().map(|b| self.gen_ref(*b)).collect(),
                output: self.lin_to(v, &fmt),
            })
            .collect();
        let units = self
            .units
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.as_ref().map(|e| (self.objects[i].clone(), self.lin_to(e, &fmt))))
            .collect();
        CategoryJson { objects: self.objects.clone(), homs, m, units, kmax: Some(self.kmax), vars: vars.to_vec() }
    }
}
