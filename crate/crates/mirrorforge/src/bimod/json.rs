//! Structure-constant JSON for bimodules over categories given separately.
//!
//! Category letters use the category schema's `"A|B:name"` references;
//! module generators are `"X|Y:name"` with `X` a left and `Y` a right object.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AInfBimodule, BiWord, BimodError};
use crate::ainfty::{lin_add_term, AInfCategory, Basis, Gen, GenJson, Lin, Spaces};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MuJson {
    pub r: usize,
    pub s: usize,
    pub left: Vec<String>,
    pub m: String,
    pub right: Vec<String>,
    pub output: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BimoduleJson {
    pub module: BTreeMap<String, Vec<GenJson>>,
    pub mu: Vec<MuJson>,
}

fn bad(msg: impl Into<String>) -> BimodError {
    BimodError::Json(msg.into())
}

fn obj_of<R>(c: &AInfCategory<R>, s: &str) -> Result<u32, BimodError> {
    c.objects.iter().position(|o| o == s).map(|i| i as u32).ok_or_else(|| bad(format!("unknown object {s:?}")))
}

impl<R: Ring> AInfBimodule<R> {
    fn resolve_m(&self, r: &str) -> Result<Basis, BimodError> {
        let (pair, name) = match r.split_once(':') {
            Some((p, n)) => (Some(p), n),
            None => (None, r),
        };
        let (src, tgt) = match pair {
            Some(p) => {
                let (a, b) = p.split_once('|').ok_or_else(|| bad(format!("bad module reference {r:?}")))?;
                (obj_of(&self.left, a)?, obj_of(&self.right, b)?)
            }
            None if self.left.nobjects() == 1 && self.right.nobjects() == 1 => (0, 0),
            None => return Err(bad(format!("module generator {r:?} needs an X|Y: prefix"))),
        };
        let idx = self
            .spaces
            .gens(src, tgt)
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| bad(format!("unknown module generator {r:?}")))?;
        Ok(Basis::new(src, tgt, idx as u32))
    }

    fn m_ref(&self, b: Basis) -> String {
        format!("{}|{}:{}", self.left.objects[b.src as usize], self.right.objects[b.tgt as usize], self.spaces.gen(b).name)
    }

    pub fn from_json(
        left: Arc<AInfCategory<R>>,
        right: Arc<AInfCategory<R>>,
        j: &BimoduleJson,
        parse: impl Fn(&str) -> Result<R, String>,
    ) -> Result<Self, BimodError> {
        let mut spaces = Spaces::new(left.nobjects(), right.nobjects());
        for (key, gens) in &j.module {
            let (a, b) = key.split_once('|').ok_or_else(|| bad(format!("module key {key:?} is not X|Y")))?;
            if gens.iter().any(|g| g.deg > 1) {
                return Err(bad(format!("degrees in {key:?} must be 0 or 1")));
            }
            let (a, b) = (obj_of(&left, a)?, obj_of(&right, b)?);
            spaces.set(a as usize, b as usize, gens.iter().map(|g| Gen::new(g.name.clone(), g.deg)).collect());
        }
        let mut out = AInfBimodule::new(left, right, spaces);
        for e in &j.mu {
            if e.left.len() != e.r || e.right.len() != e.s {
                return Err(bad(format!("mu({}, {}) entry has {} left and {} right inputs", e.r, e.s, e.left.len(), e.right.len())));
            }
            let letters = |c: &AInfCategory<R>, refs: &[String]| -> Result<Vec<Basis>, BimodError> {
                refs.iter().map(|r| c.resolve(r).map_err(|err| bad(err.to_string()))).collect()
            };
            let w = BiWord::new(letters(&out.left, &e.left)?, out.resolve_m(&e.m)?, letters(&out.right, &e.right)?);
            let chained = w.left.windows(2).all(|p| p[0].tgt == p[1].src)
                && w.left.last().map_or(true, |b| b.tgt == w.m.src)
                && w.right.first().map_or(true, |b| b.src == w.m.tgt)
                && w.right.windows(2).all(|p| p[0].tgt == p[1].src);
            if !chained {
                return Err(bad(format!("inputs of mu({}, {}) at {:?} are not composable", e.r, e.s, e.m)));
            }
            let mut v = Lin::new();
            for (r, c) in &e.output {
                let b = out.resolve_m(r)?;
                if b.src != w.start() || b.tgt != w.end() {
                    return Err(bad(format!("output {r:?} lies in the wrong module space")));
                }
                lin_add_term(&mut v, b, &parse(c).map_err(bad)?);
            }
            let mut acc = out.mu(&w).cloned().unwrap_or_default();
            for (b, c) in v {
                lin_add_term(&mut acc, b, &c);
            }
            out.set_mu(w, acc);
        }
        Ok(out)
    }

    pub fn to_json(&self, fmt: impl Fn(&R) -> String) -> BimoduleJson {
        let mut module = BTreeMap::new();
        for a in 0..self.left.nobjects() as u32 {
            for b in 0..self.right.nobjects() as u32 {
                let gens = self.spaces.gens(a, b);
                if !gens.is_empty() {
                    let key = format!("{}|{}", self.left.objects[a as usize], self.right.objects[b as usize]);
                    module.insert(key, gens.iter().map(|g| GenJson { name: g.name.clone(), deg: g.deg }).collect());
                }
            }
        }
        let mu = self
            .structure()
            .into_iter()
            .map(|(w, v)| MuJson {
                r: w.r(),
                s: w.s(),
                left: w.left.iter().map(|b| self.left.gen_ref(*b)).collect(),
                m: self.m_ref(w.m),
                right: w.right.iter().map(|b| self.right.gen_ref(*b)).collect(),
                output: v.iter().map(|(b, c)| (self.m_ref(*b), fmt(c))).collect(),
            })
            .collect();
        BimoduleJson { module, mu }
    }
}
