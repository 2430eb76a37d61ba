//! Setup JSON: a family of categories in `t`, the reference object with
//! `b`, and the branes with their `b₀`.

use serde::{Deserialize, Serialize};

use super::{bulk_from_family, Brane, BulkDatum, MirrorError, MirrorSetup, Poly};
use crate::ainfty::{AInfCategory, CategoryJson};
use crate::laurent::{ParseCoeff, PolyRing};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BraneJson {
    pub name: String,
    pub object: String,
    #[serde(default)]
    pub b0: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetupJson {
    /// Structure constants are polynomials in `t`; `t = 0` is the category.
    pub family: CategoryJson,
    /// The formal variables `x_i` of `b`.
    pub vars: Vec<String>,
    pub reference: String,
    pub b: Vec<(String, String)>,
    pub branes: Vec<BraneJson>,
}

impl SetupJson {
    pub fn to_setup<C: ParseCoeff>(&self) -> Result<(MirrorSetup<C>, BulkDatum<C>), MirrorError> {
        let t = PolyRing::new(["t"]);
        let family: AInfCategory<Poly<C>> = AInfCategory::from_json(&self.family, |s| t.parse(s).map_err(|e| e.to_string()))?;
        let datum = bulk_from_family(&family)?;
        let a = datum.base.map_coeffs(|c| Poly::constant(c.clone()));
        let x = PolyRing::new(self.vars.clone());
        let parse = |s: &str| x.parse::<C>(s).map_err(|e| e.to_string());
        let object = |name: &str| {
            a.objects.iter().position(|o| o == name).map(|i| i as u32).ok_or_else(|| MirrorError::Setup(format!("unknown object {name:?}")))
        };
        let branes = self
            .branes
            .iter()
            .map(|br| Ok(Brane { name: br.name.clone(), obj: object(&br.object)?, b0: a.lin_from(&br.b0, &parse)? }))
            .collect::<Result<Vec<_>, MirrorError>>()?;
        let setup = MirrorSetup {
            category: datum.base.clone(),
            vars: self.vars.clone(),
            reference: object(&self.reference)?,
            b: a.lin_from(&self.b, &parse)?,
            branes,
        };
        Ok((setup, datum))
    }

    /// The inverse of `to_setup` for a family `m + t·q`.
    pub fn from_setup<C: Ring>(setup: &MirrorSetup<C>, datum: &BulkDatum<C>) -> Self {
        let t = PolyRing::new(["t"]);
        let mut family = datum.base.map_coeffs(|c| Poly::constant(c.clone()));
        for (w, v) in datum.q.structure() {
            for (b, c) in v {
                family.add_m_term(w.clone(), *b, &Poly::<C>::var(0).scale(c));
            }
        }
        let x = PolyRing::new(setup.vars.clone());
        let fmt_x = |p: &Poly<C>| x.format(p);
        let a = datum.base.map_coeffs(|c| Poly::constant(c.clone()));
        SetupJson {
            family: family.to_json(&["t".to_string()], |p| t.format(p)),
            vars: setup.vars.clone(),
            reference: a.objects[setup.reference as usize].clone(),
            b: a.lin_to(&setup.b, &fmt_x),
            branes: setup
                .branes
                .iter()
                .map(|br| BraneJson { name: br.name.clone(), object: a.objects[br.obj as usize].clone(), b0: a.lin_to(&br.b0, &fmt_x) })
                .collect(),
        }
    }
}
