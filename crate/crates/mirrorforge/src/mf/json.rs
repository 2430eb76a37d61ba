//! JSON form `{"ring", "W", "ranks", "Q01", "Q10", "mode"}`.

use serde::{Deserialize, Serialize};

use super::{MatrixFactorization, MfError, MfMode};
use crate::laurent::{LaurentPoly, ParseCoeff, PolyRing};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingJson {
    pub vars: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MfJson {
    pub ring: RingJson,
    #[serde(rename = "W")]
    pub w: String,
    pub ranks: [usize; 2],
    #[serde(rename = "Q01")]
    pub q01: Vec<Vec<String>>,
    #[serde(rename = "Q10")]
    pub q10: Vec<Vec<String>>,
    #[serde(default = "exact")]
    pub mode: MfMode,
}

fn exact() -> MfMode {
    MfMode::Exact
}

impl MfJson {
    pub fn to_mf<C: ParseCoeff>(&self) -> Result<MatrixFactorization<C>, MfError> {
        let ring = PolyRing::new(self.ring.vars.clone());
        let [r0, r1] = self.ranks;
        let trunc = |p: LaurentPoly<C>| match self.mode {
            MfMode::Adic(d) => p.truncated(d),
            MfMode::Exact => p,
        };
        let parse = |rows: &[Vec<String>], n: usize, m: usize, label: &str| -> Result<Vec<Vec<LaurentPoly<C>>>, MfError> {
            if rows.len() != n || rows.iter().any(|r| r.len() != m) {
                return Err(MfError::Json(format!("{label} must be {n}x{m}")));
            }
            rows.iter().map(|r| r.iter().map(|s| Ok(trunc(ring.parse(s)?))).collect()).collect()
        };
        let q01 = parse(&self.q01, r0, r1, "Q01")?;
        let q10 = parse(&self.q10, r1, r0, "Q10")?;
        MatrixFactorization::from_blocks(trunc(ring.parse(&self.w)?), q01, q10, self.mode)
    }

    pub fn from_mf<C: Ring>(m: &MatrixFactorization<C>, ring: &PolyRing) -> Self {
        let (q01, q10) = m.blocks();
        let fmt = |rows: Vec<Vec<LaurentPoly<C>>>| rows.iter().map(|r| r.iter().map(|p| ring.format(p)).collect()).collect();
        MfJson {
            ring: RingJson { vars: ring.vars.clone() },
            w: ring.format(&m.w),
            ranks: m.ranks(),
            q01: fmt(q01),
            q10: fmt(q10),
            mode: m.mode,
        }
    }
}
