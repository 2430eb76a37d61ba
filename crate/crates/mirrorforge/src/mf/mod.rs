//! Matrix factorizations `(E, Q)` with `Q² = W·Id`, their dg and A∞
//! structure, Koszul factorizations at critical points and the map
//! `γ: Jac(W) → HH*`.

mod category;
mod gamma;
mod json;
mod koszul;
mod restrict;

pub use category::{mf_ainfty_category, MfCategory, MfSummand};
pub use gamma::{check_gamma, gamma, GammaInput};
pub use json::MfJson;
pub use koszul::{koszul_mf, local_expansion, KoszulMf};
pub use restrict::{restrict_scalars, Restricted};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hoch::HochError;
use crate::laurent::{total_degree, LaurentError, LaurentPoly};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MfError {
    #[error("not a critical point: {0}")]
    NotCritical(String),
    #[error("matrix shapes do not match: {0}")]
    Shape(String),
    #[error("factorizations of one summand disagree on W")]
    PotentialMismatch,
    #[error("malformed factorization data: {0}")]
    Json(String),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Hoch(#[from] HochError),
}

/// Whether `Q² = W·Id` is meant exactly or modulo `𝔪^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MfMode {
    Exact,
    Adic(u32),
}

type Matrix<C> = Vec<Vec<LaurentPoly<C>>>;

fn zeros<C: Ring>(rows: usize, cols: usize) -> Matrix<C> {
    vec![vec![LaurentPoly::zero(); cols]; rows]
}

fn matmul<C: Ring>(a: &Matrix<C>, b: &Matrix<C>) -> Matrix<C> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(LaurentPoly::zero(), |acc, k| acc.add(&row[k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

/// A ℤ/2-graded free module `E` with an odd endomorphism `Q`.
///
/// `q[i][j]` is the coefficient of `e_i` in `Q(e_j)`. Basis elements carry
/// their own degrees, so any ordering of `E⁰ ⊕ E¹` is allowed.
#[derive(Debug, Clone)]
pub struct MatrixFactorization<C> {
    pub w: LaurentPoly<C>,
    pub degs: Vec<u8>,
    pub q: Matrix<C>,
    pub mode: MfMode,
}

impl<C: Ring> MatrixFactorization<C> {
    pub fn new(w: LaurentPoly<C>, degs: Vec<u8>, q: Matrix<C>, mode: MfMode) -> Result<Self, MfError> {
        let n = degs.len();
        if q.len() != n || q.iter().any(|r| r.len() != n) {
            return Err(MfError::Shape(format!("Q must be {n}x{n}")));
        }
        for (i, row) in q.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if degs[i] == degs[j] && !x.is_zero() {
                    return Err(MfError::Shape(format!("Q is not odd at ({i}, {j})")));
                }
            }
        }
        Ok(MatrixFactorization { w, degs, q, mode })
    }

    /// Even basis first: `Q₀₁: E¹ → E⁰` is `r0 × r1`, `Q₁₀: E⁰ → E¹` is `r1 × r0`.
    pub fn from_blocks(w: LaurentPoly<C>, q01: Matrix<C>, q10: Matrix<C>, mode: MfMode) -> Result<Self, MfError> {
        let r0 = q01.len();
        let r1 = q10.len();
        if q01.iter().any(|r| r.len() != r1) || q10.iter().any(|r| r.len() != r0) {
            return Err(MfError::Shape(format!("Q01 must be {r0}x{r1} and Q10 {r1}x{r0}")));
        }
        let mut q = zeros(r0 + r1, r0 + r1);
        for i in 0..r0 {
            for j in 0..r1 {
                q[i][r0 + j] = q01[i][j].clone();
                q[r0 + j][i] = q10[j][i].clone();
            }
        }
        let degs = (0..r0 + r1).map(|i| u8::from(i >= r0)).collect();
        Self::new(w, degs, q, mode)
    }

    pub fn dim(&self) -> usize {
        self.degs.len()
    }

    pub fn ranks(&self) -> [usize; 2] {
        let odd = self.degs.iter().filter(|d| **d == 1).count();
        [self.dim() - odd, odd]
    }

    /// The blocks `(Q₀₁, Q₁₀)` in the order the basis lists each parity.
    pub fn blocks(&self) -> (Matrix<C>, Matrix<C>) {
        let even: Vec<usize> = (0..self.dim()).filter(|&i| self.degs[i] == 0).collect();
        let odd: Vec<usize> = (0..self.dim()).filter(|&i| self.degs[i] == 1).collect();
        let pick = |rows: &[usize], cols: &[usize]| -> Matrix<C> {
            rows.iter().map(|&i| cols.iter().map(|&j| self.q[i][j].clone()).collect()).collect()
        };
        (pick(&even, &odd), pick(&odd, &even))
    }
}

/// Residual of `Q² − W·Id` with its verdict.
#[derive(Debug, Clone)]
pub struct MfValidation<C> {
    pub passed: bool,
    pub mode: MfMode,
    pub residual: Matrix<C>,
    /// Lowest total degree in the residual; `None` when it vanishes.
    pub order: Option<i32>,
}

impl<C: Ring> MfValidation<C> {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let detail = match (self.order, self.mode) {
            (None, _) => "residual 0".to_string(),
            (Some(o), MfMode::Adic(d)) => format!("residual of adic order {o} (need {d})"),
            (Some(o), MfMode::Exact) => format!("nonzero residual of order {o}"),
        };
        format!("{verdict} Q^2 = W*Id: {detail}")
    }
}

/// Computes `Q² − W·Id` without truncation and judges it by the mode.
pub fn validate_mf<C: Ring>(m: &MatrixFactorization<C>) -> MfValidation<C> {
    let q: Matrix<C> = m.q.iter().map(|r| r.iter().map(LaurentPoly::exact).collect()).collect();
    let mut residual = matmul(&q, &q);
    let w = m.w.exact();
    for (i, row) in residual.iter_mut().enumerate() {
        row[i] = row[i].sub(&w);
    }
    let order = residual.iter().flatten().filter_map(|x| x.terms().map(|(e, _)| total_degree(e)).min()).min();
    let passed = match (order, m.mode) {
        (None, _) => true,
        (Some(o), MfMode::Adic(d)) => o >= d as i32,
        (Some(_), MfMode::Exact) => false,
    };
    MfValidation { passed, mode: m.mode, residual, order }
}

/// An `R`-linear map `source → target` of pure degree; `entries` is
/// `dim(target) × dim(source)`.
#[derive(Debug, Clone)]
pub struct MFMorphism<C> {
    pub source: Arc<MatrixFactorization<C>>,
    pub target: Arc<MatrixFactorization<C>>,
    pub degree: u8,
    pub entries: Matrix<C>,
}

impl<C: Ring> MFMorphism<C> {
    pub fn new(
        source: Arc<MatrixFactorization<C>>,
        target: Arc<MatrixFactorization<C>>,
        degree: u8,
        entries: Matrix<C>,
    ) -> Result<Self, MfError> {
        let (rows, cols) = (target.dim(), source.dim());
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(MfError::Shape(format!("morphism must be {rows}x{cols}")));
        }
        for i in 0..rows {
            for j in 0..cols {
                if target.degs[i] ^ source.degs[j] != degree & 1 && !entries[i][j].is_zero() {
                    return Err(MfError::Shape(format!("entry ({i}, {j}) has the wrong parity")));
                }
            }
        }
        Ok(MFMorphism { source, target, degree: degree & 1, entries })
    }

    pub fn zero(source: Arc<MatrixFactorization<C>>, target: Arc<MatrixFactorization<C>>, degree: u8) -> Self {
        let entries = zeros(target.dim(), source.dim());
        MFMorphism { source, target, degree: degree & 1, entries }
    }

    pub fn identity(e: Arc<MatrixFactorization<C>>) -> Self {
        let mut out = Self::zero(e.clone(), e, 0);
        for i in 0..out.entries.len() {
            out.entries[i][i] = LaurentPoly::one();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Ring::is_zero)
    }
}

/// `δΦ = Q_F Φ − (-1)^{|Φ|} Φ Q_E` for `Φ: E → F`.
pub fn mf_diff<C: Ring>(phi: &MFMorphism<C>) -> MFMorphism<C> {
    let left = matmul(&phi.target.q, &phi.entries);
    let right = matmul(&phi.entries, &phi.source.q);
    let sign = LaurentPoly::one().signed(phi.degree == 0);
    let entries = left
        .iter()
        .zip(&right)
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(&y.mul(&sign))).collect())
        .collect();
    MFMorphism { source: phi.source.clone(), target: phi.target.clone(), degree: phi.degree ^ 1, entries }
}

impl<C: Ring> PartialEq for MatrixFactorization<C> {
    fn eq(&self, other: &Self) -> bool {
        self.w == other.w && self.degs == other.degs && self.q == other.q && self.mode == other.mode
    }
}

impl<C: Ring> PartialEq for MFMorphism<C> {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.degree == other.degree && self.entries == other.entries
    }
}

impl<C: Ring> fmt::Display for MatrixFactorization<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [r0, r1] = self.ranks();
        write!(f, "MF of W = {} with ranks ({r0}, {r1})", self.w)
    }
}
