//! Toric Fano data, the Landau–Ginzburg potential, its Jacobian ring and
//! critical points, and the divisor-level comparison with quantum cohomology.

use nalgebra::{Complex, DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{ComplexNum, NovScalar, Rational};
use crate::laurent::{
    groebner_basis, groebner_basis_polynomial, Ideal, LaurentError, LaurentPoly, PolyRing, QuotientBasis,
};
use crate::linalg::{dense_rank, LinalgError};
use crate::ring::Ring;

pub type NovPoly = LaurentPoly<NovScalar>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ToricError {
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("unknown built-in {0:?}")]
    UnknownBuiltin(String),
    #[error("Jacobian ring is not zero-dimensional")]
    NotZeroDimensional,
    #[error("Newton iteration diverged after {restarts} restarts")]
    NewtonDivergence { restarts: usize },
    #[error("critical point multiplicities sum to {found}, quotient dimension is {expected}")]
    MultiplicityMismatch { expected: usize, found: usize },
    #[error("relation {relation} maps to {image}, not 0")]
    RelationNotKilled { relation: String, image: String },
    #[error("rank mismatch: QH presentation {qh}, Jacobian {jac}, image {image}")]
    RankMismatch { qh: usize, jac: usize, image: usize },
    #[error("t0 must lie in (0, 1)")]
    BadT0,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub constant: Rational,
}

/// Moment polytope `{u : ⟨v_j, u⟩ − λ_j ≥ 0}` with an interior basepoint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToricFanoData {
    pub name: String,
    pub dim: usize,
    pub facets: Vec<Facet>,
    pub basepoint: Vec<Rational>,
    /// Replaces the built-in quantum cohomology relations (strings in `z1…zm`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qh_relations: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub name: String,
    pub dim: usize,
    pub facets: usize,
    /// `l_j(u)` at the basepoint.
    pub facet_values: Vec<Rational>,
}

impl ToricFanoData {
    /// `l_j(u) = ⟨v_j, u⟩ − λ_j`
    pub fn facet_value(&self, j: usize, u: &[Rational]) -> Rational {
        let f = &self.facets[j];
        f.normal
            .iter()
            .zip(u)
            .fold(Rational::zero(), |acc, (&v, ui)| acc.add(&Rational::from_int(v).mul(ui)))
            .sub(&f.constant)
    }

    pub fn facet_values(&self) -> Vec<Rational> {
        (0..self.facets.len()).map(|j| self.facet_value(j, &self.basepoint)).collect()
    }

    pub fn with_basepoint(&self, u: Vec<Rational>) -> Self {
        ToricFanoData { basepoint: u, ..self.clone() }
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

fn det_i128(m: &[Vec<i64>]) -> i128 {
    // Bareiss fraction-free elimination
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Check primitivity, spanning, and that the basepoint is interior.
pub fn validate(data: &ToricFanoData) -> Result<ValidationReport, ToricError> {
    let n = data.dim;
    let bad = |s: String| Err(ToricError::InvalidFan(s));
    if n == 0 {
        return bad("dimension must be positive".into());
    }
    if data.basepoint.len() != n {
        return bad(format!("basepoint has {} entries, dimension is {n}", data.basepoint.len()));
    }
    for (j, f) in data.facets.iter().enumerate() {
        if f.normal.len() != n {
            return bad(format!("normal {} has length {}, dimension is {n}", j + 1, f.normal.len()));
        }
        let g = f.normal.iter().fold(0, |g, &x| gcd_i64(g, x));
        if g != 1 {
            return bad(format!("non-primitive normal {:?}", f.normal));
        }
    }
    // the normals span ℤⁿ iff the maximal minors have gcd 1
    let g = subsets(data.facets.len(), n).iter().fold(0i128, |g, s| {
        let m: Vec<Vec<i64>> = s.iter().map(|&j| data.facets[j].normal.clone()).collect();
        num_integer::gcd(g, det_i128(&m))
    });
    if g != 1 {
        return bad("normals do not span the lattice".into());
    }
    let values = data.facet_values();
    for (j, l) in values.iter().enumerate() {
        if l.is_zero() {
            return bad(format!("boundary basepoint on facet {}", j + 1));
        }
        if l.is_negative() {
            return bad(format!("basepoint outside facet {}", j + 1));
        }
    }
    Ok(ValidationReport { name: data.name.clone(), dim: n, facets: data.facets.len(), facet_values: values })
}

/// `𝔓𝔒 = Σ_j T^{l_j(u)} y^{v_j}` together with its facet monomials.
#[derive(Clone, Debug)]
pub struct Potential {
    pub ring: PolyRing,
    pub poly: NovPoly,
    pub z: Vec<NovPoly>,
    pub facet_values: Vec<Rational>,
}

impl Potential {
    /// Common root denominator `N` of the `T`-exponents.
    pub fn root_denominator(&self) -> u32 {
        self.facet_values.iter().fold(1u32, |acc, l| {
            num_integer::lcm(acc, u32::try_from(l.denom()).expect("small denominator"))
        })
    }

    pub fn dim(&self) -> usize {
        self.ring.nvars()
    }

    /// The Jacobian ideal generators `y_i ∂𝔓𝔒/∂y_i`.
    pub fn jacobian_generators(&self) -> Vec<NovPoly> {
        (0..self.dim()).map(|i| self.poly.log_derivative(i)).collect()
    }
}

pub fn potential(data: &ToricFanoData) -> Result<Potential, ToricError> {
    let report = validate(data)?;
    let z: Vec<NovPoly> = data
        .facets
        .iter()
        .zip(&report.facet_values)
        .map(|(f, l)| LaurentPoly::monomial(f.normal.iter().map(|&v| v as i32).collect(), NovScalar::t_pow(l)))
        .collect();
    let poly = z.iter().fold(NovPoly::zero(), |acc, t| acc.add(t));
    Ok(Potential { ring: PolyRing::numbered("y", data.dim), poly, z, facet_values: report.facet_values })
}

/// Gröbner data and dimension of `Jac(𝔓𝔒)`.
pub fn jacobian_ring(p: &Potential) -> Result<(QuotientBasis<NovScalar>, usize), ToricError> {
    let q = groebner_basis(&Ideal::new(p.dim(), p.jacobian_generators()))?;
    let dim = q.require_zero_dimensional().map_err(|_| ToricError::NotZeroDimensional)?;
    Ok((q, dim))
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalPoint {
    pub coords: Vec<(f64, f64)>,
    pub critical_value: (f64, f64),
    /// `|det|` of the Hessian of 𝔓𝔒 in logarithmic coordinates.
    pub hessian_det: f64,
    pub morse: bool,
    pub multiplicity: usize,
    pub residual: f64,
}

pub const NEWTON_TOL: f64 = 1e-12;
pub const NEWTON_MAX_ITER: usize = 100;
pub const MORSE_TOL: f64 = 1e-8;

type C64 = Complex<f64>;

fn to_c64(z: ComplexNum) -> C64 {
    z.value()
}

/// Numeric data of 𝔓𝔒 at `T = t0`: terms `(exponent, coefficient)`.
struct NumericPotential {
    terms: Vec<(Vec<i32>, C64)>,
    n: usize,
}

impl NumericPotential {
    fn new(p: &Potential, t0: f64) -> Result<Self, ToricError> {
        let terms = p
            .poly
            .terms()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.resize(p.dim(), 0);
                let v = c.specialize_complex(ComplexNum::from_f64(t0)).map_err(|_| ToricError::BadT0)?;
                Ok((e, to_c64(v)))
            })
            .collect::<Result<_, ToricError>>()?;
        Ok(NumericPotential { terms, n: p.dim() })
    }

    fn monomial(e: &[i32], y: &[C64]) -> C64 {
        e.iter().zip(y).fold(C64::new(1.0, 0.0), |acc, (&a, yi)| acc * yi.powi(a))
    }

    fn value(&self, y: &[C64]) -> C64 {
        self.terms.iter().map(|(e, c)| c * Self::monomial(e, y)).sum()
    }

    /// `F_i = y_i ∂W/∂y_i`
    fn gradient(&self, y: &[C64]) -> DVector<C64> {
        DVector::from_fn(self.n, |i, _| {
            self.terms.iter().map(|(e, c)| c * e[i] as f64 * Self::monomial(e, y)).sum()
        })
    }

    /// Hessian in logarithmic coordinates.
    fn log_hessian(&self, y: &[C64]) -> DMatrix<C64> {
        DMatrix::from_fn(self.n, self.n, |i, j| {
            self.terms.iter().map(|(e, c)| c * (e[i] * e[j]) as f64 * Self::monomial(e, y)).sum()
        })
    }

    /// Newton iteration in log coordinates `y_i = e^{x_i}`.
    fn newton(&self, seed: &[C64]) -> Option<(Vec<C64>, f64)> {
        let mut y = seed.to_vec();
        for _ in 0..NEWTON_MAX_ITER {
            let f = self.gradient(&y);
            let scale = 1.0 + y.iter().map(|v| v.norm()).fold(0.0, f64::max);
            if f.norm() < NEWTON_TOL * scale {
                return Some((y, f.norm()));
            }
            let step = self.log_hessian(&y).lu().solve(&(-f))?;
            for (yi, dx) in y.iter_mut().zip(step.iter()) {
                *yi *= dx.exp();
            }
        }
        let r = self.gradient(&y).norm();
        (r < 1e-9).then_some((y, r))
    }
}

fn real_matrix(m: &[Vec<NovScalar>], t0: f64) -> Result<DMatrix<f64>, ToricError> {
    let n = m.len();
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = m[i][j].specialize_complex(ComplexNum::from_f64(t0)).map_err(|_| ToricError::BadT0)?.re();
        }
    }
    Ok(out)
}

/// Left null vector of `A − λI` by complex SVD.
fn left_eigenvector(a: &DMatrix<f64>, lambda: C64) -> DVector<C64> {
    let n = a.nrows();
    let shifted = DMatrix::from_fn(n, n, |i, j| {
        let v = C64::new(a[(j, i)], 0.0);
        if i == j {
            v - lambda
        } else {
            v
        }
    });
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let k = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    DVector::from_fn(n, |i, _| v_t[(k, i)].conj())
}

/// All critical points of 𝔓𝔒 at `T = t0`, seeded by eigenvalues of a
/// multiplication matrix on the staircase basis and polished by Newton.
pub fn critical_points(p: &Potential, t0: &Rational) -> Result<Vec<CriticalPoint>, ToricError> {
    if !t0.is_positive() || *t0 >= Rational::one() {
        return Err(ToricError::BadT0);
    }
    let t = t0.to_f64();
    let (q, dim) = jacobian_ring(p)?;
    let stairs = q.standard_monomials().expect("zero-dimensional");
    let unit = stairs.iter().position(|e| e.iter().all(|&a| a == 0)).expect("1 is standard");
    let n = p.dim();
    let coord_maps: Vec<Vec<NovScalar>> =
        (0..n).map(|i| q.coordinates(&LaurentPoly::var(i))).collect::<Result<_, _>>()?;
    // a generic linear form separates the points
    let weights: Vec<Rational> = (0..n).map(|i| Rational::new(1 + 3 * i as i64, 1 + 7 * i as i64)).collect();
    let generic = (0..n).fold(NovPoly::zero(), |acc, i| {
        acc.add(&LaurentPoly::var(i).scale(&NovScalar::constant(weights[i].clone())))
    });
    let mf = real_matrix(&q.multiplication_matrix(&generic)?, t)?;
    let eig = mf.clone().complex_eigenvalues();
    let mut clusters: Vec<(C64, usize)> = Vec::new();
    for lam in eig.iter() {
        let tol = 1e-6 * (1.0 + lam.norm());
        match clusters.iter_mut().find(|(c, _)| (c - lam).norm() < tol) {
            Some(c) => c.1 += 1,
            None => clusters.push((*lam, 1)),
        }
    }
    let np = NumericPotential::new(p, t)?;
    let mut out: Vec<CriticalPoint> = Vec::new();
    for (lam, mult) in clusters {
        let w = left_eigenvector(&mf, lam);
        let w0 = w[unit];
        let seed: Vec<C64> = (0..n)
            .map(|i| {
                let img: C64 = coord_maps[i]
                    .iter()
                    .zip(w.iter())
                    .map(|(c, wj)| C64::new(c.specialize_complex(ComplexNum::from_f64(t)).map_or(0.0, |z| z.re()), 0.0) * wj)
                    .sum();
                img / w0
            })
            .collect();
        let mut found = None;
        for restart in 0..4 {
            let jitter = 1.0 + 1e-7 * restart as f64;
            let s: Vec<C64> = seed.iter().map(|v| v * jitter).collect();
            if let Some(r) = np.newton(&s) {
                found = Some(r);
                break;
            }
        }
        let Some((y, residual)) = found else {
            if mult > 1 {
                // degenerate points converge slowly; keep the algebraic seed
                let r = np.gradient(&seed).norm();
                out.push(point_report(&np, seed, r, mult));
                continue;
            }
            return Err(ToricError::NewtonDivergence { restarts: 3 });
        };
        out.push(point_report(&np, y, residual, mult));
    }
    let total: usize = out.iter().map(|c| c.multiplicity).sum();
    let distinct = out.iter().enumerate().all(|(i, a)| {
        out[..i].iter().all(|b| {
            a.coords.iter().zip(&b.coords).map(|(x, y)| (x.0 - y.0).abs() + (x.1 - y.1).abs()).sum::<f64>() > 1e-7
        })
    });
    if total != dim || !distinct {
        return Err(ToricError::MultiplicityMismatch { expected: dim, found: if distinct { total } else { out.len() } });
    }
    out.sort_by(|a, b| {
        let key = |c: &CriticalPoint| c.coords.iter().flat_map(|z| [z.0, z.1]).collect::<Vec<_>>();
        key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}

fn point_report(np: &NumericPotential, y: Vec<C64>, residual: f64, mult: usize) -> CriticalPoint {
    let det = np.log_hessian(&y).determinant().norm();
    let v = np.value(&y);
    let clean = |x: f64| if x.abs() < 1e-13 { 0.0 } else { x };
    CriticalPoint {
        coords: y.iter().map(|z| (clean(z.re), clean(z.im))).collect(),
        critical_value: (clean(v.re), clean(v.im)),
        hessian_det: det,
        morse: det > MORSE_TOL,
        multiplicity: mult,
        residual,
    }
}

/// Quantum cohomology presentation in the facet variables `z1…zm`.
#[derive(Clone, Debug)]
pub struct QHPresentation {
    pub name: String,
    pub ring: PolyRing,
    pub linear: Vec<NovPoly>,
    pub quantum: Vec<NovPoly>,
}

impl QHPresentation {
    pub fn relations(&self) -> impl Iterator<Item = &NovPoly> {
        self.linear.iter().chain(&self.quantum)
    }

    /// Rank of the quotient over the Novikov field.
    pub fn rank(&self) -> Result<QuotientBasis<NovScalar>, ToricError> {
        let q = groebner_basis_polynomial(&Ideal::new(self.ring.nvars(), self.relations().cloned().collect()))?;
        q.require_zero_dimensional().map_err(|_| ToricError::NotZeroDimensional)?;
        Ok(q)
    }

    /// Linear relations from the normals plus the given quantum relations.
    pub fn from_data(data: &ToricFanoData, quantum: Vec<NovPoly>) -> Self {
        let m = data.facets.len();
        let linear = (0..data.dim)
            .map(|i| {
                LaurentPoly::from_terms(
                    data.facets
                        .iter()
                        .enumerate()
                        .map(|(j, f)| (unit_exp(m, j), NovScalar::from_i64(f.normal[i]))),
                )
            })
            .collect();
        QHPresentation { name: data.name.clone(), ring: PolyRing::numbered("z", m), linear, quantum }
    }

    /// Relations supplied as expressions, used verbatim.
    pub fn from_strings(data: &ToricFanoData, relations: &[String]) -> Result<Self, ToricError> {
        let ring = PolyRing::numbered("z", data.facets.len());
        let quantum = relations.iter().map(|r| ring.parse(r)).collect::<Result<_, _>>()?;
        Ok(QHPresentation { name: data.name.clone(), ring, linear: vec![], quantum })
    }
}

fn unit_exp(m: usize, j: usize) -> Vec<i32> {
    let mut e = vec![0; m];
    e[j] = 1;
    e
}

pub const BUILTINS: [&str; 5] = ["CP1", "CP2", "CP1xCP1", "CP3", "CP4"];

fn cpn(n: usize) -> ToricFanoData {
    let mut facets: Vec<Facet> = (0..n)
        .map(|i| Facet { normal: unit_exp(n, i).into_iter().map(i64::from).collect(), constant: Rational::zero() })
        .collect();
    facets.push(Facet { normal: vec![-1; n], constant: Rational::from_int(-1) });
    ToricFanoData {
        name: format!("CP{n}"),
        dim: n,
        facets,
        basepoint: vec![Rational::new(1, n as i64 + 1); n],
        qh_relations: None,
    }
}

/// Built-in polytope at its monotone basepoint.
pub fn builtin(name: &str) -> Result<ToricFanoData, ToricError> {
    match name {
        "CP1xCP1" => Ok(ToricFanoData {
            name: name.into(),
            dim: 2,
            facets: vec![
                Facet { normal: vec![1, 0], constant: Rational::zero() },
                Facet { normal: vec![-1, 0], constant: Rational::from_int(-1) },
                Facet { normal: vec![0, 1], constant: Rational::zero() },
                Facet { normal: vec![0, -1], constant: Rational::from_int(-1) },
            ],
            basepoint: vec![Rational::new(1, 2); 2],
            qh_relations: None,
        }),
        _ => match name.strip_prefix("CP").and_then(|k| k.parse::<usize>().ok()) {
            Some(n @ 1..=4) => Ok(cpn(n)),
            _ => Err(ToricError::UnknownBuiltin(name.into())),
        },
    }
}

/// `∏_{j∈S} z_j − T^{Σ_{j∈S} l_j(u)}` for a primitive collection `S`.
fn sr_relation(data: &ToricFanoData, m: usize, set: &[usize]) -> NovPoly {
    let mut e = vec![0; m];
    let mut area = Rational::zero();
    for &j in set {
        e[j] = 1;
        area = area.add(&data.facet_value(j, &data.basepoint));
    }
    LaurentPoly::monomial(e, NovScalar::one()).sub(&LaurentPoly::constant(NovScalar::t_pow(&area)))
}

/// Batyrev-style presentation of a built-in.
pub fn qh_presentation(name: &str) -> Result<QHPresentation, ToricError> {
    let data = builtin(name)?;
    Ok(builtin_presentation(&data)?)
}

fn builtin_presentation(data: &ToricFanoData) -> Result<QHPresentation, ToricError> {
    let m = data.facets.len();
    let collections: Vec<Vec<usize>> = match data.name.as_str() {
        "CP1xCP1" => vec![vec![0, 1], vec![2, 3]],
        name if builtin(name).is_ok() => vec![(0..m).collect()],
        other => return Err(ToricError::UnknownBuiltin(other.into())),
    };
    let quantum = collections.iter().map(|s| sr_relation(data, m, s)).collect();
    Ok(QHPresentation::from_data(data, quantum))
}

/// Presentation for a polytope: explicit relations if given, else the built-in.
pub fn presentation_for(data: &ToricFanoData) -> Result<QHPresentation, ToricError> {
    match &data.qh_relations {
        Some(rels) => QHPresentation::from_strings(data, rels),
        None => builtin_presentation(data),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KsReport {
    pub relations_checked: usize,
    pub qh_rank: usize,
    pub jacobian_dim: usize,
    pub image_rank: usize,
}

/// Divisor-level Kodaira–Spencer map `z_j ↦ T^{l_j(u)} y^{v_j}`.
pub fn ks_image(pres: &QHPresentation, p: &Potential, f: &NovPoly) -> Result<NovPoly, ToricError> {
    f.substitute(&p.z).ok_or_else(|| ToricError::InvalidFan(format!("{} is not a polynomial in z", pres.ring.format(f))))
}

/// Relations die in Jac(𝔓𝔒), the map is onto, and the ranks agree.
pub fn ks_divisor_check(pres: &QHPresentation, p: &Potential) -> Result<KsReport, ToricError> {
    let (jac, jac_dim) = jacobian_ring(p)?;
    let mut checked = 0;
    for rel in pres.relations() {
        let image = jac.normal_form(&ks_image(pres, p, rel)?)?;
        if !image.is_zero() {
            return Err(ToricError::RelationNotKilled {
                relation: pres.ring.format(rel),
                image: p.ring.format(&image),
            });
        }
        checked += 1;
    }
    let qh = pres.rank()?;
    let qh_rank = qh.require_zero_dimensional()?;
    let images: Vec<Vec<NovScalar>> = qh
        .standard_monomials()
        .expect("zero-dimensional")
        .into_iter()
        .map(|e| jac.coordinates(&ks_image(pres, p, &LaurentPoly::monomial(e, NovScalar::one()))?).map_err(Into::into))
        .collect::<Result<_, ToricError>>()?;
    let image_rank = dense_rank(&images)?;
    if qh_rank != jac_dim || image_rank != jac_dim {
        return Err(ToricError::RankMismatch { qh: qh_rank, jac: jac_dim, image: image_rank });
    }
    Ok(KsReport { relations_checked: checked, qh_rank, jacobian_dim: jac_dim, image_rank })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(n: &str) -> Potential {
        potential(&builtin(n).unwrap()).unwrap()
    }

    #[test]
    fn validation() {
        let cp1 = builtin("CP1").unwrap();
        let r = validate(&cp1).unwrap();
        assert_eq!(r.facet_values, vec![Rational::new(1, 2); 2]);
        let mut bad = cp1.clone();
        bad.facets[0].normal = vec![2];
        assert!(matches!(validate(&bad), Err(ToricError::InvalidFan(s)) if s.contains("non-primitive")));
        let edge = cp1.with_basepoint(vec![Rational::zero()]);
        assert!(matches!(validate(&edge), Err(ToricError::InvalidFan(s)) if s.contains("boundary")));
    }

    #[test]
    fn potentials_print() {
        let p = cp("CP1");
        assert_eq!(p.ring.format(&p.poly), "T^(1/2)*(y1 + y1^-1)");
        let p = cp("CP2");
        let expected: NovPoly = p.ring.parse("T^(1/3)*(y1 + y2 + y1^-1*y2^-1)").unwrap();
        assert_eq!(p.poly, expected);
        assert_eq!(p.root_denominator(), 3);
    }

    #[test]
    fn jacobian_dimensions() {
        for (name, d) in [("CP1", 2), ("CP2", 3), ("CP1xCP1", 4), ("CP3", 4)] {
            assert_eq!(jacobian_ring(&cp(name)).unwrap().1, d, "{name}");
        }
    }

    #[test]
    fn cp1_critical_points() {
        let pts = critical_points(&cp("CP1"), &Rational::new(1, 4)).unwrap();
        assert_eq!(pts.len(), 2);
        assert!((pts[0].coords[0].0 + 1.0).abs() < 1e-12 && (pts[1].coords[0].0 - 1.0).abs() < 1e-12);
        assert!(pts.iter().all(|c| c.morse && c.multiplicity == 1));
        assert!((pts[0].critical_value.0 + 1.0).abs() < 1e-12);
        assert!((pts[1].critical_value.0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cp2_critical_points_are_cube_roots() {
        let pts = critical_points(&cp("CP2"), &Rational::new(1, 64)).unwrap();
        assert_eq!(pts.len(), 3);
        for c in &pts {
            let (y1, y2) = (Complex::new(c.coords[0].0, c.coords[0].1), Complex::new(c.coords[1].0, c.coords[1].1));
            assert!((y1 - y2).norm() < 1e-10);
            assert!((y1.powi(3) - Complex::new(1.0, 0.0)).norm() < 1e-10);
            assert!(c.morse);
        }
    }

    #[test]
    fn ks_check_and_negative_control() {
        for name in ["CP1", "CP2", "CP1xCP1"] {
            let r = ks_divisor_check(&qh_presentation(name).unwrap(), &cp(name)).unwrap();
            assert_eq!(r.qh_rank, r.jacobian_dim);
        }
        let data = builtin("CP1").unwrap();
        let wrong = QHPresentation::from_strings(&data, &["z1 - z2".into(), "z1*z2 - 2*T".into()]).unwrap();
        assert!(matches!(ks_divisor_check(&wrong, &cp("CP1")), Err(ToricError::RelationNotKilled { .. })));
    }
}
