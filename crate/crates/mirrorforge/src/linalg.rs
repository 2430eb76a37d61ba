//! Exact sparse linear algebra over a coefficient field.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("coefficient ring is not a field")]
    CoefficientNotField,
}

pub type SparseVec<K> = BTreeMap<usize, K>;

pub fn axpy<K: Ring>(y: &mut SparseVec<K>, a: &K, x: &SparseVec<K>) {
    for (i, xi) in x {
        let v = y.get(i).map_or_else(|| a.mul(xi), |yi| yi.add(&a.mul(xi)));
        if v.is_zero() {
            y.remove(i);
        } else {
            y.insert(*i, v);
        }
    }
}

struct Row<K> {
    vec: SparseVec<K>,
    /// Expression of `vec` in the inserted generators, when tracked.
    combo: SparseVec<K>,
}

/// Incremental row echelon form; each row's pivot is its smallest index.
pub struct Echelon<K> {
    rows: Vec<Row<K>>,
    pivots: HashMap<usize, usize>,
    inserted: usize,
    track: bool,
}

impl<K: Ring> Default for Echelon<K> {
    fn default() -> Self {
        Self::new(false)
    }
}

impl<K: Ring> Echelon<K> {
    /// With `track`, every row remembers its combination of inserted vectors.
    pub fn new(track: bool) -> Self {
        Echelon { rows: Vec::new(), pivots: HashMap::new(), inserted: 0, track }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the rows; returns the remainder and, when
    /// tracking, minus the combination that was subtracted.
    fn reduce_tracked(&self, mut v: SparseVec<K>, mut combo: SparseVec<K>) -> Result<(SparseVec<K>, SparseVec<K>), LinalgError> {
        let mut cursor = 0usize;
        while let Some((&k, _)) = v.range(cursor..).next() {
            cursor = k + 1;
            let Some(&r) = self.pivots.get(&k) else { continue };
            let row = &self.rows[r];
            let inv = row.vec[&k].inv().ok_or(LinalgError::CoefficientNotField)?;
            let f = v[&k].mul(&inv).neg();
            axpy(&mut v, &f, &row.vec);
            if self.track {
                axpy(&mut combo, &f, &row.combo);
            }
        }
        Ok((v, combo))
    }

    pub fn reduce(&self, v: &SparseVec<K>) -> Result<SparseVec<K>, LinalgError> {
        Ok(self.reduce_tracked(v.clone(), SparseVec::new())?.0)
    }

    pub fn contains(&self, v: &SparseVec<K>) -> Result<bool, LinalgError> {
        Ok(self.reduce(v)?.is_empty())
    }

    /// Insert the next generator. Returns `None` when it was independent, or
    /// a kernel relation `Σ c_j g_j = 0` (tracking only) when dependent.
    pub fn insert(&mut self, v: SparseVec<K>) -> Result<Option<SparseVec<K>>, LinalgError> {
        let idx = self.inserted;
        self.inserted += 1;
        let mut combo = SparseVec::new();
        if self.track {
            combo.insert(idx, K::one());
        }
        let (rem, combo) = self.reduce_tracked(v, combo)?;
        match rem.keys().next().copied() {
            Some(p) => {
                self.pivots.insert(p, self.rows.len());
                self.rows.push(Row { vec: rem, combo });
                Ok(None)
            }
            None => Ok(Some(combo)),
        }
    }

    /// Solve `Σ c_j g_j = v` over the inserted generators (tracking only).
    pub fn solve(&self, v: &SparseVec<K>) -> Result<Option<SparseVec<K>>, LinalgError> {
        assert!(self.track, "solve needs a tracking echelon");
        let (rem, combo) = self.reduce_tracked(v.clone(), SparseVec::new())?;
        if !rem.is_empty() {
            return Ok(None);
        }
        Ok(Some(combo.into_iter().map(|(i, c)| (i, c.neg())).collect()))
    }
}

/// Rank of a list of sparse vectors.
pub fn rank<K: Ring>(vectors: impl IntoIterator<Item = SparseVec<K>>) -> Result<usize, LinalgError> {
    let mut e = Echelon::new(false);
    for v in vectors {
        e.insert(v)?;
    }
    Ok(e.rank())
}

/// Rank of a dense matrix given by rows.
pub fn dense_rank<K: Ring>(rows: &[Vec<K>]) -> Result<usize, LinalgError> {
    rank(rows.iter().map(|r| to_sparse(r)))
}

pub fn to_sparse<K: Ring>(v: &[K]) -> SparseVec<K> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Basis of the kernel of the linear map sending generator `j` to `images[j]`.
pub fn kernel<K: Ring>(images: &[SparseVec<K>]) -> Result<Vec<SparseVec<K>>, LinalgError> {
    let mut e = Echelon::new(true);
    let mut out = Vec::new();
    for v in images {
        if let Some(rel) = e.insert(v.clone())? {
            out.push(rel);
        }
    }
    Ok(out)
}

/// Assigns dense column indices to arbitrary hashable keys.
#[derive(Clone, Debug)]
pub struct Indexer<T: std::hash::Hash + Eq + Clone> {
    map: HashMap<T, usize>,
    keys: Vec<T>,
}

impl<T: std::hash::Hash + Eq + Clone> Default for Indexer<T> {
    fn default() -> Self {
        Indexer { map: HashMap::new(), keys: Vec::new() }
    }
}

impl<T: std::hash::Hash + Eq + Clone> Indexer<T> {
    pub fn index(&mut self, key: &T) -> usize {
        if let Some(&i) = self.map.get(key) {
            return i;
        }
        let i = self.keys.len();
        self.map.insert(key.clone(), i);
        self.keys.push(key.clone());
        i
    }

    pub fn get(&self, key: &T) -> Option<usize> {
        self.map.get(key).copied()
    }

    pub fn key(&self, i: usize) -> &T {
        &self.keys[i]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}
