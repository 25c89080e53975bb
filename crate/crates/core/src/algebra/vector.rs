use serde::{Deserialize, Serialize};

use super::ModRing;
use crate::error::{Error, Result};

/// A vector of `(F_p)^k` with every coordinate reduced mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VectorElem {
    p: u64,
    coords: Vec<u64>,
}

impl VectorElem {
    pub fn new(p: u64, coords: impl IntoIterator<Item = i64>) -> Self {
        let ring = ModRing::new(p);
        Self {
            p,
            coords: coords.into_iter().map(|c| ring.reduce(c)).collect(),
        }
    }

    pub fn zero(p: u64, k: usize) -> Self {
        Self {
            p,
            coords: vec![0; k],
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |r, a, b| r.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |r, a, b| r.sub(a, b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&ModRing, u64, u64) -> u64) -> Self {
        assert_eq!(self.p, other.p, "vectors over different fields");
        assert_eq!(self.dim(), other.dim(), "vectors of different dimension");
        let ring = ModRing::new(self.p);
        Self {
            p: self.p,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f(&ring, a, b))
                .collect(),
        }
    }

    /// Position in the lexicographic enumeration of `(F_p)^k`.
    pub fn index(&self) -> usize {
        self.coords
            .iter()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn from_index(p: u64, k: usize, mut index: usize) -> Self {
        let mut coords = vec![0; k];
        for slot in coords.iter_mut().rev() {
            *slot = (index % p as usize) as u64;
            index /= p as usize;
        }
        Self { p, coords }
    }
}

/// Rank test by Gaussian elimination mod `p`.
pub fn is_basis(vectors: &[VectorElem], p: u64, k: usize) -> Result<bool> {
    for v in vectors {
        if v.dim() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: v.dim(),
            });
        }
        if v.p() != p {
            return Err(Error::InvalidInstance(format!(
                "vector over F_{} in a basis over F_{p}",
                v.p()
            )));
        }
    }
    if vectors.len() != k {
        return Ok(false);
    }
    let ring = ModRing::new(p);
    let mut rows: Vec<Vec<u64>> = vectors.iter().map(|v| v.coords.clone()).collect();
    let mut rank = 0;
    for col in 0..k {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = ring.inverse(rows[rank][col])?;
        for c in 0..k {
            rows[rank][c] = ring.mul(rows[rank][c], inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..k {
                    let sub = ring.mul(factor, rows[rank][c]);
                    rows[r][c] = ring.sub(rows[r][c], sub);
                }
            }
        }
        rank += 1;
    }
    Ok(rank == k)
}

/// An ordered basis of `(F_p)^k`; linear independence is checked on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Basis {
    p: u64,
    k: usize,
    vectors: Vec<VectorElem>,
}

impl Basis {
    pub fn new(p: u64, vectors: Vec<VectorElem>) -> Result<Self> {
        let k = vectors.first().map_or(0, VectorElem::dim);
        if k == 0 {
            return Err(Error::InvalidInstance("empty basis".into()));
        }
        if !is_basis(&vectors, p, k)? {
            return Err(Error::InvalidInstance(
                "vectors are not a basis over F_p".into(),
            ));
        }
        Ok(Self { p, k, vectors })
    }

    pub fn standard(p: u64, k: usize) -> Self {
        let vectors = (0..k)
            .map(|i| VectorElem::new(p, (0..k).map(|j| i64::from(i == j))))
            .collect();
        Self { p, k, vectors }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn vectors(&self) -> &[VectorElem] {
        &self.vectors
    }
}
