//! Exact linear algebra over the Gaussian rationals.

mod matrix;
mod subspace;

use std::fmt;
use std::ops::Index;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

pub use matrix::Matrix;
pub use subspace::Subspace;

/// A vector in `Q(i)^n`, `n >= 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CVector {
    entries: Vec<GaussianRational>,
}

impl CVector {
    pub fn new(entries: Vec<GaussianRational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ZeroAmbient);
        }
        Ok(CVector { entries })
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Self::new(entries.iter().map(|&v| v.into()).collect()).expect("nonempty vector")
    }

    /// Builds from `(re, im)` integer pairs.
    pub fn from_complex_ints(entries: &[(i64, i64)]) -> Self {
        Self::new(entries.iter().map(|&(re, im)| GaussianRational::from_ints(re, im)).collect())
            .expect("nonempty vector")
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![GaussianRational::zero(); n]).expect("positive dimension")
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.entries[i] = 1.into();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<GaussianRational> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn conj(&self) -> Self {
        CVector { entries: self.entries.iter().map(GaussianRational::conj).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        CVector { entries: self.entries.iter().map(|e| e * c).collect() }
    }

    pub fn add(&self, other: &CVector) -> Result<Self> {
        self.check_dim(other)?;
        Ok(CVector { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &CVector) -> Result<Self> {
        self.check_dim(other)?;
        Ok(CVector { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() })
    }

    /// `<u, v> = sum_l u_l * conj(v_l)`: linear in the first argument,
    /// conjugate-linear in the second.
    pub fn hermitian_inner(&self, other: &CVector) -> Result<GaussianRational> {
        self.check_dim(other)?;
        Ok(self.inner_unchecked(other))
    }

    pub(crate) fn inner_unchecked(&self, other: &CVector) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * &b.conj());
            }
        }
        acc
    }

    /// Rescales so the first nonzero entry is 1. The zero vector is returned unchanged.
    pub fn normalized_leading(&self) -> Self {
        match self.entries.iter().find(|e| !e.is_zero()) {
            Some(lead) => self.scale(&lead.inv()),
            None => self.clone(),
        }
    }

    fn check_dim(&self, other: &CVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }
}

impl Index<usize> for CVector {
    type Output = GaussianRational;
    fn index(&self, idx: usize) -> &GaussianRational {
        &self.entries[idx]
    }
}

impl fmt::Debug for CVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, e) in self.entries.iter().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// Hermitian inner product of two vectors; see [`CVector::hermitian_inner`].
pub fn hermitian_inner(u: &CVector, v: &CVector) -> Result<GaussianRational> {
    u.hermitian_inner(v)
}

/// Brings `rows` (each of length `ncols`) to reduced row echelon form with
/// unit pivots, drops zero rows, and returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<GaussianRational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for e in rows[r].iter_mut() {
            if !e.is_zero() {
                *e = &*e * &inv;
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().expect("pivot row");
        for row in head.iter_mut().chain(rest.iter_mut()) {
            let factor = row[c].clone();
            if factor.is_zero() {
                continue;
            }
            for (e, p) in row.iter_mut().zip(pivot_row.iter()).skip(c) {
                if !p.is_zero() {
                    *e -= &(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}
