use std::fmt;

use num_traits::{One, Zero};

use super::{rref, CVector};
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Dense matrix over `Q(i)`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix { nrows, ncols, data: vec![GaussianRational::zero(); nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch { expected: ncols, found: bad.len() });
        }
        Ok(Matrix { nrows: rows.len(), ncols, data: rows.into_iter().flatten().collect() })
    }

    /// The matrix whose rows are the given vectors.
    pub fn from_vectors(rows: &[CVector]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|v| v.entries().to_vec()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[GaussianRational]> {
        (0..self.nrows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> CVector {
        CVector::new((0..self.nrows).map(|i| self[(i, j)].clone()).collect()).expect("nonempty column")
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        Matrix { nrows: self.nrows, ncols: self.ncols, data: self.data.iter().map(GaussianRational::conj).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Self> {
        if self.ncols != rhs.nrows {
            return Err(Error::DimensionMismatch { expected: self.ncols, found: rhs.nrows });
        }
        let mut out = Self::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for l in 0..self.ncols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols {
                    let b = &rhs[(l, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &CVector) -> Result<CVector> {
        if self.ncols != v.dim() {
            return Err(Error::DimensionMismatch { expected: self.ncols, found: v.dim() });
        }
        let entries = self
            .rows()
            .map(|row| {
                row.iter().zip(v.entries()).fold(GaussianRational::zero(), |mut acc, (a, b)| {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                    acc
                })
            })
            .collect();
        CVector::new(entries)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Self> {
        if (self.nrows, self.ncols) != (rhs.nrows, rhs.ncols) {
            return Err(Error::DimensionMismatch { expected: self.nrows * self.ncols, found: rhs.nrows * rhs.ncols });
        }
        Ok(Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.nrows) && self.is_square()
    }

    /// Gauss-Jordan inverse; `None` when singular or not square.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.nrows;
        let mut rows: Vec<Vec<GaussianRational>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { GaussianRational::one() } else { GaussianRational::zero() }));
                row
            })
            .collect();
        let pivots = rref(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Self::from_rows(rows.into_iter().map(|r| r[n..].to_vec()).collect()).ok()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.ncols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.ncols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}
