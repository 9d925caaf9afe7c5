//! Orthogonal apartments realized by an explicit orthogonal base.

use num_traits::Zero;

use crate::combinatorics::{ApartmentShape, IndexMember};
use crate::error::{Error, Result};
use crate::linalg::{CVector, Subspace};

/// All k-dimensional spans of subsets of a fixed orthogonal base.
///
/// The base is orthogonal but not normalized; any nonzero rescaling of its
/// vectors defines the same apartment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricApartment {
    base: Vec<CVector>,
    shape: ApartmentShape,
}

impl GeometricApartment {
    pub fn new(base: Vec<CVector>, k: usize) -> Result<Self> {
        let n = base.len();
        let shape = ApartmentShape::new(n, k)?;
        for (a, u) in base.iter().enumerate() {
            if u.dim() != n {
                return Err(Error::InvalidBase(format!("vector {a} has dimension {}, expected {n}", u.dim())));
            }
            if u.is_zero() {
                return Err(Error::InvalidBase(format!("vector {a} is zero")));
            }
            for (b, v) in base.iter().enumerate().skip(a + 1) {
                if !u.hermitian_inner(v)?.is_zero() {
                    return Err(Error::InvalidBase(format!("vectors {a} and {b} are not orthogonal")));
                }
            }
        }
        Ok(GeometricApartment { base, shape })
    }

    /// The apartment of the standard base.
    pub fn standard(n: usize, k: usize) -> Result<Self> {
        Self::new((0..n).map(|i| CVector::unit(n, i)).collect(), k)
    }

    pub fn base(&self) -> &[CVector] {
        &self.base
    }

    pub fn shape(&self) -> ApartmentShape {
        self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn k(&self) -> usize {
        self.shape.k()
    }

    pub fn member(&self, m: &IndexMember) -> Result<Subspace> {
        self.shape.check_member(m)?;
        let vectors: Vec<CVector> = m.indices().into_iter().map(|i| self.base[i].clone()).collect();
        Subspace::span(self.n(), &vectors)
    }

    pub fn members(&self) -> Vec<(IndexMember, Subspace)> {
        self.shape
            .members()
            .into_iter()
            .map(|m| {
                let s = self.member(&m).expect("member of own shape");
                (m, s)
            })
            .collect()
    }

    /// The index set `S` with `x = span{e_s : s in S}`, or `None` when `x` is
    /// not a member of this apartment.
    pub fn coordinatize(&self, x: &Subspace) -> Result<Option<IndexMember>> {
        if x.ambient() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: x.ambient() });
        }
        if x.dim() != self.k() {
            return Err(Error::RankMismatch { expected: self.k(), found: x.dim() });
        }
        let mut inside = Vec::with_capacity(self.k());
        for (i, e) in self.base.iter().enumerate() {
            if x.contains(e)? {
                inside.push(i);
            }
        }
        // k independent base vectors inside a k-dimensional x span all of it
        if inside.len() == self.k() {
            Ok(Some(IndexMember::from_indices(&inside)?))
        } else {
            Ok(None)
        }
    }

    pub fn contains(&self, x: &Subspace) -> Result<bool> {
        Ok(x.dim() == self.k() && self.coordinatize(x)?.is_some())
    }

    /// Members of `self` that also belong to `other`, as index sets of `self`.
    pub fn shared_members(&self, other: &GeometricApartment) -> Result<Vec<IndexMember>> {
        let mut out = Vec::new();
        for (m, s) in self.members() {
            if other.contains(&s)? {
                out.push(m);
            }
        }
        Ok(out)
    }
}

/// Free-function form of [`GeometricApartment::coordinatize`].
pub fn coordinatize(apartment: &GeometricApartment, x: &Subspace) -> Result<Option<IndexMember>> {
    apartment.coordinatize(x)
}
