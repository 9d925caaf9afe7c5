use std::fmt;

use num_traits::Zero;

use super::{rref, CVector, Matrix};
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// A linear subspace of `Q(i)^n` in canonical form.
///
/// The basis is the reduced row echelon form of any spanning set, with unit
/// pivots and zero rows removed. Two subspaces are equal iff their bases are
/// identical, so `Eq` and `Hash` are structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    pivots: Vec<usize>,
    basis: Vec<CVector>,
}

// CVector has no Ord; order by pivots then the rendered rows.
impl PartialOrd for CVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |v: &CVector| -> Vec<(num_rational::BigRational, num_rational::BigRational)> {
            v.entries().iter().map(|e| (e.re().clone(), e.im().clone())).collect()
        };
        key(self).cmp(&key(other))
    }
}

impl Subspace {
    /// The canonical subspace spanned by `vectors` inside `Q(i)^ambient`.
    pub fn span(ambient: usize, vectors: &[CVector]) -> Result<Self> {
        if ambient == 0 {
            return Err(Error::ZeroAmbient);
        }
        if let Some(v) = vectors.iter().find(|v| v.dim() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: v.dim() });
        }
        let rows = vectors.iter().map(|v| v.entries().to_vec()).collect();
        Ok(Self::from_raw_rows(ambient, rows))
    }

    /// Like [`Subspace::span`] but takes the ambient dimension from the first vector.
    pub fn reduce_basis(vectors: &[CVector]) -> Result<Self> {
        let first = vectors.first().ok_or(Error::EmptyFamily)?;
        Self::span(first.dim(), vectors)
    }

    fn from_raw_rows(ambient: usize, mut rows: Vec<Vec<GaussianRational>>) -> Self {
        let pivots = rref(&mut rows, ambient);
        let basis = rows.into_iter().map(|r| CVector::new(r).expect("ambient > 0")).collect();
        Subspace { ambient, pivots, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        assert!(ambient > 0, "ambient dimension must be positive");
        Subspace { ambient, pivots: Vec::new(), basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        assert!(ambient > 0, "ambient dimension must be positive");
        Subspace {
            ambient,
            pivots: (0..ambient).collect(),
            basis: (0..ambient).map(|i| CVector::unit(ambient, i)).collect(),
        }
    }

    /// Span of the standard basis vectors with the given (0-based) indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Result<Self> {
        if let Some(&i) = indices.iter().find(|&&i| i >= ambient) {
            return Err(Error::IndexOutOfRange { index: i, n: ambient });
        }
        let vectors: Vec<_> = indices.iter().map(|&i| CVector::unit(ambient, i)).collect();
        Self::span(ambient, &vectors)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CVector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    /// Residual of `v` after elimination against the basis; zero iff `v` lies in the subspace.
    fn residual(&self, v: &CVector) -> Vec<GaussianRational> {
        let mut r = v.entries().to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let factor = r[p].clone();
            if factor.is_zero() {
                continue;
            }
            for (e, b) in r.iter_mut().zip(row.entries()).skip(p) {
                if !b.is_zero() {
                    *e -= &(&factor * b);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &CVector) -> Result<bool> {
        if v.dim() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.dim() });
        }
        Ok(self.residual(v).iter().all(Zero::is_zero))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.dim() <= other.dim() && self.basis.iter().all(|v| other.residual(v).iter().all(Zero::is_zero)))
    }

    /// Smallest subspace containing both.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let rows = self.basis.iter().chain(&other.basis).map(|v| v.entries().to_vec()).collect();
        Ok(Self::from_raw_rows(self.ambient, rows))
    }

    /// Largest subspace contained in both, by the Zassenhaus block reduction:
    /// rows `[a | a]` and `[b | 0]` reduce to a block whose rows with vanishing
    /// left half span the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(n));
        }
        let zeros = vec![GaussianRational::zero(); n];
        let mut rows: Vec<Vec<GaussianRational>> = self
            .basis
            .iter()
            .map(|a| [a.entries(), a.entries()].concat())
            .chain(other.basis.iter().map(|b| [b.entries(), &zeros[..]].concat()))
            .collect();
        let pivots = rref(&mut rows, 2 * n);
        let meet = rows
            .into_iter()
            .zip(pivots)
            .filter(|&(_, p)| p >= n)
            .map(|(r, _)| r[n..].to_vec())
            .collect();
        Ok(Self::from_raw_rows(n, meet))
    }

    /// The Hermitian orthogonal complement: the kernel of the conjugated basis.
    pub fn orthocomplement(&self) -> Subspace {
        let n = self.ambient;
        let free = (0..n).filter(|c| !self.pivots.contains(c));
        let vectors: Vec<CVector> = free
            .map(|f| {
                let mut v = CVector::zero(n).into_entries();
                v[f] = 1.into();
                for (row, &p) in self.basis.iter().zip(&self.pivots) {
                    v[p] = -row[f].conj();
                }
                CVector::new(v).expect("ambient > 0")
            })
            .collect();
        Self::span(n, &vectors).expect("consistent dimensions")
    }

    /// True iff every basis vector of `self` is Hermitian-orthogonal to every basis vector of `other`.
    pub fn is_orthogonal(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.basis.iter().all(|a| other.basis.iter().all(|b| a.inner_unchecked(b).is_zero())))
    }

    /// The orthogonal projector onto this subspace, acting on column vectors:
    /// `P = M (M* M)^-1 M*` with `M` the matrix whose columns are the basis.
    pub fn projector(&self) -> Matrix {
        let n = self.ambient;
        if self.is_zero() {
            return Matrix::zeros(n, n);
        }
        let b = Matrix::from_vectors(&self.basis).expect("uniform rows");
        let m = b.transpose();
        let m_adj = b.conj();
        let gram = m_adj.mul(&m).expect("k x k");
        let gram_inv = gram.inverse().expect("Gram matrix of independent rows is invertible");
        m.mul(&gram_inv).and_then(|t| t.mul(&m_adj)).expect("n x n")
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{:?}", self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as G;

    fn v(entries: &[(i64, i64)]) -> CVector {
        CVector::from_complex_ints(entries)
    }

    fn r(entries: &[i64]) -> CVector {
        CVector::from_ints(entries)
    }

    fn e(n: usize, i: usize) -> CVector {
        CVector::unit(n, i)
    }

    fn span(vectors: &[CVector]) -> Subspace {
        Subspace::reduce_basis(vectors).unwrap()
    }

    #[test]
    fn reduce_basis_examples() {
        let full = span(&[r(&[1, 0]), r(&[0, 1])]);
        assert_eq!(full, Subspace::full(2));
        assert_eq!(full.dim(), 2);

        let line = span(&[r(&[1, 0, 0]), r(&[2, 0, 0])]);
        assert_eq!(line.dim(), 1);
        assert_eq!(line.basis(), &[r(&[1, 0, 0])]);

        let plane = span(&[v(&[(1, 0), (0, 1), (0, 0)]), r(&[0, 0, 1])]);
        assert_eq!(plane.basis(), &[v(&[(1, 0), (0, 1), (0, 0)]), r(&[0, 0, 1])]);
        // a shuffled, rescaled, redundant spanning set gives the same canonical form
        let shuffled = span(&[
            v(&[(0, 0), (0, 0), (3, 1)]),
            v(&[(2, 0), (0, 2), (5, 0)]),
            v(&[(0, 1), (-1, 0), (0, 0)]),
        ]);
        assert_eq!(shuffled, plane);
    }

    #[test]
    fn reduce_basis_rejects_mixed_dimensions() {
        let err = Subspace::reduce_basis(&[r(&[1, 0]), r(&[1, 0, 0])]).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 3 });
        assert_eq!(Subspace::span(0, &[]), Err(Error::ZeroAmbient));
        assert_eq!(Subspace::span(3, &[]).unwrap(), Subspace::zero(3));
    }

    #[test]
    fn intersect_examples() {
        let a = span(&[e(3, 0), e(3, 1)]);
        let b = span(&[e(3, 1), e(3, 2)]);
        assert_eq!(a.intersect(&b).unwrap(), span(&[e(3, 1)]));
        assert_eq!(a.intersect(&a).unwrap(), a);

        let c = span(&[r(&[1, 1, 0]), e(3, 2)]);
        let meet = a.intersect(&c).unwrap();
        assert_eq!(meet, span(&[r(&[1, 1, 0])]));
        assert!(meet.is_subspace_of(&a).unwrap() && meet.is_subspace_of(&c).unwrap());
        assert_eq!(meet.dim() + a.sum(&c).unwrap().dim(), a.dim() + c.dim());
    }

    #[test]
    fn sum_examples() {
        let a = span(&[e(2, 0)]);
        assert_eq!(a.sum(&span(&[e(2, 1)])).unwrap(), Subspace::full(2));
        assert_eq!(a.sum(&Subspace::zero(2)).unwrap(), a);
        let b = span(&[r(&[1, 1])]);
        let s = a.sum(&b).unwrap();
        assert_eq!(s, Subspace::full(2));
        assert!(a.is_subspace_of(&s).unwrap() && b.is_subspace_of(&s).unwrap());
        assert_eq!(a.intersect(&b).unwrap().dim() + s.dim(), 2);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(a.intersect(&b).is_err());
        assert!(a.sum(&b).is_err());
        assert!(a.is_orthogonal(&b).is_err());
        assert!(a.contains(&e(3, 0)).is_err());
    }

    #[test]
    fn orthocomplement_examples() {
        let a = span(&[e(3, 0), e(3, 1)]);
        assert_eq!(a.orthocomplement(), span(&[e(3, 2)]));
        assert_eq!(Subspace::zero(3).orthocomplement(), Subspace::full(3));
        assert_eq!(Subspace::full(3).orthocomplement(), Subspace::zero(3));

        let u = v(&[(1, 0), (0, 1), (0, 0)]);
        let perp = span(std::slice::from_ref(&u)).orthocomplement();
        assert_eq!(perp, span(&[v(&[(0, 1), (1, 0), (0, 0)]), e(3, 2)]));
        for b in perp.basis() {
            assert!(b.hermitian_inner(&u).unwrap().is_zero());
        }
    }

    #[test]
    fn orthogonality_examples() {
        let x = span(&[e(2, 0)]);
        assert!(x.is_orthogonal(&span(&[e(2, 1)])).unwrap());
        assert!(!x.is_orthogonal(&span(&[r(&[1, 1])])).unwrap());
        let p = span(&[v(&[(1, 0), (0, 1)])]);
        let q = span(&[v(&[(0, 1), (1, 0)])]);
        assert!(p.is_orthogonal(&q).unwrap());
        assert!(q.is_orthogonal(&p).unwrap());
    }

    #[test]
    fn projector_examples() {
        let p = span(&[e(2, 0)]).projector();
        assert_eq!(p, Matrix::from_rows(vec![vec![1.into(), 0.into()], vec![0.into(), 0.into()]]).unwrap());
        assert!(Subspace::full(3).projector().is_identity());

        let half = G::ratio(1, 2);
        let p = span(&[r(&[1, 1])]).projector();
        assert_eq!(p, Matrix::from_rows(vec![vec![half.clone(), half.clone()], vec![half.clone(), half]]).unwrap());
        assert_eq!(p.mul(&p).unwrap(), p);
        assert_eq!(p.adjoint(), p);
        assert_eq!(p.mul_vec(&r(&[1, 1])).unwrap(), r(&[1, 1]));
    }

    #[test]
    fn projector_of_complex_plane() {
        let a = span(&[v(&[(1, 0), (0, 1), (0, 0)]), v(&[(0, 0), (2, 0), (1, -1)])]);
        let p = a.projector();
        assert_eq!(p.mul(&p).unwrap(), p);
        assert_eq!(p.adjoint(), p);
        for b in a.basis() {
            assert_eq!(&p.mul_vec(b).unwrap(), b);
        }
        for w in a.orthocomplement().basis() {
            assert!(p.mul_vec(w).unwrap().is_zero());
        }
    }
}
