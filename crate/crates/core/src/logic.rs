//! Compatibility in the subspace lattice and maximal mutually-compatible
//! families of k-dimensional subspaces.

use std::collections::{BTreeSet, HashSet};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::linalg::{CVector, Subspace};

/// `X` and `Y` are compatible iff `X = (X∩Y) + (X∩Y⊥)` and `Y = (X∩Y) + (Y∩X⊥)`.
pub fn is_compatible(x: &Subspace, y: &Subspace) -> Result<bool> {
    let meet = x.intersect(y)?;
    let x_rest = x.intersect(&y.orthocomplement())?;
    if meet.sum(&x_rest)? != *x {
        return Ok(false);
    }
    let y_rest = y.intersect(&x.orthocomplement())?;
    Ok(meet.sum(&y_rest)? == *y)
}

/// Compatibility decided by exact commutation of the two orthogonal projectors.
pub fn projectors_commute(x: &Subspace, y: &Subspace) -> Result<bool> {
    let (p, q) = (x.projector(), y.projector());
    Ok(p.mul(&q)? == q.mul(&p)?)
}

/// Inclusion-minimal nonzero subspaces among all intersections of
/// nonempty subfamilies.
///
/// Every subfamily intersection is reached by closing the nonzero members
/// under pairwise intersection; the closure is built from a worklist so each
/// new subspace is intersected with the known ones exactly once.
pub fn minimal_intersections(family: &[Subspace]) -> Result<Vec<Subspace>> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    if let Some(bad) = family.iter().find(|s| s.ambient() != first.ambient()) {
        return Err(Error::DimensionMismatch { expected: first.ambient(), found: bad.ambient() });
    }

    let mut known: Vec<Subspace> = Vec::new();
    let mut seen: HashSet<Subspace> = HashSet::new();
    let mut pending: Vec<Subspace> = Vec::new();
    for s in family {
        if !s.is_zero() && seen.insert(s.clone()) {
            pending.push(s.clone());
        }
    }
    while let Some(next) = pending.pop() {
        for other in &known {
            let meet = next.intersect(other)?;
            if !meet.is_zero() && seen.insert(meet.clone()) {
                pending.push(meet);
            }
        }
        known.push(next);
    }

    // smallest dimension first: a candidate is minimal iff it contains no kept part
    known.sort_by_key(Subspace::dim);
    let mut minimal: Vec<Subspace> = Vec::new();
    for candidate in known {
        let mut contains_part = false;
        for part in &minimal {
            if part.dim() < candidate.dim() && part.is_subspace_of(&candidate)? {
                contains_part = true;
                break;
            }
        }
        if !contains_part {
            minimal.push(candidate);
        }
    }
    minimal.sort();
    Ok(minimal)
}

/// Structural summary of a mutually compatible family of k-dimensional subspaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleFamilyReport {
    /// Minimal nonzero intersections of members.
    pub minimal_parts: Vec<Subspace>,
    pub all_lines: bool,
    pub mutually_orthogonal: bool,
    pub spans_ambient: bool,
    /// Every member is the sum of the parts it contains.
    pub members_decompose: bool,
    /// The family has all `C(n, k)` members of the apartment its parts define.
    pub cardinality_complete: bool,
    pub is_maximal: bool,
}

/// Decides whether a mutually compatible family is an orthogonal apartment,
/// i.e. a maximal set of mutually compatible k-dimensional subspaces.
///
/// The minimal parts forming an orthogonal base of lines is not enough on its
/// own at finite dimension: the family must also contain every k-subset span
/// of that base, which is what `members_decompose` and `cardinality_complete`
/// pin down.
pub fn analyze_compatible_family(family: &[Subspace], k: usize) -> Result<CompatibleFamilyReport> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    let n = first.ambient();
    for s in family {
        if s.ambient() != n {
            return Err(Error::DimensionMismatch { expected: n, found: s.ambient() });
        }
        if s.dim() != k {
            return Err(Error::RankMismatch { expected: k, found: s.dim() });
        }
    }
    for (a, x) in family.iter().enumerate() {
        for (b, y) in family.iter().enumerate().skip(a + 1) {
            if !is_compatible(x, y)? {
                return Err(Error::Incompatible { first: a, second: b });
            }
        }
    }

    let parts = minimal_intersections(family)?;
    let all_lines = parts.iter().all(|p| p.dim() == 1);
    let mut mutually_orthogonal = true;
    for (a, p) in parts.iter().enumerate() {
        for q in &parts[a + 1..] {
            mutually_orthogonal &= p.is_orthogonal(q)?;
        }
    }
    let mut total = Subspace::zero(n);
    for p in &parts {
        total = total.sum(p)?;
    }
    let spans_ambient = total.is_full();

    let mut members_decompose = true;
    for member in family {
        let mut acc = Subspace::zero(n);
        for p in &parts {
            if p.is_subspace_of(member)? {
                acc = acc.sum(p)?;
            }
        }
        members_decompose &= acc == *member;
    }

    let distinct: BTreeSet<&Subspace> = family.iter().collect();
    let cardinality_complete =
        all_lines && spans_ambient && parts.len() == n && distinct.len() as u128 == binomial(n, k);

    let is_maximal = all_lines && mutually_orthogonal && spans_ambient && members_decompose && cardinality_complete;
    Ok(CompatibleFamilyReport {
        minimal_parts: parts,
        all_lines,
        mutually_orthogonal,
        spans_ambient,
        members_decompose,
        cardinality_complete,
        is_maximal,
    })
}

/// Square-root-free Gram-Schmidt: each vector minus its components along the
/// already accepted ones; zero residuals are dropped.
fn orthogonalize_into(vectors: &[CVector], acc: &mut Vec<CVector>) -> Result<()> {
    for v in vectors {
        let mut w = v.clone();
        for u in acc.iter() {
            let coeff = &w.hermitian_inner(u)? / &u.hermitian_inner(u)?;
            w = w.sub(&u.scale(&coeff))?;
        }
        if !w.is_zero() {
            acc.push(w.normalized_leading());
        }
    }
    Ok(())
}

/// An orthogonal base of the ambient space whose first `k` vectors span `x`
/// and next `k` span `y`, for orthogonal k-dimensional `x` and `y`.
///
/// Vectors are orthogonal but not normalized; each is scaled to have leading
/// entry 1.
pub fn extend_pair_to_orthogonal_base(x: &Subspace, y: &Subspace) -> Result<Vec<CVector>> {
    if x.ambient() != y.ambient() {
        return Err(Error::DimensionMismatch { expected: x.ambient(), found: y.ambient() });
    }
    if x.dim() != y.dim() {
        return Err(Error::RankMismatch { expected: x.dim(), found: y.dim() });
    }
    if !x.is_orthogonal(y)? {
        return Err(Error::NotOrthogonal);
    }
    let mut base = Vec::with_capacity(x.ambient());
    orthogonalize_into(x.basis(), &mut base)?;
    orthogonalize_into(y.basis(), &mut base)?;
    let rest = x.sum(y)?.orthocomplement();
    orthogonalize_into(rest.basis(), &mut base)?;
    debug_assert_eq!(base.len(), x.ambient());
    Ok(base)
}
