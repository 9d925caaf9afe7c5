//! Grassmannian transformations given by finite fixtures, and the chain of
//! checks that takes compatibility preservation to orthogonality preservation
//! one apartment at a time.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::apartment::GeometricApartment;
use crate::combinatorics::{
    complementary, count_complementary_containing, infer_meet_size, maximal_inexact, predicted_count, IndexMember,
    PairDescriptor,
};
use crate::error::{Error, Result};
use crate::linalg::{CVector, Matrix, Subspace};
use crate::logic::{analyze_compatible_family, is_compatible};
use crate::scalar::GaussianRational;

/// `x ↦ U x`, or `x ↦ U conj(x)` when `conjugating` is set, with `U* U = I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactUnitary {
    matrix: Matrix,
    conjugating: bool,
}

impl ExactUnitary {
    pub fn new(matrix: Matrix, conjugating: bool) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::NotUnitary);
        }
        if !matrix.adjoint().mul(&matrix)?.is_identity() {
            return Err(Error::NotUnitary);
        }
        Ok(ExactUnitary { matrix, conjugating })
    }

    pub fn identity(n: usize) -> Self {
        ExactUnitary { matrix: Matrix::identity(n), conjugating: false }
    }

    /// Entrywise complex conjugation.
    pub fn conjugation(n: usize) -> Self {
        ExactUnitary { matrix: Matrix::identity(n), conjugating: true }
    }

    /// Rotation by `(c, s)` inside the plane of `e_i`, `e_j`:
    /// `e_i ↦ c e_i + s e_j`, `e_j ↦ -s e_i + c e_j`. Requires `c² + s² = 1`.
    pub fn plane_rotation(n: usize, i: usize, j: usize, c: &BigRational, s: &BigRational) -> Result<Self> {
        if c * c + s * s != BigRational::one() {
            return Err(Error::NotPythagorean { c: c.to_string(), s: s.to_string() });
        }
        for idx in [i, j] {
            if idx >= n {
                return Err(Error::IndexOutOfRange { index: idx, n });
            }
        }
        if i == j {
            return Err(Error::DegeneratePair(i));
        }
        let mut m = Matrix::identity(n);
        m[(i, i)] = c.clone().into();
        m[(j, j)] = c.clone().into();
        m[(j, i)] = s.clone().into();
        m[(i, j)] = GaussianRational::real(-s);
        Ok(ExactUnitary { matrix: m, conjugating: false })
    }

    /// Composes with entrywise conjugation of the input.
    pub fn conjugated(mut self) -> Self {
        self.conjugating = !self.conjugating;
        self
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_conjugating(&self) -> bool {
        self.conjugating
    }

    pub fn apply_vector(&self, v: &CVector) -> Result<CVector> {
        if self.conjugating {
            self.matrix.mul_vec(&v.conj())
        } else {
            self.matrix.mul_vec(v)
        }
    }

    pub fn apply(&self, x: &Subspace) -> Result<Subspace> {
        if x.ambient() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: x.ambient() });
        }
        let images = x.basis().iter().map(|v| self.apply_vector(v)).collect::<Result<Vec<_>>>()?;
        Subspace::span(self.n(), &images)
    }

    /// The apartment of the image base `{U e_i}`.
    pub fn image_apartment(&self, apartment: &GeometricApartment) -> Result<GeometricApartment> {
        let base = apartment.base().iter().map(|e| self.apply_vector(e)).collect::<Result<Vec<_>>>()?;
        GeometricApartment::new(base, apartment.k())
    }
}

pub fn plane_rotation(n: usize, i: usize, j: usize, c: &BigRational, s: &BigRational) -> Result<ExactUnitary> {
    ExactUnitary::plane_rotation(n, i, j, c, s)
}

pub fn apply(u: &ExactUnitary, x: &Subspace) -> Result<Subspace> {
    u.apply(x)
}

pub fn image_apartment(u: &ExactUnitary, apartment: &GeometricApartment) -> Result<GeometricApartment> {
    u.image_apartment(apartment)
}

/// The Pythagorean pair `(3/5, 4/5)`.
pub fn pythagorean_3_4_5() -> (BigRational, BigRational) {
    (BigRational::new(3.into(), 5.into()), BigRational::new(4.into(), 5.into()))
}

/// The apartment obtained by rotating the base vectors of the pair by `(3/5, 4/5)`
/// inside their plane.
pub fn perturbed_apartment(apartment: &GeometricApartment, p: PairDescriptor) -> Result<GeometricApartment> {
    let (c, s) = pythagorean_3_4_5();
    let (ei, ej) = (&apartment.base()[p.lo()], &apartment.base()[p.hi()]);
    // u = c e_i + s e_j and w = -s |e_j|^2 e_i + c |e_i|^2 e_j are orthogonal for any norms
    let ni = ei.hermitian_inner(ei)?;
    let nj = ej.hermitian_inner(ej)?;
    let (c, s): (GaussianRational, GaussianRational) = (c.into(), s.into());
    let u = ei.scale(&c).add(&ej.scale(&s))?;
    let w = ei.scale(&(-&s * &nj)).add(&ej.scale(&(&c * &ni)))?;
    let mut base = apartment.base().to_vec();
    base[p.lo()] = u;
    base[p.hi()] = w;
    GeometricApartment::new(base, apartment.k())
}

/// A finite family of `(source, image)` pairs standing in for a bijection
/// of the Grassmannian.
#[derive(Debug, Clone)]
pub struct MapFixture {
    k: usize,
    ambient: usize,
    pairs: Vec<(Subspace, Subspace)>,
    closed_under: String,
    by_source: HashMap<Subspace, usize>,
}

impl MapFixture {
    pub fn new(k: usize, pairs: Vec<(Subspace, Subspace)>, closed_under: impl Into<String>) -> Result<Self> {
        let ambient = pairs.first().map(|(s, _)| s.ambient()).ok_or(Error::EmptyFamily)?;
        let mut by_source = HashMap::new();
        let mut images = HashSet::new();
        for (idx, (src, img)) in pairs.iter().enumerate() {
            for s in [src, img] {
                if s.ambient() != ambient {
                    return Err(Error::DimensionMismatch { expected: ambient, found: s.ambient() });
                }
                if s.dim() != k {
                    return Err(Error::RankMismatch { expected: k, found: s.dim() });
                }
            }
            if by_source.insert(src.clone(), idx).is_some() {
                return Err(Error::InvalidFixture(format!("source of pair {idx} repeats an earlier source")));
            }
            if !images.insert(img.clone()) {
                return Err(Error::InvalidFixture(format!("image of pair {idx} repeats an earlier image")));
            }
        }
        Ok(MapFixture { k, ambient, pairs, closed_under: closed_under.into(), by_source })
    }

    /// Pairs `(x, U x)` for every source.
    pub fn from_unitary(u: &ExactUnitary, k: usize, sources: Vec<Subspace>, closed_under: impl Into<String>) -> Result<Self> {
        let pairs = sources
            .into_iter()
            .map(|x| {
                let y = u.apply(&x)?;
                Ok((x, y))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, pairs, closed_under)
    }

    /// Sources are the union of the members of the given apartments, in order
    /// of first appearance.
    pub fn from_unitary_on_apartments(u: &ExactUnitary, apartments: &[GeometricApartment], tag: &str) -> Result<Self> {
        let k = apartments.first().ok_or(Error::EmptyFamily)?.k();
        let mut seen = HashSet::new();
        let mut sources = Vec::new();
        for a in apartments {
            if a.k() != k {
                return Err(Error::RankMismatch { expected: k, found: a.k() });
            }
            for (_, s) in a.members() {
                if seen.insert(s.clone()) {
                    sources.push(s);
                }
            }
        }
        Self::from_unitary(u, k, sources, tag)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn pairs(&self) -> &[(Subspace, Subspace)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn closed_under(&self) -> &str {
        &self.closed_under
    }

    pub fn sources(&self) -> impl Iterator<Item = &Subspace> {
        self.pairs.iter().map(|(s, _)| s)
    }

    pub fn image_of(&self, x: &Subspace) -> Option<&Subspace> {
        self.by_source.get(x).map(|&idx| &self.pairs[idx].1)
    }

    pub fn position_of(&self, x: &Subspace) -> Option<usize> {
        self.by_source.get(x).copied()
    }

    /// The same fixture post-composed with the transposition of two images.
    pub fn with_images_swapped(&self, a: usize, b: usize) -> Result<Self> {
        if a >= self.len() || b >= self.len() {
            return Err(Error::InvalidFixture(format!("pair index out of range: {a}, {b}")));
        }
        let mut pairs = self.pairs.clone();
        let img_a = pairs[a].1.clone();
        pairs[a].1 = std::mem::replace(&mut pairs[b].1, img_a);
        Self::new(self.k, pairs, format!("{} with images {a} and {b} swapped", self.closed_under))
    }

    pub fn with_image_replaced(&self, idx: usize, image: Subspace) -> Result<Self> {
        if idx >= self.len() {
            return Err(Error::InvalidFixture(format!("pair index out of range: {idx}")));
        }
        let mut pairs = self.pairs.clone();
        pairs[idx].1 = image;
        Self::new(self.k, pairs, format!("{} with image {idx} replaced", self.closed_under))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Compatibility,
    Orthogonality,
}

impl Relation {
    pub fn name(&self) -> &'static str {
        match self {
            Relation::Compatibility => "compatibility",
            Relation::Orthogonality => "orthogonality",
        }
    }

    fn holds(&self, x: &Subspace, y: &Subspace) -> Result<bool> {
        match self {
            Relation::Compatibility => is_compatible(x, y),
            Relation::Orthogonality => x.is_orthogonal(y),
        }
    }
}

/// A source pair whose relation status differs from that of its images.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationViolation {
    pub first: usize,
    pub second: usize,
    pub holds_for_sources: bool,
    pub holds_for_images: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreservationReport {
    pub relation: Relation,
    pub pairs_checked: usize,
    pub violations: Vec<RelationViolation>,
}

impl PreservationReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_preserving(f: &MapFixture, relation: Relation) -> Result<PreservationReport> {
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    for (a, (x, fx)) in f.pairs.iter().enumerate() {
        for (b, (y, fy)) in f.pairs.iter().enumerate().skip(a + 1) {
            pairs_checked += 1;
            let before = relation.holds(x, y)?;
            let after = relation.holds(fx, fy)?;
            if before != after {
                violations.push(RelationViolation { first: a, second: b, holds_for_sources: before, holds_for_images: after });
            }
        }
    }
    Ok(PreservationReport { relation, pairs_checked, violations })
}

/// `is_compatible(x, y) ⇔ is_compatible(f x, f y)` over all source pairs.
pub fn check_compatibility_preserving(f: &MapFixture) -> Result<PreservationReport> {
    check_preserving(f, Relation::Compatibility)
}

/// `is_orthogonal(x, y) ⇔ is_orthogonal(f x, f y)` over all source pairs.
pub fn check_orthogonality_preserving(f: &MapFixture) -> Result<PreservationReport> {
    check_preserving(f, Relation::Orthogonality)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    /// (a) the image of the apartment is an orthogonal apartment
    ApartmentImage,
    /// (b) maximal inexact subsets go to maximal inexact subsets
    MaximalInexact,
    /// (c) complementary subsets go to complementary subsets
    Complementary,
    /// (d) complementary counts of member pairs are preserved
    ComplementaryCount,
    /// (e) orthogonality of member pairs is preserved
    Orthogonality,
}

impl Stage {
    pub const ALL: [Stage; 5] =
        [Stage::ApartmentImage, Stage::MaximalInexact, Stage::Complementary, Stage::ComplementaryCount, Stage::Orthogonality];

    pub fn label(&self) -> char {
        match self {
            Stage::ApartmentImage => 'a',
            Stage::MaximalInexact => 'b',
            Stage::Complementary => 'c',
            Stage::ComplementaryCount => 'd',
            Stage::Orthogonality => 'e',
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Stage::ApartmentImage => "apartment-image",
            Stage::MaximalInexact => "maximal-inexact",
            Stage::Complementary => "complementary",
            Stage::ComplementaryCount => "complementary-count",
            Stage::Orthogonality => "orthogonality",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Members(IndexMember, IndexMember),
    Pair(PairDescriptor),
    Note(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Members(x, y) => write!(f, "members {x} and {y}"),
            Witness::Pair(p) => write!(f, "pair {p}"),
            Witness::Note(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageReport {
    pub stage: Stage,
    pub verdict: Verdict,
    pub checked: usize,
    pub failures: usize,
    /// First failure found, in enumeration order.
    pub witness: Option<Witness>,
}

impl StageReport {
    fn tally(stage: Stage, checked: usize, failed: Vec<Witness>) -> Self {
        let verdict = if failed.is_empty() { Verdict::Pass } else { Verdict::Fail };
        StageReport { stage, verdict, checked, failures: failed.len(), witness: failed.into_iter().next() }
    }

    fn skipped(stage: Stage) -> Self {
        StageReport { stage, verdict: Verdict::Skipped, checked: 0, failures: 0, witness: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineReport {
    pub n: usize,
    pub k: usize,
    pub stages: Vec<StageReport>,
    /// Base of the image apartment, when stage (a) passes.
    pub image_base: Option<Vec<CVector>>,
    /// Whether the complementary count of a member pair alone decides
    /// orthogonality at this shape (the orthogonal count is attained by no
    /// other meet size).
    pub count_decides_orthogonality: bool,
}

impl PipelineReport {
    pub fn passes(&self) -> bool {
        self.stages.iter().all(|s| s.verdict == Verdict::Pass)
    }

    pub fn stage(&self, stage: Stage) -> &StageReport {
        self.stages.iter().find(|s| s.stage == stage).expect("every stage is reported")
    }

    pub fn failed_stages(&self) -> Vec<Stage> {
        self.stages.iter().filter(|s| s.verdict == Verdict::Fail).map(|s| s.stage).collect()
    }
}

/// Runs the staged argument on one apartment: (a) the images of its members
/// form an orthogonal apartment; (b) maximal inexact subsets and (c)
/// complementary subsets are carried to subsets of the same kind; (d) the
/// number of complementary subsets through each member pair is preserved;
/// (e) orthogonality of member pairs is preserved.
///
/// Stages (b)-(d) need the image apartment and are skipped when (a) fails.
pub fn pipeline_check(f: &MapFixture, apartment: &GeometricApartment) -> Result<PipelineReport> {
    let shape = apartment.shape();
    let (n, k) = (shape.n(), shape.k());
    if f.k() != k || f.ambient() != n {
        return Err(Error::Prerequisite(format!(
            "fixture has rank {} in dimension {}, apartment has rank {k} in dimension {n}",
            f.k(),
            f.ambient()
        )));
    }
    let members = apartment.members();
    let mut images = Vec::with_capacity(members.len());
    for (m, s) in &members {
        let img = f.image_of(s).ok_or_else(|| Error::Prerequisite(format!("fixture is not defined on member {m}")))?;
        images.push(img.clone());
    }
    let index: HashMap<IndexMember, usize> = members.iter().enumerate().map(|(i, (m, _))| (*m, i)).collect();

    let orthogonal_count = predicted_count(n, k, (2 * k).saturating_sub(n))?;
    let count_decides_orthogonality =
        2 * k <= n && infer_meet_size(n, k, orthogonal_count)? == vec![(2 * k).saturating_sub(n)];

    let mut stages = Vec::with_capacity(5);
    let image_apartment = match analyze_compatible_family(&images, k) {
        Err(Error::Incompatible { first, second }) => {
            stages.push(StageReport::tally(
                Stage::ApartmentImage,
                1,
                vec![Witness::Members(members[first].0, members[second].0)],
            ));
            None
        }
        Err(e) => return Err(e),
        Ok(report) if !report.is_maximal => {
            let note = format!(
                "images are compatible but not an apartment (lines: {}, orthogonal: {}, spanning: {}, decomposing: {}, complete: {})",
                report.all_lines,
                report.mutually_orthogonal,
                report.spans_ambient,
                report.members_decompose,
                report.cardinality_complete
            );
            stages.push(StageReport::tally(Stage::ApartmentImage, 1, vec![Witness::Note(note)]));
            None
        }
        Ok(report) => {
            let base: Vec<CVector> = report.minimal_parts.iter().map(|p| p.basis()[0].clone()).collect();
            stages.push(StageReport::tally(Stage::ApartmentImage, 1, Vec::new()));
            Some(GeometricApartment::new(base, k)?)
        }
    };

    let image_coords = match &image_apartment {
        Some(target) => Some(
            images
                .iter()
                .map(|img| target.coordinatize(img)?.ok_or_else(|| Error::Prerequisite("image outside its apartment".into())))
                .collect::<Result<Vec<IndexMember>>>()?,
        ),
        None => None,
    };

    match (&image_apartment, &image_coords) {
        (Some(target), Some(coords)) => {
            let target_shape = target.shape();
            let map_family = |family: Vec<IndexMember>| -> Vec<IndexMember> {
                let mut out: Vec<IndexMember> = family.iter().map(|m| coords[index[m]]).collect();
                out.sort();
                out
            };
            for (stage, selector) in [
                (Stage::MaximalInexact, maximal_inexact as fn(_, _) -> Result<Vec<IndexMember>>),
                (Stage::Complementary, complementary),
            ] {
                let targets: HashSet<Vec<IndexMember>> =
                    target_shape.pairs().map(|q| selector(target_shape, q)).collect::<Result<_>>()?;
                let mut failed = Vec::new();
                let mut checked = 0;
                for p in shape.pairs() {
                    checked += 1;
                    if !targets.contains(&map_family(selector(shape, p)?)) {
                        failed.push(Witness::Pair(p));
                    }
                }
                stages.push(StageReport::tally(stage, checked, failed));
            }

            let mut failed = Vec::new();
            let mut checked = 0;
            for (a, (x, _)) in members.iter().enumerate() {
                for (b, (y, _)) in members.iter().enumerate().skip(a + 1) {
                    checked += 1;
                    let before = count_complementary_containing(shape, x, y)?;
                    let after = count_complementary_containing(target_shape, &coords[a], &coords[b])?;
                    if before != after {
                        failed.push(Witness::Members(*x, *y));
                    }
                }
            }
            stages.push(StageReport::tally(Stage::ComplementaryCount, checked, failed));
        }
        _ => {
            for stage in [Stage::MaximalInexact, Stage::Complementary, Stage::ComplementaryCount] {
                stages.push(StageReport::skipped(stage));
            }
        }
    }

    let mut failed = Vec::new();
    let mut checked = 0;
    for (a, (x, xs)) in members.iter().enumerate() {
        for (b, (y, ys)) in members.iter().enumerate().skip(a + 1) {
            checked += 1;
            if xs.is_orthogonal(ys)? != images[a].is_orthogonal(&images[b])? {
                failed.push(Witness::Members(*x, *y));
            }
        }
    }
    stages.push(StageReport::tally(Stage::Orthogonality, checked, failed));

    Ok(PipelineReport {
        n,
        k,
        stages,
        image_base: image_apartment.map(|a| a.base().to_vec()),
        count_decides_orthogonality,
    })
}
