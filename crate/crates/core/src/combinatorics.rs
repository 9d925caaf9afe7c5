//! The index-set shadow of an orthogonal apartment.
//!
//! Fix an orthogonal base `e_0, ..., e_{n-1}`. A member of the apartment of
//! rank `k` is the span of `e_s` for `s` in a k-subset `S`, so the whole
//! apartment is the set of k-subsets of `{0, ..., n-1}`. Subsets are stored
//! as `u64` bit masks, which bounds `n` at 64.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_AMBIENT: usize = 64;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn mask_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |acc, &i| acc | 1 << i)
}

fn indices_of(mut bits: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(bits.count_ones() as usize);
    while bits != 0 {
        out.push(bits.trailing_zeros() as usize);
        bits &= bits - 1;
    }
    out
}

/// Ambient dimension `n` and rank `k` of an apartment, `1 <= k <= n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ApartmentShape {
    n: usize,
    k: usize,
}

impl ApartmentShape {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if !(2..=MAX_AMBIENT).contains(&n) || k == 0 || k >= n {
            return Err(Error::InvalidShape { n, k });
        }
        Ok(ApartmentShape { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn member_count(&self) -> u128 {
        binomial(self.n, self.k)
    }

    fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1 << self.n) - 1
        }
    }

    /// All members in lexicographic order of their sorted index lists.
    pub fn members(&self) -> Vec<IndexMember> {
        // Gosper's hack walks k-subsets in increasing numeric (colex) order
        let mut out = Vec::with_capacity(self.member_count() as usize);
        let mut bits: u64 = (1 << self.k) - 1;
        let limit = self.full_mask();
        loop {
            out.push(IndexMember { bits });
            let c = bits & bits.wrapping_neg();
            let r = bits.wrapping_add(c);
            if r == 0 || r > limit {
                break;
            }
            bits = (((r ^ bits) >> 2) / c) | r;
            if bits > limit {
                break;
            }
        }
        out.sort();
        out
    }

    pub fn member(&self, indices: &[usize]) -> Result<IndexMember> {
        let m = IndexMember::from_indices(indices)?;
        self.check_member(&m)?;
        Ok(m)
    }

    pub fn check_member(&self, m: &IndexMember) -> Result<()> {
        if m.len() != self.k || m.bits & !self.full_mask() != 0 {
            return Err(Error::NotAMember { n: self.n, k: self.k });
        }
        Ok(())
    }

    pub fn pair(&self, i: usize, j: usize) -> Result<PairDescriptor> {
        for idx in [i, j] {
            if idx >= self.n {
                return Err(Error::IndexOutOfRange { index: idx, n: self.n });
            }
        }
        PairDescriptor::new(i, j)
    }

    /// All unordered pairs `{i, j}`, `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = PairDescriptor> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| PairDescriptor { lo: i, hi: j }))
    }
}

/// A k-subset of `{0, ..., n-1}`; the index set of an apartment member.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexMember {
    bits: u64,
}

impl IndexMember {
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        if let Some(&i) = indices.iter().find(|&&i| i >= MAX_AMBIENT) {
            return Err(Error::IndexOutOfRange { index: i, n: MAX_AMBIENT });
        }
        let bits = mask_of(indices);
        if bits.count_ones() as usize != indices.len() {
            return Err(Error::Parse(format!("repeated index in {indices:?}")));
        }
        Ok(IndexMember { bits })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Sorted indices.
    pub fn indices(&self) -> Vec<usize> {
        indices_of(self.bits)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < MAX_AMBIENT && self.bits >> i & 1 == 1
    }

    /// Number of shared indices, i.e. the dimension of the intersection of
    /// the two member subspaces.
    pub fn meet_size(&self, other: &IndexMember) -> usize {
        (self.bits & other.bits).count_ones() as usize
    }

    /// True iff exactly one of `i`, `j` is an index of this member.
    pub fn separates(&self, p: PairDescriptor) -> bool {
        self.contains(p.lo) != self.contains(p.hi)
    }
}

impl Ord for IndexMember {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(&other.indices())
    }
}

impl PartialOrd for IndexMember {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

impl fmt::Display for IndexMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An unordered pair of distinct indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairDescriptor {
    lo: usize,
    hi: usize,
}

impl PairDescriptor {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::DegeneratePair(i));
        }
        Ok(PairDescriptor { lo: i.min(j), hi: i.max(j) })
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }
}

impl fmt::Debug for PairDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.lo, self.hi)
    }
}

impl fmt::Display for PairDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Members containing every index of `with` and none of `without`.
pub fn select(shape: ApartmentShape, with: &[usize], without: &[usize]) -> Result<Vec<IndexMember>> {
    for &i in with.iter().chain(without) {
        if i >= shape.n {
            return Err(Error::IndexOutOfRange { index: i, n: shape.n });
        }
    }
    if let Some(&i) = with.iter().find(|i| without.contains(i)) {
        return Err(Error::OverlappingConstraints(i));
    }
    let (plus, minus) = (mask_of(with), mask_of(without));
    Ok(shape.members().into_iter().filter(|m| m.bits & plus == plus && m.bits & minus == 0).collect())
}

/// `S_i`: the intersection of every member containing `i` with the
/// complement of every member not containing `i`. No constraints leave the
/// full index set. Always contains `i`.
pub fn support_set(shape: ApartmentShape, family: &[IndexMember], i: usize) -> Result<Vec<usize>> {
    Ok(indices_of(support_mask(shape, family, i)?))
}

fn support_mask(shape: ApartmentShape, family: &[IndexMember], i: usize) -> Result<u64> {
    if i >= shape.n {
        return Err(Error::IndexOutOfRange { index: i, n: shape.n });
    }
    let full = shape.full_mask();
    let mut s = full;
    for m in family {
        shape.check_member(m)?;
        s &= if m.contains(i) { m.bits } else { !m.bits & full };
    }
    Ok(s)
}

/// Witness `{i, j}` with `j` in `S_i` for the smallest `i` whose support set
/// has at least two elements (smallest such `j`). The family is then contained
/// in [`maximal_inexact`] of the witness. `None` means every `S_i = {i}`: the
/// fixed apartment is the only one containing the family.
pub fn is_inexact(shape: ApartmentShape, family: &[IndexMember]) -> Result<Option<PairDescriptor>> {
    for i in 0..shape.n {
        let others = support_mask(shape, family, i)? & !(1 << i);
        if others != 0 {
            return Ok(Some(PairDescriptor::new(i, others.trailing_zeros() as usize)?));
        }
    }
    Ok(None)
}

fn check_pair(shape: ApartmentShape, p: PairDescriptor) -> Result<()> {
    if p.hi >= shape.n {
        return Err(Error::IndexOutOfRange { index: p.hi, n: shape.n });
    }
    Ok(())
}

/// Members containing both or neither of the pair's indices.
pub fn maximal_inexact(shape: ApartmentShape, p: PairDescriptor) -> Result<Vec<IndexMember>> {
    check_pair(shape, p)?;
    Ok(shape.members().into_iter().filter(|m| !m.separates(p)).collect())
}

/// `C_ij`: members containing exactly one of the pair's indices.
pub fn complementary(shape: ApartmentShape, p: PairDescriptor) -> Result<Vec<IndexMember>> {
    check_pair(shape, p)?;
    Ok(shape.members().into_iter().filter(|m| m.separates(p)).collect())
}

/// Number of complementary subsets containing both members, by enumeration
/// of all pairs.
pub fn count_complementary_containing(shape: ApartmentShape, x: &IndexMember, y: &IndexMember) -> Result<u64> {
    shape.check_member(x)?;
    shape.check_member(y)?;
    Ok(shape.pairs().filter(|&p| x.separates(p) && y.separates(p)).count() as u64)
}

/// Feasible intersection sizes of two members: `max(0, 2k - n) ..= k`.
pub fn feasible_meets(n: usize, k: usize) -> std::ops::RangeInclusive<usize> {
    (2 * k).saturating_sub(n)..=k
}

/// Closed form for the complementary count of two members meeting in `m`
/// indices: `(k - m)^2` pairs split between the two differences plus
/// `m (n - 2k + m)` pairs joining the meet to the outside of the union.
pub fn predicted_count(n: usize, k: usize, m: usize) -> Result<u64> {
    ApartmentShape::new(n, k)?;
    if !feasible_meets(n, k).contains(&m) {
        return Err(Error::InfeasibleMeet { n, k, m });
    }
    let d = (k - m) as u64;
    Ok(d * d + m as u64 * (n + m - 2 * k) as u64)
}

/// All feasible `m` whose predicted count equals `count`.
pub fn infer_meet_size(n: usize, k: usize, count: u64) -> Result<Vec<usize>> {
    ApartmentShape::new(n, k)?;
    Ok(feasible_meets(n, k).filter(|&m| predicted_count(n, k, m) == Ok(count)).collect())
}

/// A pair of members with exactly `m` shared indices: `{0..k}` and
/// `{0..m} ∪ {k..2k-m}`.
pub fn representative_pair(shape: ApartmentShape, m: usize) -> Result<(IndexMember, IndexMember)> {
    let (n, k) = (shape.n, shape.k);
    if !feasible_meets(n, k).contains(&m) {
        return Err(Error::InfeasibleMeet { n, k, m });
    }
    let x: Vec<usize> = (0..k).collect();
    let y: Vec<usize> = (0..m).chain(k..2 * k - m).collect();
    Ok((shape.member(&x)?, shape.member(&y)?))
}

/// Complementary counts of one shape, by brute force on representative pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeCounts {
    pub n: usize,
    pub k: usize,
    /// `(m, count)` for every feasible `m <= k - 1` (distinct members).
    pub distinct: Vec<(usize, u64)>,
    /// Count for `X = Y`.
    pub self_count: u64,
}

/// Two meet sizes of distinct members that share a complementary count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Collision {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub m_other: usize,
    pub count: u64,
}

impl Collision {
    /// `n = 2k + 2` or `n = 2k - 2`.
    pub fn at_exceptional_dimension(&self) -> bool {
        is_exceptional(self.n, self.k)
    }
}

pub fn is_exceptional(n: usize, k: usize) -> bool {
    n == 2 * k + 2 || n + 2 == 2 * k
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyScan {
    pub k_max: usize,
    pub n_max: usize,
    pub shapes: Vec<ShapeCounts>,
    pub collisions: Vec<Collision>,
}

impl DegeneracyScan {
    /// Shapes with `n = 2k ± 2` where distinct members can have at least two
    /// meet sizes yet no collision occurs.
    pub fn exceptional_without_collision(&self) -> Vec<(usize, usize)> {
        self.shapes
            .iter()
            .filter(|s| is_exceptional(s.n, s.k) && s.distinct.len() >= 2)
            .filter(|s| !self.collisions.iter().any(|c| (c.n, c.k) == (s.n, s.k)))
            .map(|s| (s.n, s.k))
            .collect()
    }

    /// Exceptional shapes where distinct members admit only one meet size,
    /// so there is nothing to distinguish.
    pub fn exceptional_trivial(&self) -> Vec<(usize, usize)> {
        self.shapes
            .iter()
            .filter(|s| is_exceptional(s.n, s.k) && s.distinct.len() < 2)
            .map(|s| (s.n, s.k))
            .collect()
    }
}

/// For every shape with `2 <= k <= k_max` and `k < n <= n_max`, computes the
/// complementary count of each meet size by brute force and reports every
/// pair `m < m'` of distinct-member meet sizes with equal counts.
pub fn degeneracy_scan(k_max: usize, n_max: usize) -> Result<DegeneracyScan> {
    if k_max < 2 || n_max < 2 * k_max || n_max > MAX_AMBIENT {
        return Err(Error::InvalidShape { n: n_max, k: k_max });
    }
    let mut shapes = Vec::new();
    let mut collisions = Vec::new();
    for k in 2..=k_max {
        for n in k + 1..=n_max {
            let shape = ApartmentShape::new(n, k)?;
            let count_at = |m: usize| -> Result<u64> {
                let (x, y) = representative_pair(shape, m)?;
                count_complementary_containing(shape, &x, &y)
            };
            let distinct = feasible_meets(n, k)
                .filter(|&m| m < k)
                .map(|m| Ok((m, count_at(m)?)))
                .collect::<Result<Vec<_>>>()?;
            for (a, &(m, count)) in distinct.iter().enumerate() {
                for &(m_other, other) in &distinct[a + 1..] {
                    if count == other {
                        collisions.push(Collision { n, k, m, m_other, count });
                    }
                }
            }
            shapes.push(ShapeCounts { n, k, distinct, self_count: count_at(k)? });
        }
    }
    collisions.sort();
    Ok(DegeneracyScan { k_max, n_max, shapes, collisions })
}

/// Distribution of `|F ∩ G|` over unordered pairs of distinct families.
/// Duplicate families are merged before pairing.
pub fn pairwise_intersection_sizes(families: &[Vec<IndexMember>]) -> (usize, BTreeMap<usize, u64>) {
    let mut distinct: Vec<Vec<IndexMember>> = families
        .iter()
        .map(|f| {
            let mut f = f.clone();
            f.sort();
            f.dedup();
            f
        })
        .collect();
    distinct.sort();
    distinct.dedup();
    let mut histogram = BTreeMap::new();
    for (a, f) in distinct.iter().enumerate() {
        for g in &distinct[a + 1..] {
            let shared = f.iter().filter(|m| g.binary_search(m).is_ok()).count();
            *histogram.entry(shared).or_insert(0) += 1;
        }
    }
    (distinct.len(), histogram)
}

/// Observed complementary counts over all pairs of distinct members, grouped
/// by meet size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetCountRow {
    pub m: usize,
    pub predicted: u64,
    pub member_pairs: u64,
    pub observed_min: u64,
    pub observed_max: u64,
}

pub fn meet_count_table(shape: ApartmentShape) -> Result<Vec<MeetCountRow>> {
    let members = shape.members();
    let pair_masks: Vec<u64> = shape.pairs().map(|p| 1 << p.lo | 1 << p.hi).collect();
    let mut rows: BTreeMap<usize, MeetCountRow> = BTreeMap::new();
    for (a, x) in members.iter().enumerate() {
        for y in &members[a + 1..] {
            let count =
                pair_masks.iter().filter(|&&pm| (x.bits & pm).count_ones() == 1 && (y.bits & pm).count_ones() == 1).count()
                    as u64;
            let m = x.meet_size(y);
            let row = match rows.entry(m) {
                std::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
                std::collections::btree_map::Entry::Vacant(e) => e.insert(MeetCountRow {
                    m,
                    predicted: predicted_count(shape.n, shape.k, m)?,
                    member_pairs: 0,
                    observed_min: u64::MAX,
                    observed_max: 0,
                }),
            };
            row.member_pairs += 1;
            row.observed_min = row.observed_min.min(count);
            row.observed_max = row.observed_max.max(count);
        }
    }
    Ok(rows.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(n: usize, k: usize) -> ApartmentShape {
        ApartmentShape::new(n, k).unwrap()
    }

    fn mem(s: ApartmentShape, idx: &[usize]) -> IndexMember {
        s.member(idx).unwrap()
    }

    fn pair(i: usize, j: usize) -> PairDescriptor {
        PairDescriptor::new(i, j).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(64, 32), 1832624140942590534);
    }

    #[test]
    fn members_enumerate_every_k_subset_once() {
        let s = shape(6, 2);
        let members = s.members();
        assert_eq!(members.len(), 15);
        assert_eq!(members[0], mem(s, &[0, 1]));
        assert_eq!(members[14], mem(s, &[4, 5]));
        assert!(members.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(shape(64, 1).members().len(), 64);
        assert_eq!(shape(64, 63).members().len(), 64);
    }

    #[test]
    fn shape_validation() {
        for (n, k) in [(1, 0), (3, 0), (3, 3), (65, 2), (2, 5)] {
            assert_eq!(ApartmentShape::new(n, k), Err(Error::InvalidShape { n, k }));
        }
        assert!(shape(4, 2).member(&[0, 1, 2]).is_err());
        assert!(shape(4, 2).member(&[0, 4]).is_err());
    }

    #[test]
    fn pairs_are_unordered() {
        assert_eq!(pair(3, 1), pair(1, 3));
        assert_eq!(PairDescriptor::new(2, 2), Err(Error::DegeneratePair(2)));
        assert_eq!(shape(5, 2).pairs().count(), 10);
    }

    #[test]
    fn select_examples() {
        let s = shape(6, 2);
        assert_eq!(select(s, &[1, 2], &[]).unwrap(), vec![mem(s, &[1, 2])]);
        let without = select(s, &[], &[1, 2]).unwrap();
        assert_eq!(without.len(), 6);
        assert!(without.iter().all(|m| !m.contains(1) && !m.contains(2)));
        assert_eq!(select(s, &[], &[]).unwrap(), s.members());
        assert!(select(s, &[0, 1, 2], &[]).unwrap().is_empty());
        assert_eq!(select(s, &[1], &[1]), Err(Error::OverlappingConstraints(1)));
        assert!(select(s, &[6], &[]).is_err());
    }

    #[test]
    fn select_cardinality_matches_binomial() {
        for n in 3..=8 {
            for k in 1..n {
                let s = shape(n, k);
                for w in 0..=2.min(n) {
                    for wo in 0..=(n - w).min(2) {
                        let with: Vec<usize> = (0..w).collect();
                        let without: Vec<usize> = (w..w + wo).collect();
                        let got = select(s, &with, &without).unwrap().len() as u128;
                        let want = if k >= w { binomial(n - w - wo, k - w) } else { 0 };
                        assert_eq!(got, want, "n={n} k={k} with={with:?} without={without:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn support_set_examples() {
        let s = shape(4, 2);
        let family = [mem(s, &[0, 1]), mem(s, &[2, 3])];
        assert_eq!(support_set(s, &family, 0).unwrap(), vec![0, 1]);
        let all = s.members();
        for i in 0..4 {
            assert_eq!(support_set(s, &all, i).unwrap(), vec![i]);
        }
        assert_eq!(support_set(s, &[], 0).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn inexact_examples() {
        let s = shape(4, 2);
        assert_eq!(is_inexact(s, &[mem(s, &[0, 1]), mem(s, &[2, 3])]).unwrap(), Some(pair(0, 1)));
        assert_eq!(is_inexact(s, &s.members()).unwrap(), None);

        let s = shape(6, 2);
        let family = maximal_inexact(s, pair(0, 1)).unwrap();
        let witness = is_inexact(s, &family).unwrap().expect("inexact");
        assert_eq!(witness, pair(0, 1));
    }

    #[test]
    fn maximal_inexact_examples() {
        let s = shape(6, 2);
        assert_eq!(maximal_inexact(s, pair(0, 1)).unwrap().len(), 7);
        let s = shape(4, 2);
        let mi = maximal_inexact(s, pair(0, 1)).unwrap();
        assert_eq!(mi, vec![mem(s, &[0, 1]), mem(s, &[2, 3])]);
        assert_eq!(maximal_inexact(s, pair(2, 3)).unwrap(), mi);
        assert!(maximal_inexact(s, pair(0, 4)).is_err());
    }

    #[test]
    fn complementary_examples() {
        let s = shape(6, 2);
        assert_eq!(complementary(s, pair(0, 1)).unwrap().len(), 8);
        let s = shape(4, 2);
        let c = complementary(s, pair(0, 1)).unwrap();
        assert_eq!(c, vec![mem(s, &[0, 2]), mem(s, &[0, 3]), mem(s, &[1, 2]), mem(s, &[1, 3])]);
    }

    #[test]
    fn complementary_and_maximal_inexact_partition_the_apartment() {
        for (n, k) in [(4, 2), (5, 2), (6, 3), (7, 3)] {
            let s = shape(n, k);
            for p in s.pairs() {
                let mut both = maximal_inexact(s, p).unwrap();
                let c = complementary(s, p).unwrap();
                assert!(c.iter().all(|m| !both.contains(m)));
                both.extend(c);
                both.sort();
                assert_eq!(both, s.members());
            }
        }
    }

    #[test]
    fn complementary_count_examples() {
        let s = shape(6, 2);
        assert_eq!(count_complementary_containing(s, &mem(s, &[0, 1]), &mem(s, &[2, 3])).unwrap(), 4);
        assert_eq!(count_complementary_containing(s, &mem(s, &[0, 1]), &mem(s, &[0, 2])).unwrap(), 4);
        let s = shape(8, 2);
        assert_eq!(count_complementary_containing(s, &mem(s, &[0, 1]), &mem(s, &[0, 2])).unwrap(), 6);
        let bad = IndexMember::from_indices(&[0]).unwrap();
        assert!(count_complementary_containing(s, &bad, &mem(s, &[0, 2])).is_err());
    }

    #[test]
    fn predicted_count_examples() {
        assert_eq!(predicted_count(6, 2, 0).unwrap(), 4);
        assert_eq!(predicted_count(6, 2, 1).unwrap(), 4);
        assert_eq!(predicted_count(6, 2, 2).unwrap(), 8);
        assert_eq!(predicted_count(10, 3, 0).unwrap(), 9);
        assert_eq!(predicted_count(10, 3, 1).unwrap(), 9);
        for (n, k) in [(5, 2), (7, 3), (9, 4)] {
            assert_eq!(predicted_count(n, k, k).unwrap(), (k * (n - k)) as u64);
        }
        assert_eq!(predicted_count(4, 3, 1), Err(Error::InfeasibleMeet { n: 4, k: 3, m: 1 }));
        assert_eq!(predicted_count(6, 2, 3), Err(Error::InfeasibleMeet { n: 6, k: 2, m: 3 }));
    }

    #[test]
    fn infer_meet_size_examples() {
        assert_eq!(infer_meet_size(8, 2, 6).unwrap(), vec![1]);
        assert_eq!(infer_meet_size(6, 2, 4).unwrap(), vec![0, 1]);
        // N(0) = 4, N(1) = 5, N(2) = 10 at (7, 2)
        assert_eq!(infer_meet_size(7, 2, 5).unwrap(), vec![1]);
        assert!(infer_meet_size(7, 2, 6).unwrap().is_empty());
    }

    #[test]
    fn representative_pairs_have_requested_meet() {
        for (n, k) in [(4, 3), (6, 2), (10, 4)] {
            let s = shape(n, k);
            for m in feasible_meets(n, k) {
                let (x, y) = representative_pair(s, m).unwrap();
                assert_eq!(x.meet_size(&y), m);
            }
        }
    }

    #[test]
    fn scan_small_ranges() {
        let scan = degeneracy_scan(2, 10).unwrap();
        assert!(scan.collisions.contains(&Collision { n: 6, k: 2, m: 0, m_other: 1, count: 4 }));
        assert!(scan.collisions.iter().all(|c| c.k == 2 && c.n == 6));

        let scan = degeneracy_scan(3, 10).unwrap();
        assert!(scan.collisions.iter().any(|c| c.n == 8 && c.k == 3));
        let beyond = Collision { n: 10, k: 3, m: 0, m_other: 1, count: 9 };
        assert!(scan.collisions.contains(&beyond));
        assert!(!beyond.at_exceptional_dimension());
        // (4, 3): distinct members always share two indices
        assert_eq!(scan.exceptional_trivial(), vec![(4, 3)]);
        assert!(scan.exceptional_without_collision().is_empty());
        assert!(degeneracy_scan(1, 10).is_err());
        assert!(degeneracy_scan(3, 5).is_err());
    }

    #[test]
    fn intersection_sizes_at_six_two() {
        let s = shape(6, 2);
        let mi: Vec<_> = s.pairs().map(|p| maximal_inexact(s, p).unwrap()).collect();
        let (count, hist) = pairwise_intersection_sizes(&mi);
        assert_eq!(count, 15);
        assert_eq!(hist.into_iter().collect::<Vec<_>>(), vec![(3, 105)]);
        let c: Vec<_> = s.pairs().map(|p| complementary(s, p).unwrap()).collect();
        let (_, hist) = pairwise_intersection_sizes(&c);
        assert_eq!(hist.into_iter().collect::<Vec<_>>(), vec![(4, 105)]);
    }

    #[test]
    fn maximal_inexact_sets_collapse_when_n_is_twice_k() {
        let s = shape(4, 2);
        let mi: Vec<_> = s.pairs().map(|p| maximal_inexact(s, p).unwrap()).collect();
        assert_eq!(pairwise_intersection_sizes(&mi).0, 3);
    }

    #[test]
    fn meet_table_is_constant_per_meet() {
        let rows = meet_count_table(shape(6, 2)).unwrap();
        assert_eq!(rows.len(), 2);
        for row in rows {
            assert_eq!((row.observed_min, row.observed_max, row.predicted), (4, 4, 4));
        }
    }
}
