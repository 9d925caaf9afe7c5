//! Report documents. Structured output is one JSON document per run with a
//! versioned `schema` field; text output is `key=value` oriented.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const STATS_SCHEMA: &str = "apartments.apartment-stats/1";
pub const SCAN_SCHEMA: &str = "apartments.degeneracy-scan/1";
pub const MAP_SCHEMA: &str = "apartments.check-map/1";
pub const FAMILY_SCHEMA: &str = "apartments.verify-family/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeetRow {
    pub m: usize,
    pub predicted: u64,
    pub member_pairs: u64,
    pub observed_min: u64,
    pub observed_max: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeBucket {
    pub size: usize,
    pub pairs: u64,
}

/// Sizes of `|F ∩ G|` over unordered pairs of distinct families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionStats {
    pub families: usize,
    pub distinct_families: usize,
    pub histogram: Vec<SizeBucket>,
}

impl IntersectionStats {
    /// The common size when every pair meets in the same number of members.
    pub fn constant(&self) -> Option<usize> {
        match self.histogram.as_slice() {
            [only] => Some(only.size),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApartmentStatsReport {
    pub schema: String,
    pub n: usize,
    pub k: usize,
    pub members: u64,
    pub complementary_subsets: u64,
    pub self_count: u64,
    pub meets: Vec<MeetRow>,
    /// Count shared by every pair of distinct members, if there is one.
    pub distinct_pair_count: Option<u64>,
    pub complementary_intersections: IntersectionStats,
    pub maximal_inexact_intersections: IntersectionStats,
    /// Index pairs whose maximal inexact subsets coincide, groups of two or more.
    pub collapsed_maximal_inexact: Vec<Vec<[usize; 2]>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CollisionFlag {
    /// `n = 2k + 2` or `n = 2k - 2`.
    Predicted,
    Additional,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionRow {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub m_other: usize,
    pub count: u64,
    pub flag: CollisionFlag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyScanReport {
    pub schema: String,
    pub k_max: usize,
    pub n_max: usize,
    pub shapes_scanned: usize,
    pub collisions: Vec<CollisionRow>,
    /// `n = 2k ± 2` shapes where distinct members always meet in one size.
    pub trivial_exceptional: Vec<[usize; 2]>,
    /// `n = 2k ± 2` shapes with several meet sizes but no collision.
    pub exceptional_without_collision: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationRow {
    pub first: usize,
    pub second: usize,
    pub holds_for_sources: bool,
    pub holds_for_images: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreservationRow {
    pub relation: String,
    pub pairs_checked: usize,
    pub passed: bool,
    pub violations: Vec<ViolationRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StageVerdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRow {
    pub label: String,
    pub name: String,
    pub verdict: StageVerdict,
    pub checked: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineRow {
    pub apartment: String,
    /// Why the pipeline did not run, if it did not.
    pub skipped: Option<String>,
    pub stages: Vec<StageRow>,
    /// Members shared by the apartment and its image apartment.
    pub shared_with_image: Option<usize>,
    pub count_decides_orthogonality: Option<bool>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckMapReport {
    pub schema: String,
    pub rank: usize,
    pub ambient: usize,
    pub closed_under: String,
    pub pairs: usize,
    pub compatibility: PreservationRow,
    pub orthogonality: PreservationRow,
    pub pipelines: Vec<PipelineRow>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncompatiblePair {
    pub first: String,
    pub second: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFlags {
    pub all_lines: bool,
    pub mutually_orthogonal: bool,
    pub spans_ambient: bool,
    pub members_decompose: bool,
    pub cardinality_complete: bool,
    pub is_maximal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyFamilyReport {
    pub schema: String,
    pub ambient: usize,
    pub k: usize,
    pub members: usize,
    pub compatible: bool,
    pub incompatible_pairs: Vec<IncompatiblePair>,
    /// Present only for a mutually compatible family.
    pub flags: Option<FamilyFlags>,
    /// Minimal parts in canonical form, as rows of entries.
    pub minimal_parts: Vec<Vec<Vec<String>>>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn histogram_text(stats: &IntersectionStats) -> String {
    let buckets: Vec<String> = stats.histogram.iter().map(|b| format!("{}:{}", b.size, b.pairs)).collect();
    format!("families={} distinct={} sizes={}", stats.families, stats.distinct_families, buckets.join(","))
}

impl ApartmentStatsReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("apartment-stats n={} k={}\n", self.n, self.k);
        let _ = writeln!(out, "members={}", self.members);
        let _ = writeln!(out, "complementary-subsets={}", self.complementary_subsets);
        let _ = writeln!(out, "self-count={}", self.self_count);
        for r in &self.meets {
            let _ = writeln!(
                out,
                "meet m={} predicted={} member-pairs={} observed={}..{}",
                r.m, r.predicted, r.member_pairs, r.observed_min, r.observed_max
            );
        }
        match self.distinct_pair_count {
            Some(c) => {
                let _ = writeln!(out, "distinct-pair-count={c}");
            }
            None => out.push_str("distinct-pair-count=varies\n"),
        }
        let _ = writeln!(out, "complementary-intersections {}", histogram_text(&self.complementary_intersections));
        let _ = writeln!(out, "maximal-inexact-intersections {}", histogram_text(&self.maximal_inexact_intersections));
        for group in &self.collapsed_maximal_inexact {
            let pairs: Vec<String> = group.iter().map(|[i, j]| format!("{{{i},{j}}}")).collect();
            let _ = writeln!(out, "maximal-inexact-collapse {}", pairs.join(" "));
        }
        out
    }
}

impl DegeneracyScanReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "degeneracy-scan k-max={} n-max={} shapes={} collisions={}\n",
            self.k_max,
            self.n_max,
            self.shapes_scanned,
            self.collisions.len()
        );
        out.push_str("n k m m' count flag\n");
        for c in &self.collisions {
            let flag = match c.flag {
                CollisionFlag::Predicted => "predicted",
                CollisionFlag::Additional => "additional",
            };
            let _ = writeln!(out, "{} {} {} {} {} {flag}", c.n, c.k, c.m, c.m_other, c.count);
        }
        for [n, k] in &self.trivial_exceptional {
            let _ = writeln!(out, "note n={n} k={k}: distinct members always share {} indices", 2 * k - n);
        }
        for [n, k] in &self.exceptional_without_collision {
            let _ = writeln!(out, "note n={n} k={k}: no collision");
        }
        out
    }
}

fn preservation_text(out: &mut String, row: &PreservationRow) {
    let _ = writeln!(
        out,
        "{} pairs-checked={} violations={} {}",
        row.relation,
        row.pairs_checked,
        row.violations.len(),
        if row.passed { "PASS" } else { "FAIL" }
    );
    for v in row.violations.iter().take(5) {
        let _ = writeln!(
            out,
            "  witness: fixture pairs {} and {} (sources {}, images {})",
            v.first,
            v.second,
            yes_no(v.holds_for_sources),
            yes_no(v.holds_for_images)
        );
    }
}

impl CheckMapReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "check-map rank={} ambient={} pairs={} closed-under={}\n",
            self.rank, self.ambient, self.pairs, self.closed_under
        );
        preservation_text(&mut out, &self.compatibility);
        preservation_text(&mut out, &self.orthogonality);
        for p in &self.pipelines {
            let _ = writeln!(out, "pipeline {}", p.apartment);
            if let Some(reason) = &p.skipped {
                let _ = writeln!(out, "  skipped: {reason}");
                continue;
            }
            for s in &p.stages {
                let verdict = match s.verdict {
                    StageVerdict::Pass => "PASS",
                    StageVerdict::Fail => "FAIL",
                    StageVerdict::Skipped => "SKIP",
                };
                let _ = write!(out, "  ({}) {} {verdict} checked={} failures={}", s.label, s.name, s.checked, s.failures);
                if let Some(w) = &s.witness {
                    let _ = write!(out, " witness: {w}");
                }
                out.push('\n');
            }
            if let Some(shared) = p.shared_with_image {
                let _ = writeln!(out, "  |A ∩ A'|={shared}");
            }
            if let Some(decides) = p.count_decides_orthogonality {
                let _ = writeln!(out, "  count-decides-orthogonality={}", yes_no(decides));
            }
        }
        let _ = writeln!(out, "result={}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}

impl VerifyFamilyReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("verify-family ambient={} k={} members={}\n", self.ambient, self.k, self.members);
        let _ = writeln!(out, "compatible={}", yes_no(self.compatible));
        for p in &self.incompatible_pairs {
            let _ = writeln!(out, "incompatible {} {}", p.first, p.second);
        }
        if let Some(f) = &self.flags {
            let _ = writeln!(out, "all_lines={}", yes_no(f.all_lines));
            let _ = writeln!(out, "mutually_orthogonal={}", yes_no(f.mutually_orthogonal));
            let _ = writeln!(out, "spans_ambient={}", yes_no(f.spans_ambient));
            let _ = writeln!(out, "members_decompose={}", yes_no(f.members_decompose));
            let _ = writeln!(out, "cardinality_complete={}", yes_no(f.cardinality_complete));
            let _ = writeln!(out, "is_maximal={}", yes_no(f.is_maximal));
            let _ = writeln!(out, "minimal_parts={}", self.minimal_parts.len());
            for part in &self.minimal_parts {
                let rows: Vec<String> = part.iter().map(|r| format!("({})", r.join(" "))).collect();
                let _ = writeln!(out, "  part {}", rows.join(" "));
            }
        }
        out
    }
}

/// Any command's report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Report {
    ApartmentStats(ApartmentStatsReport),
    DegeneracyScan(DegeneracyScanReport),
    CheckMap(CheckMapReport),
    VerifyFamily(VerifyFamilyReport),
}

impl Report {
    pub fn to_text(&self) -> String {
        match self {
            Report::ApartmentStats(r) => r.to_text(),
            Report::DegeneracyScan(r) => r.to_text(),
            Report::CheckMap(r) => r.to_text(),
            Report::VerifyFamily(r) => r.to_text(),
        }
    }

    pub fn to_structured(&self) -> String {
        let mut s = match self {
            Report::ApartmentStats(r) => serde_json::to_string_pretty(r),
            Report::DegeneracyScan(r) => serde_json::to_string_pretty(r),
            Report::CheckMap(r) => serde_json::to_string_pretty(r),
            Report::VerifyFamily(r) => serde_json::to_string_pretty(r),
        }
        .expect("reports serialize");
        s.push('\n');
        s
    }
}
