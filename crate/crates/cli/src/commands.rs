//! The four subcommands. Each returns a report and whether it verified; all
//! numbers come from the core library.

use std::collections::BTreeMap;
use std::path::Path;

use apartments_core::combinatorics::{
    self, binomial, complementary, count_complementary_containing, maximal_inexact, meet_count_table,
    pairwise_intersection_sizes,
};
use apartments_core::logic::analyze_compatible_family;
use apartments_core::transform::{
    check_compatibility_preserving, check_orthogonality_preserving, pipeline_check, PreservationReport, Verdict,
};
use apartments_core::{is_compatible, ApartmentShape, Error, GeometricApartment, IndexMember, MapFixture};
use thiserror::Error;

use crate::format::{FixtureFile, FormatError, SubspaceFile};
use crate::report::*;

pub const STATS_MAX_N: usize = 12;
pub const STATS_MAX_N_LARGE: usize = 24;
pub const SCAN_MAX_K: usize = 6;
pub const SCAN_MAX_N: usize = 24;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: FormatError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid input: {0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Input(format!("{e:#}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub report: Report,
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn parse_error(path: &Path) -> impl FnOnce(FormatError) -> CliError + '_ {
    move |source| CliError::Parse { path: path.display().to_string(), source }
}

fn intersection_stats(families: &[Vec<IndexMember>]) -> IntersectionStats {
    let (distinct_families, histogram) = pairwise_intersection_sizes(families);
    IntersectionStats {
        families: families.len(),
        distinct_families,
        histogram: histogram.into_iter().map(|(size, pairs)| SizeBucket { size, pairs }).collect(),
    }
}

pub fn apartment_stats(n: usize, k: usize, allow_large: bool) -> Result<Outcome, CliError> {
    let limit = if allow_large { STATS_MAX_N_LARGE } else { STATS_MAX_N };
    if n > limit {
        let hint = if allow_large { String::new() } else { format!("; --allow-large raises it to {STATS_MAX_N_LARGE}") };
        return Err(CliError::Usage(format!("n={n} exceeds the bound {limit}{hint}")));
    }
    if k == 0 || k >= n {
        return Err(CliError::Usage(format!("need 1 <= k < n, got n={n} k={k}")));
    }
    let shape = ApartmentShape::new(n, k).map_err(|e| CliError::Usage(e.to_string()))?;
    let members = shape.members();
    let self_count = count_complementary_containing(shape, &members[0], &members[0])?;
    let meets: Vec<MeetRow> = meet_count_table(shape)?
        .into_iter()
        .map(|r| MeetRow {
            m: r.m,
            predicted: r.predicted,
            member_pairs: r.member_pairs,
            observed_min: r.observed_min,
            observed_max: r.observed_max,
        })
        .collect();
    let distinct_pair_count = match meets.first() {
        Some(first) if meets.iter().all(|r| r.observed_min == first.observed_min && r.observed_max == first.observed_min) => {
            Some(first.observed_min)
        }
        _ => None,
    };

    let mut complementary_families = Vec::new();
    let mut collapse: BTreeMap<Vec<IndexMember>, Vec<[usize; 2]>> = BTreeMap::new();
    let mut inexact_families = Vec::new();
    for p in shape.pairs() {
        complementary_families.push(complementary(shape, p)?);
        let mi = maximal_inexact(shape, p)?;
        collapse.entry(mi.clone()).or_default().push([p.lo(), p.hi()]);
        inexact_families.push(mi);
    }
    let mut collapsed_maximal_inexact: Vec<Vec<[usize; 2]>> = collapse.into_values().filter(|g| g.len() > 1).collect();
    collapsed_maximal_inexact.sort();

    let report = ApartmentStatsReport {
        schema: STATS_SCHEMA.to_string(),
        n,
        k,
        members: members.len() as u64,
        complementary_subsets: binomial(n, 2) as u64,
        self_count,
        meets,
        distinct_pair_count,
        complementary_intersections: intersection_stats(&complementary_families),
        maximal_inexact_intersections: intersection_stats(&inexact_families),
        collapsed_maximal_inexact,
    };
    Ok(Outcome { report: Report::ApartmentStats(report), passed: true })
}

pub fn degeneracy_scan(k_max: usize, n_max: usize, allow_large: bool) -> Result<Outcome, CliError> {
    if !allow_large && (k_max > SCAN_MAX_K || n_max > SCAN_MAX_N) {
        return Err(CliError::Usage(format!(
            "bounds k-max={k_max} n-max={n_max} exceed {SCAN_MAX_K} and {SCAN_MAX_N}; pass --allow-large"
        )));
    }
    if k_max < 2 || n_max < 2 * k_max || n_max > combinatorics::MAX_AMBIENT {
        return Err(CliError::Usage(format!(
            "need k-max >= 2 and 2 * k-max <= n-max <= {}, got k-max={k_max} n-max={n_max}",
            combinatorics::MAX_AMBIENT
        )));
    }
    let scan = combinatorics::degeneracy_scan(k_max, n_max)?;
    let collisions = scan
        .collisions
        .iter()
        .map(|c| CollisionRow {
            n: c.n,
            k: c.k,
            m: c.m,
            m_other: c.m_other,
            count: c.count,
            flag: if c.at_exceptional_dimension() { CollisionFlag::Predicted } else { CollisionFlag::Additional },
        })
        .collect();
    let pairs = |v: Vec<(usize, usize)>| v.into_iter().map(|(n, k)| [n, k]).collect();
    let report = DegeneracyScanReport {
        schema: SCAN_SCHEMA.to_string(),
        k_max,
        n_max,
        shapes_scanned: scan.shapes.len(),
        collisions,
        trivial_exceptional: pairs(scan.exceptional_trivial()),
        exceptional_without_collision: pairs(scan.exceptional_without_collision()),
    };
    Ok(Outcome { report: Report::DegeneracyScan(report), passed: true })
}

fn preservation_row(r: &PreservationReport) -> PreservationRow {
    PreservationRow {
        relation: r.relation.name().to_string(),
        pairs_checked: r.pairs_checked,
        passed: r.passes(),
        violations: r
            .violations
            .iter()
            .map(|v| ViolationRow {
                first: v.first,
                second: v.second,
                holds_for_sources: v.holds_for_sources,
                holds_for_images: v.holds_for_images,
            })
            .collect(),
    }
}

/// The apartment the sources form, if they form exactly one.
fn detect_apartment(f: &MapFixture) -> Option<GeometricApartment> {
    let sources: Vec<_> = f.sources().cloned().collect();
    let report = analyze_compatible_family(&sources, f.k()).ok()?;
    if !report.is_maximal {
        return None;
    }
    let base = report.minimal_parts.iter().map(|p| p.basis()[0].clone()).collect();
    GeometricApartment::new(base, f.k()).ok()
}

fn pipeline_row(f: &MapFixture, name: String, apartment: &GeometricApartment) -> Result<PipelineRow, CliError> {
    let report = match pipeline_check(f, apartment) {
        Ok(r) => r,
        Err(Error::Prerequisite(reason)) => {
            return Ok(PipelineRow {
                apartment: name,
                skipped: Some(reason),
                stages: Vec::new(),
                shared_with_image: None,
                count_decides_orthogonality: None,
                passed: true,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let shared_with_image = match &report.image_base {
        Some(base) => Some(apartment.shared_members(&GeometricApartment::new(base.clone(), f.k())?)?.len()),
        None => None,
    };
    let stages = report
        .stages
        .iter()
        .map(|s| StageRow {
            label: s.stage.label().to_string(),
            name: s.stage.name().to_string(),
            verdict: match s.verdict {
                Verdict::Pass => StageVerdict::Pass,
                Verdict::Fail => StageVerdict::Fail,
                Verdict::Skipped => StageVerdict::Skipped,
            },
            checked: s.checked,
            failures: s.failures,
            witness: s.witness.as_ref().map(|w| w.to_string()),
        })
        .collect();
    Ok(PipelineRow {
        apartment: name,
        skipped: None,
        stages,
        shared_with_image,
        count_decides_orthogonality: Some(report.count_decides_orthogonality),
        passed: report.passes(),
    })
}

pub fn check_map_text(text: &str, path: &Path) -> Result<Outcome, CliError> {
    let file = FixtureFile::parse(text).map_err(parse_error(path))?;
    let fixture = file.to_fixture()?;
    let compatibility = preservation_row(&check_compatibility_preserving(&fixture)?);
    let orthogonality = preservation_row(&check_orthogonality_preserving(&fixture)?);

    let mut apartments = file.geometric_apartments()?;
    if apartments.is_empty() {
        apartments.extend(detect_apartment(&fixture).map(|a| ("detected".to_string(), a)));
    }
    let pipelines =
        apartments.iter().map(|(name, a)| pipeline_row(&fixture, name.clone(), a)).collect::<Result<Vec<_>, _>>()?;

    let passed = compatibility.passed && orthogonality.passed && pipelines.iter().all(|p| p.passed);
    let report = CheckMapReport {
        schema: MAP_SCHEMA.to_string(),
        rank: fixture.k(),
        ambient: fixture.ambient(),
        closed_under: fixture.closed_under().to_string(),
        pairs: fixture.len(),
        compatibility,
        orthogonality,
        pipelines,
        passed,
    };
    Ok(Outcome { report: Report::CheckMap(report), passed })
}

pub fn check_map(path: &Path) -> Result<Outcome, CliError> {
    check_map_text(&read(path)?, path)
}

pub fn verify_family_text(text: &str, path: &Path, k: usize) -> Result<Outcome, CliError> {
    let file = SubspaceFile::parse(text).map_err(parse_error(path))?;
    if file.blocks.is_empty() {
        return Err(CliError::Input("the family has no subspaces".to_string()));
    }
    let family = file.subspaces();
    for (block, s) in file.blocks.iter().zip(&family) {
        if s.dim() != k {
            return Err(CliError::Input(format!("subspace `{}` has dimension {}, expected {k}", block.name, s.dim())));
        }
    }
    let mut incompatible_pairs = Vec::new();
    for (a, x) in family.iter().enumerate() {
        for (b, y) in family.iter().enumerate().skip(a + 1) {
            if !is_compatible(x, y)? {
                incompatible_pairs.push(IncompatiblePair {
                    first: file.blocks[a].name.clone(),
                    second: file.blocks[b].name.clone(),
                });
            }
        }
    }
    let compatible = incompatible_pairs.is_empty();
    let (flags, minimal_parts) = if compatible {
        let r = analyze_compatible_family(&family, k)?;
        let parts = r
            .minimal_parts
            .iter()
            .map(|p| p.basis().iter().map(|v| v.entries().iter().map(|e| e.to_string()).collect()).collect())
            .collect();
        let flags = FamilyFlags {
            all_lines: r.all_lines,
            mutually_orthogonal: r.mutually_orthogonal,
            spans_ambient: r.spans_ambient,
            members_decompose: r.members_decompose,
            cardinality_complete: r.cardinality_complete,
            is_maximal: r.is_maximal,
        };
        (Some(flags), parts)
    } else {
        (None, Vec::new())
    };
    let report = VerifyFamilyReport {
        schema: FAMILY_SCHEMA.to_string(),
        ambient: file.ambient,
        k,
        members: family.len(),
        compatible,
        incompatible_pairs,
        flags,
        minimal_parts,
    };
    Ok(Outcome { report: Report::VerifyFamily(report), passed: true })
}

pub fn verify_family(path: &Path, k: usize) -> Result<Outcome, CliError> {
    verify_family_text(&read(path)?, path, k)
}
