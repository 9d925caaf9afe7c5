//! Line-oriented text formats for subspace families and map fixtures.
//!
//! Both formats are UTF-8, one directive per line, tokens separated by
//! whitespace. `#` starts a comment; blank lines are ignored. Entries use
//! `p`, `p/q`, `a+bi` or `a-bi` where `a` and `b` are `p` or `p/q`.
//! The canonical rendering uses single spaces, no comments and a trailing
//! newline, and parsing it back gives the same bytes.

use std::fmt::{self, Write as _};

use apartments_core::{CVector, ExactUnitary, GaussianRational, GeometricApartment, MapFixture, Matrix, Subspace};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { line, message: message.into() })
}

/// Significant lines with their 1-based numbers, comments stripped.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        (!tokens.is_empty()).then_some((idx + 1, tokens))
    })
}

fn parse_count(line: usize, tokens: &[&str], keyword: &str) -> Result<usize, FormatError> {
    match tokens {
        [_, value] => value
            .parse::<usize>()
            .ok()
            .filter(|&v| v > 0)
            .map_or_else(|| err(line, format!("`{keyword}` needs a positive integer, got `{value}`")), Ok),
        _ => err(line, format!("expected `{keyword} <positive integer>`")),
    }
}

fn parse_entries(line: usize, tokens: &[&str], n: usize) -> Result<Vec<GaussianRational>, FormatError> {
    if tokens.len() != n {
        return err(line, format!("expected {n} entries, found {}", tokens.len()));
    }
    tokens
        .iter()
        .map(|t| t.parse::<GaussianRational>().or_else(|e| err(line, e.to_string())))
        .collect()
}

fn write_row(out: &mut String, keyword: &str, entries: &[GaussianRational]) {
    out.push_str(keyword);
    for e in entries {
        let _ = write!(out, " {e}");
    }
    out.push('\n');
}

/// A named list of vectors; the subspace is their span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBlock {
    pub name: String,
    pub vectors: Vec<CVector>,
}

impl SubspaceBlock {
    pub fn subspace(&self, ambient: usize) -> Subspace {
        Subspace::span(ambient, &self.vectors).expect("vector lengths checked while parsing")
    }

    pub fn from_subspace(name: impl Into<String>, s: &Subspace) -> Self {
        SubspaceBlock { name: name.into(), vectors: s.basis().to_vec() }
    }

    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "subspace {}", self.name);
        for v in &self.vectors {
            write_row(out, "vector", v.entries());
        }
    }
}

/// ```text
/// ambient <n>
/// subspace <name>
/// vector <entry> ... <entry>      (n entries; zero or more lines)
/// ...
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceFile {
    pub ambient: usize,
    pub blocks: Vec<SubspaceBlock>,
}

impl SubspaceFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut ambient = None;
        let mut blocks: Vec<SubspaceBlock> = Vec::new();
        for (line, tokens) in lines(text) {
            match (tokens[0], ambient) {
                ("ambient", None) => ambient = Some(parse_count(line, &tokens, "ambient")?),
                ("ambient", Some(_)) => return err(line, "duplicate `ambient` header"),
                (_, None) => return err(line, "file must start with `ambient <n>`"),
                ("subspace", Some(_)) => blocks.push(parse_block_header(line, &tokens, &blocks)?),
                ("vector", Some(n)) => {
                    let Some(block) = blocks.last_mut() else {
                        return err(line, "`vector` outside a `subspace` block");
                    };
                    block.vectors.push(CVector::new(parse_entries(line, &tokens[1..], n)?).expect("n > 0"));
                }
                (other, _) => return err(line, format!("unknown directive `{other}`")),
            }
        }
        let Some(ambient) = ambient else {
            return err(1, "missing `ambient <n>` header");
        };
        Ok(SubspaceFile { ambient, blocks })
    }

    pub fn subspaces(&self) -> Vec<Subspace> {
        self.blocks.iter().map(|b| b.subspace(self.ambient)).collect()
    }

    pub fn from_subspaces<'a>(ambient: usize, named: impl IntoIterator<Item = (String, &'a Subspace)>) -> Self {
        SubspaceFile {
            ambient,
            blocks: named.into_iter().map(|(name, s)| SubspaceBlock::from_subspace(name, s)).collect(),
        }
    }
}

fn parse_block_header(line: usize, tokens: &[&str], existing: &[SubspaceBlock]) -> Result<SubspaceBlock, FormatError> {
    let [_, name] = tokens else {
        return err(line, "expected `subspace <name>`");
    };
    if existing.iter().any(|b| b.name == *name) {
        return err(line, format!("duplicate subspace name `{name}`"));
    }
    Ok(SubspaceBlock { name: name.to_string(), vectors: Vec::new() })
}

impl fmt::Display for SubspaceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = format!("ambient {}\n", self.ambient);
        for b in &self.blocks {
            b.render(&mut out);
        }
        f.write_str(&out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixturePair {
    pub source: SubspaceBlock,
    pub image: SubspaceBlock,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitaryBlock {
    pub rows: Vec<Vec<GaussianRational>>,
    pub conjugate: bool,
}

/// An orthogonal base whose rank-k apartment the pipeline is run on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApartmentBlock {
    pub name: String,
    pub base: Vec<CVector>,
}

/// ```text
/// rank <k>
/// ambient <n>
/// closed-under <free text>          (optional)
/// pair                              (repeated; excludes `unitary`)
/// subspace source
/// vector ...
/// subspace image
/// vector ...
/// unitary                           (optional; excludes `pair`)
/// row <entry> ... <entry>           (n rows of n entries)
/// conjugate                         (optional: apply x -> U conj(x))
/// apartment <name>                  (repeated)
/// vector ...                        (n orthogonal base vectors)
/// ```
///
/// With a `unitary` block the pairs are generated: sources are the members
/// of every declared apartment, images are their images under the map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureFile {
    pub rank: usize,
    pub ambient: usize,
    pub closed_under: Option<String>,
    pub pairs: Vec<FixturePair>,
    pub unitary: Option<UnitaryBlock>,
    pub apartments: Vec<ApartmentBlock>,
}

enum Section {
    None,
    Pair,
    Unitary,
    Apartment,
}

impl FixtureFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut rank = None;
        let mut ambient = None;
        let mut closed_under = None;
        let mut pairs: Vec<(usize, Vec<SubspaceBlock>)> = Vec::new();
        let mut unitary: Option<(usize, UnitaryBlock)> = None;
        let mut apartments: Vec<(usize, ApartmentBlock)> = Vec::new();
        let mut section = Section::None;

        for (line, tokens) in lines(text) {
            let keyword = tokens[0];
            match keyword {
                "rank" if rank.is_none() => {
                    rank = Some(parse_count(line, &tokens, "rank")?);
                    continue;
                }
                "ambient" if ambient.is_none() => {
                    ambient = Some(parse_count(line, &tokens, "ambient")?);
                    continue;
                }
                "rank" | "ambient" => return err(line, format!("duplicate `{keyword}` header")),
                _ => {}
            }
            let (Some(_), Some(n)) = (rank, ambient) else {
                return err(line, "file must start with `rank <k>` and `ambient <n>`");
            };
            match keyword {
                "closed-under" => {
                    if closed_under.is_some() {
                        return err(line, "duplicate `closed-under`");
                    }
                    if tokens.len() < 2 {
                        return err(line, "expected `closed-under <text>`");
                    }
                    closed_under = Some(tokens[1..].join(" "));
                }
                "pair" => {
                    if tokens.len() != 1 {
                        return err(line, "`pair` takes no arguments");
                    }
                    pairs.push((line, Vec::new()));
                    section = Section::Pair;
                }
                "unitary" => {
                    if unitary.is_some() {
                        return err(line, "duplicate `unitary` block");
                    }
                    unitary = Some((line, UnitaryBlock { rows: Vec::new(), conjugate: false }));
                    section = Section::Unitary;
                }
                "apartment" => {
                    let [_, name] = tokens[..] else {
                        return err(line, "expected `apartment <name>`");
                    };
                    if apartments.iter().any(|(_, a)| a.name == name) {
                        return err(line, format!("duplicate apartment name `{name}`"));
                    }
                    apartments.push((line, ApartmentBlock { name: name.to_string(), base: Vec::new() }));
                    section = Section::Apartment;
                }
                "subspace" => {
                    let Section::Pair = section else {
                        return err(line, "`subspace` outside a `pair` block");
                    };
                    let blocks = &mut pairs.last_mut().expect("inside pair").1;
                    let expected = ["source", "image"].get(blocks.len()).copied();
                    match (tokens.get(1), expected) {
                        (Some(&name), Some(want)) if name == want && tokens.len() == 2 => {
                            blocks.push(SubspaceBlock { name: name.to_string(), vectors: Vec::new() })
                        }
                        (_, Some(want)) => return err(line, format!("expected `subspace {want}`")),
                        (_, None) => return err(line, "a pair holds exactly one source and one image"),
                    }
                }
                "vector" => {
                    let v = CVector::new(parse_entries(line, &tokens[1..], n)?).expect("n > 0");
                    match section {
                        Section::Pair => match pairs.last_mut().expect("inside pair").1.last_mut() {
                            Some(block) => block.vectors.push(v),
                            None => return err(line, "`vector` before `subspace source`"),
                        },
                        Section::Apartment => apartments.last_mut().expect("inside apartment").1.base.push(v),
                        _ => return err(line, "`vector` outside a `pair` or `apartment` block"),
                    }
                }
                "row" => {
                    let Section::Unitary = section else {
                        return err(line, "`row` outside the `unitary` block");
                    };
                    let block = &mut unitary.as_mut().expect("inside unitary").1;
                    if block.rows.len() == n {
                        return err(line, format!("`unitary` has more than {n} rows"));
                    }
                    block.rows.push(parse_entries(line, &tokens[1..], n)?);
                }
                "conjugate" => {
                    let (Section::Unitary, Some((_, block))) = (&section, unitary.as_mut()) else {
                        return err(line, "`conjugate` outside the `unitary` block");
                    };
                    if tokens.len() != 1 || block.conjugate {
                        return err(line, "`conjugate` is a single flag line");
                    }
                    block.conjugate = true;
                }
                other => return err(line, format!("unknown directive `{other}`")),
            }
        }

        let (Some(rank), Some(ambient)) = (rank, ambient) else {
            return err(1, "missing `rank <k>` or `ambient <n>` header");
        };
        for (line, blocks) in &pairs {
            if blocks.len() != 2 {
                return err(*line, "a pair needs `subspace source` and `subspace image`");
            }
        }
        if let Some((line, block)) = &unitary {
            if block.rows.len() != ambient {
                return err(*line, format!("`unitary` needs {ambient} rows, found {}", block.rows.len()));
            }
            if !pairs.is_empty() {
                return err(*line, "`unitary` and explicit `pair` blocks are mutually exclusive");
            }
            if apartments.is_empty() {
                return err(*line, "`unitary` needs at least one `apartment` to generate sources from");
            }
        }
        for (line, a) in &apartments {
            if a.base.len() != ambient {
                return err(*line, format!("apartment `{}` needs {ambient} base vectors, found {}", a.name, a.base.len()));
            }
        }
        if pairs.is_empty() && unitary.is_none() {
            return err(1, "fixture has neither `pair` blocks nor a `unitary` block");
        }
        Ok(FixtureFile {
            rank,
            ambient,
            closed_under,
            pairs: pairs
                .into_iter()
                .map(|(_, mut b)| {
                    let image = b.pop().expect("two blocks");
                    let source = b.pop().expect("two blocks");
                    FixturePair { source, image }
                })
                .collect(),
            unitary: unitary.map(|(_, u)| u),
            apartments: apartments.into_iter().map(|(_, a)| a).collect(),
        })
    }

    /// Validated apartments, in declaration order.
    pub fn geometric_apartments(&self) -> anyhow::Result<Vec<(String, GeometricApartment)>> {
        self.apartments
            .iter()
            .map(|a| {
                let apt = GeometricApartment::new(a.base.clone(), self.rank)
                    .map_err(|e| anyhow::anyhow!("apartment `{}`: {e}", a.name))?;
                Ok((a.name.clone(), apt))
            })
            .collect()
    }

    pub fn unitary_map(&self) -> anyhow::Result<Option<ExactUnitary>> {
        let Some(u) = &self.unitary else {
            return Ok(None);
        };
        let m = Matrix::from_rows(u.rows.clone())?;
        Ok(Some(ExactUnitary::new(m, u.conjugate)?))
    }

    pub fn to_fixture(&self) -> anyhow::Result<MapFixture> {
        let tag = self.closed_under.clone().unwrap_or_else(|| "file".to_string());
        if let Some(u) = self.unitary_map()? {
            let apartments: Vec<GeometricApartment> = self.geometric_apartments()?.into_iter().map(|(_, a)| a).collect();
            return Ok(MapFixture::from_unitary_on_apartments(&u, &apartments, &tag)?);
        }
        let pairs = self
            .pairs
            .iter()
            .map(|p| (p.source.subspace(self.ambient), p.image.subspace(self.ambient)))
            .collect();
        Ok(MapFixture::new(self.rank, pairs, tag)?)
    }

    /// Explicit-pair file for a fixture, with optional apartments.
    pub fn from_fixture(f: &MapFixture, apartments: &[(String, &GeometricApartment)]) -> Self {
        FixtureFile {
            rank: f.k(),
            ambient: f.ambient(),
            closed_under: Some(f.closed_under().to_string()),
            pairs: f
                .pairs()
                .iter()
                .map(|(s, i)| FixturePair {
                    source: SubspaceBlock::from_subspace("source", s),
                    image: SubspaceBlock::from_subspace("image", i),
                })
                .collect(),
            unitary: None,
            apartments: apartments
                .iter()
                .map(|(name, a)| ApartmentBlock { name: name.clone(), base: a.base().to_vec() })
                .collect(),
        }
    }
}

impl fmt::Display for FixtureFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = format!("rank {}\nambient {}\n", self.rank, self.ambient);
        if let Some(c) = &self.closed_under {
            let _ = writeln!(out, "closed-under {c}");
        }
        for p in &self.pairs {
            out.push_str("pair\n");
            p.source.render(&mut out);
            p.image.render(&mut out);
        }
        if let Some(u) = &self.unitary {
            out.push_str("unitary\n");
            for row in &u.rows {
                write_row(&mut out, "row", row);
            }
            if u.conjugate {
                out.push_str("conjugate\n");
            }
        }
        for a in &self.apartments {
            let _ = writeln!(out, "apartment {}", a.name);
            for v in &a.base {
                write_row(&mut out, "vector", v.entries());
            }
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FAMILY: &str = "ambient 3\nsubspace a\nvector 1 0+1i 0\nvector 0 0 1\nsubspace b\nvector 1/2 -3/4-2i 0\nsubspace zero\n";

    #[test]
    fn subspace_file_round_trip() {
        let parsed = SubspaceFile::parse(FAMILY).unwrap();
        assert_eq!(parsed.ambient, 3);
        assert_eq!(parsed.blocks.len(), 3);
        assert_eq!(parsed.subspaces()[0].dim(), 2);
        assert!(parsed.subspaces()[2].is_zero());
        assert_eq!(parsed.to_string(), FAMILY);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# family\n\nambient 3   # header\nsubspace a\n  vector 1 0+1i 0\nvector 0 0 1\nsubspace b\nvector 1/2 -3/4-2i 0\nsubspace zero\n";
        assert_eq!(SubspaceFile::parse(text).unwrap(), SubspaceFile::parse(FAMILY).unwrap());
    }

    #[test]
    fn subspace_file_errors_carry_line_numbers() {
        let cases = [
            ("subspace a\n", 1, "must start"),
            ("ambient 2\nvector 1 0\n", 2, "outside"),
            ("ambient 2\nsubspace a\nvector 1\n", 3, "expected 2 entries"),
            ("ambient 2\nsubspace a\nvector 1 1/0\n", 3, "zero denominator"),
            ("ambient 2\nsubspace a\nsubspace a\n", 3, "duplicate"),
            ("ambient 0\n", 1, "positive"),
            ("ambient 2\nambient 2\n", 2, "duplicate"),
            ("ambient 2\nmatrix\n", 2, "unknown"),
            ("", 1, "missing"),
        ];
        for (text, line, needle) in cases {
            let e = SubspaceFile::parse(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
            assert!(e.message.contains(needle), "{text:?}: {e}");
        }
    }

    const FIXTURE: &str = "rank 1\nambient 2\nclosed-under two lines\npair\nsubspace source\nvector 1 0\nsubspace image\nvector 0 1\npair\nsubspace source\nvector 0 1\nsubspace image\nvector 1 0\napartment std\nvector 1 0\nvector 0 1\n";

    #[test]
    fn fixture_round_trip_and_conversion() {
        let parsed = FixtureFile::parse(FIXTURE).unwrap();
        assert_eq!(parsed.to_string(), FIXTURE);
        let f = parsed.to_fixture().unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.closed_under(), "two lines");
        assert_eq!(parsed.geometric_apartments().unwrap().len(), 1);
    }

    const UNITARY: &str = "rank 1\nambient 2\nunitary\nrow 3/5 -4/5\nrow 4/5 3/5\nconjugate\napartment std\nvector 1 0\nvector 0 1\n";

    #[test]
    fn unitary_fixture_generates_pairs() {
        let parsed = FixtureFile::parse(UNITARY).unwrap();
        assert_eq!(parsed.to_string(), UNITARY);
        let u = parsed.unitary_map().unwrap().unwrap();
        assert!(u.is_conjugating());
        assert_eq!(parsed.to_fixture().unwrap().len(), 2);
    }

    #[test]
    fn fixture_errors() {
        let cases = [
            ("pair\n", 1, "must start"),
            ("rank 1\nambient 2\npair\nsubspace image\n", 4, "expected `subspace source`"),
            ("rank 1\nambient 2\npair\nsubspace source\nvector 1 0\n", 3, "needs `subspace source` and `subspace image`"),
            ("rank 1\nambient 2\nunitary\nrow 1 0\napartment a\nvector 1 0\nvector 0 1\n", 3, "needs 2 rows"),
            ("rank 1\nambient 2\nunitary\nrow 1 0\nrow 0 1\n", 3, "at least one `apartment`"),
            ("rank 1\nambient 2\nrow 1 0\n", 3, "outside"),
            ("rank 1\nambient 2\nconjugate\n", 3, "outside"),
            ("rank 1\nambient 2\napartment a\nvector 1 0\n", 3, "needs 2 base vectors"),
            ("rank 1\nambient 2\n", 1, "neither"),
        ];
        for (text, line, needle) in cases {
            let e = FixtureFile::parse(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
            assert!(e.message.contains(needle), "{text:?}: {e}");
        }
    }

    #[test]
    fn non_unitary_block_is_rejected_on_conversion() {
        let text = "rank 1\nambient 2\nunitary\nrow 1 1\nrow 0 1\napartment std\nvector 1 0\nvector 0 1\n";
        assert!(FixtureFile::parse(text).unwrap().to_fixture().is_err());
    }
}
