//! Machine-readable transcription of the printed tables, and the verifiers
//! that recompute every printed value.
//!
//! The corpus is a line-oriented text file (see `data/ortega.corpus`). A copy
//! is compiled into the crate; [`load_corpus_from`] reads an alternative file
//! with the same format.

mod verify;

use std::path::Path;

use num_bigint::BigInt;

use crate::engine::RefinePolicy;
use crate::error::{Error, Result};
use crate::rational::{parse_radicand, FractionText, Radicand, Rational};
use crate::seeds::Side;

pub use verify::{
    scaled_seeds, verify_all, verify_appendix3, verify_chuquet, verify_section2, verify_traces,
    Finding, Report, ScaledSeeds, Section, Status,
};

pub const EMBEDDED_CORPUS: &str = include_str!("../../data/ortega.corpus");

/// How a table's first row was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeedKind {
    Heron,
    Integer,
    /// Reciprocal scaling of Chuquet's approximation of `sqrt(m)` by `c`.
    Scaled { c: Rational, m: Radicand },
}

impl std::fmt::Display for SeedKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeedKind::Heron => f.write_str("heron"),
            SeedKind::Integer => f.write_str("integer"),
            SeedKind::Scaled { c, m } => write!(f, "scaled {c} {m}"),
        }
    }
}

/// One row of the editions table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: u32,
    pub radicand: Radicand,
    pub radicand_text: String,
    pub col1_value: FractionText,
    pub col1_remainder: FractionText,
    pub col2_value: FractionText,
    pub col2_remainder: FractionText,
    pub seeds: SeedKind,
    pub col2_optimal: bool,
    /// Printed unit-fraction rendering, e.g. `2+1/6+1/7`.
    pub unit_form: Option<String>,
    /// Row markers of the reduce-policy iteration table for this radicand.
    pub red_row: Option<usize>,
    pub blue_row: Option<usize>,
    pub first_optimal_row: Option<usize>,
    pub line: usize,
}

/// One row of Chuquet's table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChuquetEntry {
    pub n: BigInt,
    pub radicand: Radicand,
    pub approx: FractionText,
    /// `x^2 - n` as printed.
    pub stated_error: FractionText,
    pub side: Side,
    pub erratum: bool,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureRow {
    pub index: usize,
    pub lower: FractionText,
    pub upper: FractionText,
    pub upper_error: FractionText,
    pub line: usize,
}

/// A printed iteration table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceFixture {
    pub name: String,
    pub radicand: Radicand,
    pub radicand_text: String,
    pub policy: RefinePolicy,
    pub seeds: SeedKind,
    pub entry: Option<u32>,
    pub red_row: Option<usize>,
    pub blue_row: Option<usize>,
    pub first_optimal_row: Option<usize>,
    pub rows: Vec<FixtureRow>,
    pub line: usize,
}

/// The scaled-seed derivation and its stated bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingClaim {
    pub fixture: String,
    pub c: Rational,
    pub m: Radicand,
    /// Mediants `lower + det/(q x)` are above the root for `x` below this.
    pub threshold: Rational,
    /// Last row whose mediant is classified above the root.
    pub last_above_row: usize,
    pub line: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    pub chuquet: Vec<ChuquetEntry>,
    pub scaling: Vec<ScalingClaim>,
    pub fixtures: Vec<TraceFixture>,
}

impl Corpus {
    pub fn entry(&self, id: u32) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn fixture(&self, name: &str) -> Option<&TraceFixture> {
        self.fixtures.iter().find(|f| f.name == name)
    }

    /// Chuquet's approximation of `sqrt(m)`, preferring an upper one.
    pub fn chuquet_for(&self, m: &Radicand) -> Option<&ChuquetEntry> {
        let mut hits = self.chuquet.iter().filter(|c| &c.radicand == m);
        let first = hits.clone().next();
        hits.find(|c| c.side == Side::Upper).or(first)
    }
}

/// The compiled-in corpus.
pub fn load_corpus() -> Result<Corpus> {
    parse_corpus(EMBEDDED_CORPUS)
}

pub fn load_corpus_from(path: &Path) -> Result<Corpus> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    parse_corpus(&text)
}

struct Fields<'a> {
    line: usize,
    items: Vec<&'a str>,
}

impl<'a> Fields<'a> {
    fn expect_len(&self, n: usize) -> Result<()> {
        if self.items.len() != n {
            return Err(Error::corpus(
                self.line,
                format!(
                    "'{}' record needs {n} fields, found {}",
                    self.items[0],
                    self.items.len()
                ),
            ));
        }
        Ok(())
    }

    fn text(&self, i: usize) -> &'a str {
        self.items[i]
    }

    fn fraction(&self, i: usize) -> Result<FractionText> {
        self.items[i]
            .parse()
            .map_err(|e| Error::corpus(self.line, format!("field {}: {e}", i + 1)))
    }

    fn radicand(&self, i: usize) -> Result<Radicand> {
        parse_radicand(self.items[i])
            .map_err(|e| Error::corpus(self.line, format!("field {}: {e}", i + 1)))
    }

    fn number<T: std::str::FromStr>(&self, i: usize) -> Result<T> {
        self.items[i].parse().map_err(|_| {
            Error::corpus(
                self.line,
                format!("field {}: expected a number, found '{}'", i + 1, self.items[i]),
            )
        })
    }

    fn optional_row(&self, i: usize) -> Result<Option<usize>> {
        if self.items[i] == "-" {
            Ok(None)
        } else {
            self.number(i).map(Some)
        }
    }

    fn seeds(&self, i: usize) -> Result<SeedKind> {
        let words: Vec<&str> = self.items[i].split_whitespace().collect();
        match words.as_slice() {
            ["heron"] => Ok(SeedKind::Heron),
            ["integer"] => Ok(SeedKind::Integer),
            ["scaled", c, m] => {
                let c = c
                    .parse()
                    .map_err(|e| Error::corpus(self.line, format!("scale factor: {e}")))?;
                let m = parse_radicand(m)
                    .map_err(|e| Error::corpus(self.line, format!("scaled radicand: {e}")))?;
                Ok(SeedKind::Scaled { c, m })
            }
            _ => Err(Error::corpus(
                self.line,
                format!("unknown seeds '{}'", self.items[i]),
            )),
        }
    }
}

/// Parses corpus text; errors name the offending line.
pub fn parse_corpus(text: &str) -> Result<Corpus> {
    let mut corpus = Corpus::default();
    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw_line.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let f = Fields {
            line,
            items: content.split('|').map(str::trim).collect(),
        };
        match f.text(0) {
            "entry" => corpus.entries.push(parse_entry(&f)?),
            "chuquet" => corpus.chuquet.push(parse_chuquet(&f)?),
            "scaling" => corpus.scaling.push(parse_scaling(&f)?),
            "fixture" => corpus.fixtures.push(parse_fixture(&f)?),
            "row" => {
                let row = parse_row(&f)?;
                let fixture = corpus
                    .fixtures
                    .last_mut()
                    .ok_or_else(|| Error::corpus(line, "row before any fixture"))?;
                if row.index != fixture.rows.len() + 1 {
                    return Err(Error::corpus(
                        line,
                        format!(
                            "row {} out of sequence in fixture {}",
                            row.index, fixture.name
                        ),
                    ));
                }
                fixture.rows.push(row);
            }
            other => return Err(Error::corpus(line, format!("unknown record '{other}'"))),
        }
    }

    if let Some(f) = corpus.fixtures.iter().find(|f| f.rows.is_empty()) {
        return Err(Error::corpus(f.line, format!("fixture {} has no rows", f.name)));
    }
    for f in &corpus.fixtures {
        if let Some(id) = f.entry {
            if corpus.entry(id).is_none() {
                return Err(Error::corpus(f.line, format!("fixture refers to missing entry {id}")));
            }
        }
    }
    for s in &corpus.scaling {
        if corpus.fixture(&s.fixture).is_none() {
            return Err(Error::corpus(s.line, format!("unknown fixture {}", s.fixture)));
        }
    }

    // Row markers of each entry's reduce-policy table.
    for entry in &mut corpus.entries {
        if let Some(f) = corpus
            .fixtures
            .iter()
            .find(|f| f.entry == Some(entry.id) && f.policy == RefinePolicy::Reduce)
        {
            entry.red_row = f.red_row;
            entry.blue_row = f.blue_row;
            entry.first_optimal_row = f.first_optimal_row;
        }
    }
    Ok(corpus)
}

fn parse_entry(f: &Fields) -> Result<CorpusEntry> {
    f.expect_len(10)?;
    let col2_optimal = match f.text(8) {
        "optimal" => true,
        "not-optimal" => false,
        other => {
            return Err(Error::corpus(
                f.line,
                format!("expected 'optimal' or 'not-optimal', found '{other}'"),
            ))
        }
    };
    let seeds = f.seeds(7)?;
    if matches!(seeds, SeedKind::Scaled { .. }) {
        return Err(Error::corpus(f.line, "editions entries use heron or integer seeds"));
    }
    Ok(CorpusEntry {
        id: f.number(1)?,
        radicand: f.radicand(2)?,
        radicand_text: f.text(2).to_string(),
        col1_value: f.fraction(3)?,
        col1_remainder: f.fraction(4)?,
        col2_value: f.fraction(5)?,
        col2_remainder: f.fraction(6)?,
        seeds,
        col2_optimal,
        unit_form: (f.text(9) != "-").then(|| f.text(9).to_string()),
        red_row: None,
        blue_row: None,
        first_optimal_row: None,
        line: f.line,
    })
}

fn parse_chuquet(f: &Fields) -> Result<ChuquetEntry> {
    f.expect_len(6)?;
    let n: BigInt = f.number(1)?;
    let side = match f.text(4) {
        "upper" => Side::Upper,
        "lower" => Side::Lower,
        other => {
            return Err(Error::corpus(
                f.line,
                format!("side must be 'upper' or 'lower', found '{other}'"),
            ))
        }
    };
    let erratum = match f.text(5) {
        "erratum" => true,
        "-" => false,
        other => {
            return Err(Error::corpus(
                f.line,
                format!("expected 'erratum' or '-', found '{other}'"),
            ))
        }
    };
    Ok(ChuquetEntry {
        radicand: Radicand::from_integer(n.clone())
            .map_err(|e| Error::corpus(f.line, e.to_string()))?,
        n,
        approx: f.fraction(2)?,
        stated_error: f.fraction(3)?,
        side,
        erratum,
        line: f.line,
    })
}

fn parse_scaling(f: &Fields) -> Result<ScalingClaim> {
    f.expect_len(6)?;
    Ok(ScalingClaim {
        fixture: f.text(1).to_string(),
        c: f.fraction(2)?.value(),
        m: f.radicand(3)?,
        threshold: f.fraction(4)?.value(),
        last_above_row: f.number(5)?,
        line: f.line,
    })
}

fn parse_fixture(f: &Fields) -> Result<TraceFixture> {
    f.expect_len(9)?;
    let policy = match f.text(3) {
        "reduce" => RefinePolicy::Reduce,
        "raw" => RefinePolicy::KeepRaw,
        other => {
            return Err(Error::corpus(
                f.line,
                format!("policy must be 'reduce' or 'raw', found '{other}'"),
            ))
        }
    };
    Ok(TraceFixture {
        name: f.text(1).to_string(),
        radicand: f.radicand(2)?,
        radicand_text: f.text(2).to_string(),
        policy,
        seeds: f.seeds(4)?,
        entry: if f.text(5) == "-" {
            None
        } else {
            Some(f.number(5)?)
        },
        red_row: f.optional_row(6)?,
        blue_row: f.optional_row(7)?,
        first_optimal_row: f.optional_row(8)?,
        rows: Vec::new(),
        line: f.line,
    })
}

fn parse_row(f: &Fields) -> Result<FixtureRow> {
    f.expect_len(5)?;
    Ok(FixtureRow {
        index: f.number(1)?,
        lower: f.fraction(2)?,
        upper: f.fraction(3)?,
        upper_error: f.fraction(4)?,
        line: f.line,
    })
}
