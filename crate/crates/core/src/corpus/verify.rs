use std::fmt;

use num_bigint::BigInt;

use super::{Corpus, CorpusEntry, ScalingClaim, SeedKind, TraceFixture};
use crate::engine::{
    determinant, is_optimal_upper, refine_raw, StopRule, Termination, Trace, Update,
    DEFAULT_ROW_CAP,
};
use crate::error::{Error, Result};
use crate::oracle::unit_fraction_form;
use crate::rational::{
    remainder_raw, to_mixed, upper_error, Radicand, RawFraction, Rational,
};
use crate::seeds::{
    denominator_companion, heron_bounds, integer_bounds, reciprocal_scale, Bracket,
    ClassifiedApprox, SeedOrigin, SeedPair, Side,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    /// Printed numerator and denominator equal the recomputed ones.
    ExactMatch,
    /// Same value, different (unreduced) components.
    MatchAfterReduction,
    /// Disagrees, and the corpus records the disagreement as a printing error.
    KnownErratum,
    Mismatch,
}

impl Status {
    pub fn is_ok(self) -> bool {
        matches!(self, Status::ExactMatch | Status::MatchAfterReduction)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::ExactMatch => "exact",
            Status::MatchAfterReduction => "reduced",
            Status::KnownErratum => "ERRATUM",
            Status::Mismatch => "MISMATCH",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Section {
    Section2,
    Traces,
    Chuquet,
    Appendix3,
}

impl Section {
    pub const ALL: [Section; 4] = [
        Section::Section2,
        Section::Traces,
        Section::Chuquet,
        Section::Appendix3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Section::Section2 => "section2",
            Section::Traces => "traces",
            Section::Chuquet => "chuquet",
            Section::Appendix3 => "appendix3",
        }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Section {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Section::ALL
            .into_iter()
            .find(|sec| sec.name() == s)
            .ok_or_else(|| format!("unknown section '{s}'"))
    }
}

/// One printed value compared against its recomputation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub section: Section,
    /// Which table or row, e.g. `id 9` or `s3-128 row 4`.
    pub location: String,
    pub check: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub findings: Vec<Finding>,
}

impl Report {
    fn push(
        &mut self,
        section: Section,
        location: &str,
        check: &str,
        expected: impl ToString,
        computed: impl ToString,
        status: Status,
    ) {
        self.findings.push(Finding {
            section,
            location: location.to_string(),
            check: check.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            status,
        });
    }

    /// A yes/no check: exact when it holds, a mismatch otherwise.
    fn claim(
        &mut self,
        section: Section,
        location: &str,
        check: &str,
        expected: impl ToString,
        computed: impl ToString,
        holds: bool,
    ) {
        let status = if holds { Status::ExactMatch } else { Status::Mismatch };
        self.push(section, location, check, expected, computed, status);
    }

    pub fn extend(&mut self, other: Report) {
        self.findings.extend(other.findings);
    }

    pub fn count(&self, status: Status) -> usize {
        self.findings.iter().filter(|f| f.status == status).count()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.status == Status::Mismatch)
    }

    pub fn is_clean(&self) -> bool {
        self.count(Status::Mismatch) == 0
    }

    pub fn section(&self, section: Section) -> Report {
        Report {
            findings: self
                .findings
                .iter()
                .filter(|f| f.section == section)
                .cloned()
                .collect(),
        }
    }

    /// One summary line per table (rows fold into their table), then every finding that is not an exact
    /// match, then totals.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut groups: Vec<(Section, &str, Vec<&Finding>)> = Vec::new();
        for f in &self.findings {
            let table = f.location.split(" row ").next().unwrap_or(&f.location);
            match groups.last_mut() {
                Some((s, t, list)) if *s == f.section && *t == table => list.push(f),
                _ => groups.push((f.section, table, vec![f])),
            }
        }
        for (section, location, list) in &groups {
            let worst = if list.iter().any(|f| f.status == Status::Mismatch) {
                "FAIL"
            } else if list.iter().any(|f| f.status == Status::KnownErratum) {
                "erratum"
            } else {
                "ok"
            };
            out.push_str(&format!(
                "{:<10} {:<18} {:>4} checks  {worst}\n",
                section.name(),
                location,
                list.len()
            ));
        }
        let notable: Vec<&Finding> = self
            .findings
            .iter()
            .filter(|f| f.status != Status::ExactMatch)
            .collect();
        if !notable.is_empty() {
            out.push('\n');
        }
        for f in notable {
            out.push_str(&format!(
                "{:<8} {} {}: {}: printed {}, recomputed {}\n",
                f.status, f.section, f.location, f.check, f.expected, f.computed
            ));
        }
        out.push_str(&format!(
            "\n{} tables, {} checks, {} exact, {} after reduction, {} known errata, {} mismatches\n",
            groups.len(),
            self.findings.len(),
            self.count(Status::ExactMatch),
            self.count(Status::MatchAfterReduction),
            self.count(Status::KnownErratum),
            self.count(Status::Mismatch)
        ));
        out
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::from("section,location,check,printed,recomputed,status\n");
        for f in &self.findings {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                f.section,
                csv_field(&f.location),
                csv_field(&f.check),
                csv_field(&f.expected),
                csv_field(&f.computed),
                f.status
            ));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn compare(printed: &RawFraction, computed: &RawFraction) -> Status {
    if printed.same_components(computed) {
        Status::ExactMatch
    } else if printed.value() == computed.value() {
        Status::MatchAfterReduction
    } else {
        Status::Mismatch
    }
}

fn side_word(optimal: bool) -> &'static str {
    if optimal {
        "optimal"
    } else {
        "not optimal"
    }
}

fn row_word(row: Option<usize>) -> String {
    row.map_or_else(|| "none".to_string(), |r| format!("row {r}"))
}

pub fn verify_all(corpus: &Corpus) -> Report {
    let mut report = verify_section2(corpus);
    report.extend(verify_traces(corpus));
    report.extend(verify_chuquet(corpus));
    report.extend(verify_appendix3(corpus));
    report
}

/// Editions table: first-column derivation, remainders, optimality and the
/// unit-fraction rendering.
pub fn verify_section2(corpus: &Corpus) -> Report {
    let mut report = Report::default();
    for entry in &corpus.entries {
        check_entry(entry, &mut report);
    }
    report
}

fn check_entry(entry: &CorpusEntry, report: &mut Report) {
    const S: Section = Section::Section2;
    let loc = format!("id {}", entry.id);
    let n = &entry.radicand;
    let col1 = entry.col1_value.value();
    let col2 = entry.col2_value.value();

    match entry.seeds {
        SeedKind::Heron => match heron_bounds(n) {
            Ok(Bracket::Pair(pair)) => {
                let printed = entry.col1_value.raw();
                let formula = heron_lower_raw(n).unwrap_or_else(|| pair.lower.to_raw());
                report.push(
                    S,
                    &loc,
                    "col1 = a + r/(2a+1)",
                    &entry.col1_value,
                    formula.mixed_text(),
                    compare(&printed, &formula),
                );
            }
            Ok(Bracket::Exact(root)) => {
                report.claim(S, &loc, "col1 = a + r/(2a+1)", &entry.col1_value, root, false)
            }
            Err(e) => report.claim(S, &loc, "col1 = a + r/(2a+1)", &entry.col1_value, e, false),
        },
        _ => {
            // Upper approximations from integer seeds, unchanged between editions.
            let side = ClassifiedApprox::classify(col1.clone(), n).side;
            report.claim(S, &loc, "col1 side", Side::Upper, side, side == Side::Upper);
            report.push(
                S,
                &loc,
                "col1 = col2",
                &entry.col1_value,
                &entry.col2_value,
                compare(&entry.col2_value.raw(), &entry.col1_value.raw()),
            );
        }
    }

    let rem1 = remainder_raw(&entry.col1_value.raw(), n);
    report.push(
        S,
        &loc,
        "col1 remainder",
        &entry.col1_remainder,
        &rem1,
        compare(&entry.col1_remainder.raw(), &rem1),
    );
    let rem2 = remainder_raw(&entry.col2_value.raw(), n);
    report.push(
        S,
        &loc,
        "col2 remainder",
        &entry.col2_remainder,
        &rem2,
        compare(&entry.col2_remainder.raw(), &rem2),
    );

    let side = ClassifiedApprox::classify(col2.clone(), n).side;
    report.claim(S, &loc, "col2 side", Side::Upper, side, side == Side::Upper);
    let optimal = is_optimal_upper(&col2, n);
    report.claim(
        S,
        &loc,
        "col2 optimality",
        side_word(entry.col2_optimal),
        side_word(optimal),
        optimal == entry.col2_optimal,
    );

    if let Some(printed) = &entry.unit_form {
        let computed = unit_fraction_form(&col2)
            .map_or_else(|| "none".to_string(), |u| u.to_string());
        report.claim(S, &loc, "unit-fraction form", printed, &computed, printed == &computed);
    }
}

/// `a + r/(2a+1)` kept over the denominator `2a+1`, for integer radicands.
fn heron_lower_raw(n: &Radicand) -> Option<RawFraction> {
    if !n.is_integer() {
        return None;
    }
    let a = n.floor_root();
    let r = n.floor_remainder().numer();
    let den: BigInt = a * 2 + 1;
    RawFraction::new(a * &den + r, den).ok()
}

/// Builds the seed pair a table starts from.
pub(crate) fn fixture_seeds(corpus: &Corpus, seeds: &SeedKind, n: &Radicand) -> Result<SeedPair> {
    let bracket = match seeds {
        SeedKind::Heron => heron_bounds(n)?,
        SeedKind::Integer => integer_bounds(n),
        SeedKind::Scaled { c, m } => {
            let scaled = scaled_seeds(corpus, c, m)?;
            if &scaled.target != n {
                return Err(Error::InvalidSeeds(format!(
                    "scaling by {c} over {m} gives radicand {}, not {n}",
                    scaled.target
                )));
            }
            return Ok(scaled.pair);
        }
    };
    bracket.pair().ok_or_else(|| Error::PerfectSquare {
        radicand: n.to_string(),
        root: n.exact_root().map(|r| r.to_string()).unwrap_or_default(),
    })
}

/// Seeds for `sqrt(c^2/m)` built from an upper approximation of `sqrt(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledSeeds {
    pub target: Radicand,
    /// The approximation of `sqrt(m)` that was scaled.
    pub source: ClassifiedApprox,
    /// True when `source` is Chuquet's value, false when it is the first
    /// optimal upper bound from integer seeds.
    pub from_chuquet: bool,
    /// `c / source` and its denominator companion.
    pub pair: SeedPair,
}

/// Scales Chuquet's approximation of `sqrt(m)` (or, when his table has no
/// row for `m`, the first optimal upper bound from `(a, a+1)`) by `c`. The
/// scaled value is a lower bound for `sqrt(c^2/m)`; its denominator
/// companion is the upper bound.
pub fn scaled_seeds(corpus: &Corpus, c: &Rational, m: &Radicand) -> Result<ScaledSeeds> {
    let (source, from_chuquet) = match corpus.chuquet_for(m) {
        Some(row) => (
            ClassifiedApprox {
                value: row.approx.value(),
                side: row.side,
            },
            true,
        ),
        None => (first_optimal_upper(m)?, false),
    };
    let (target, scaled) = reciprocal_scale(c, m, &source)?;
    if scaled.side != Side::Lower {
        return Err(Error::InvalidSeeds(format!(
            "scaled value {} is not a lower bound for the root of {target}",
            scaled.value
        )));
    }
    let (whole, frac) = to_mixed(&scaled.value);
    let upper = denominator_companion(&whole, &frac.to_raw(), &target)?;
    let pair = SeedPair::new(scaled.value, upper.value, SeedOrigin::Scaled, &target)?;
    Ok(ScaledSeeds {
        target,
        source,
        from_chuquet,
        pair,
    })
}

fn first_optimal_upper(m: &Radicand) -> Result<ClassifiedApprox> {
    let seeds = integer_bounds(m).pair().ok_or_else(|| Error::PerfectSquare {
        radicand: m.to_string(),
        root: m.exact_root().map(|r| r.to_string()).unwrap_or_default(),
    })?;
    let trace = refine_raw(
        m,
        seeds.lower.to_raw(),
        seeds.upper.to_raw(),
        crate::engine::RefinePolicy::Reduce,
        StopRule::FirstOptimalUpper,
        DEFAULT_ROW_CAP,
    )?;
    if trace.termination != Termination::StopRuleMet {
        return Err(Error::InvalidSeeds(format!(
            "no optimal upper bound for the root of {m} within {DEFAULT_ROW_CAP} rows"
        )));
    }
    Ok(ClassifiedApprox {
        value: trace.last().upper.value(),
        side: Side::Upper,
    })
}

/// Runs a table the way it was printed: on past the edition value (when the
/// table belongs to an editions entry) to the first optimal upper bound.
pub(crate) fn run_fixture(corpus: &Corpus, fixture: &TraceFixture) -> Result<Trace> {
    let seeds = fixture_seeds(corpus, &fixture.seeds, &fixture.radicand)?;
    let stop = match fixture.entry.and_then(|id| corpus.entry(id)) {
        Some(entry) => StopRule::FirstOptimalUpperAfter(entry.col2_value.value()),
        None => StopRule::FirstOptimalUpper,
    };
    refine_raw(
        &fixture.radicand,
        seeds.lower.to_raw(),
        seeds.upper.to_raw(),
        fixture.policy,
        stop,
        DEFAULT_ROW_CAP,
    )
}

/// Mediant tables: every printed row against the engine, plus the marked rows.
pub fn verify_traces(corpus: &Corpus) -> Report {
    const S: Section = Section::Traces;
    let mut report = Report::default();
    for fixture in &corpus.fixtures {
        let loc = fixture.name.as_str();
        let trace = match run_fixture(corpus, fixture) {
            Ok(t) => t,
            Err(e) => {
                report.claim(S, loc, "run", "a trace", e, false);
                continue;
            }
        };
        report.claim(
            S,
            loc,
            "terminates",
            "stop rule met",
            format!("{:?}", trace.termination),
            trace.termination == Termination::StopRuleMet,
        );
        report.claim(
            S,
            loc,
            "row count",
            fixture.rows.len(),
            trace.rows.len(),
            fixture.rows.len() == trace.rows.len(),
        );

        for printed in &fixture.rows {
            let row_loc = format!("{} row {}", fixture.name, printed.index);
            let Some(row) = trace.row(printed.index) else {
                report.claim(S, &row_loc, "row present", "present", "missing", false);
                continue;
            };
            report.push(
                S,
                &row_loc,
                "lower",
                &printed.lower,
                row.lower.mixed_text(),
                compare(&printed.lower.raw(), &row.lower),
            );
            report.push(
                S,
                &row_loc,
                "upper",
                &printed.upper,
                row.upper.mixed_text(),
                compare(&printed.upper.raw(), &row.upper),
            );
            let err = row.upper_error.to_raw();
            report.push(
                S,
                &row_loc,
                "upper error",
                &printed.upper_error,
                &row.upper_error,
                compare(&printed.upper_error.raw(), &err),
            );
        }

        let edition = fixture
            .entry
            .and_then(|id| corpus.entry(id))
            .map(|e| e.col2_value.value());
        if let Some(value) = &edition {
            let found = trace.first_upper_row(value);
            for (label, marked) in [("red row", fixture.red_row), ("blue row", fixture.blue_row)] {
                if let Some(marked) = marked {
                    report.claim(
                        S,
                        loc,
                        label,
                        format!("row {marked}"),
                        row_word(found),
                        found == Some(marked),
                    );
                }
            }
        }
        if let Some(marked) = fixture.first_optimal_row {
            let last = trace.last();
            let optimal = is_optimal_upper(&last.upper.value(), &fixture.radicand);
            report.claim(
                S,
                loc,
                "first optimal upper after the edition value",
                format!("row {marked}"),
                format!("row {} ({})", last.index, side_word(optimal)),
                last.index == marked && optimal,
            );
        }
    }
    report
}

/// Chuquet's table: side, reachability by mediation from `(a, a+1)`, and the
/// printed error.
pub fn verify_chuquet(corpus: &Corpus) -> Report {
    const S: Section = Section::Chuquet;
    let mut report = Report::default();
    for entry in &corpus.chuquet {
        let loc = format!("n={} {}", entry.n, entry.side);
        let n = &entry.radicand;
        let x = entry.approx.value();

        let side = ClassifiedApprox::classify(x.clone(), n).side;
        report.claim(S, &loc, "side", entry.side, side, side == entry.side);

        let reached = integer_bounds(n).pair().map(|seeds| {
            refine_raw(
                n,
                seeds.lower.to_raw(),
                seeds.upper.to_raw(),
                crate::engine::RefinePolicy::Reduce,
                StopRule::TargetValue(x.clone()),
                DEFAULT_ROW_CAP,
            )
        });
        let found = match reached {
            Some(Ok(trace)) => match entry.side {
                Side::Upper => trace.first_upper_row(&x),
                _ => trace.first_lower_row(&x),
            },
            _ => None,
        };
        report.claim(
            S,
            &loc,
            "reached by mediation from integer seeds",
            format!("{} bound", entry.side),
            row_word(found),
            found.is_some(),
        );

        let err = upper_error(&x, n);
        let status = match (compare(&entry.stated_error.raw(), &err.to_raw()), entry.erratum) {
            (s, false) => s,
            (Status::Mismatch, true) => Status::KnownErratum,
            // Flagged as an erratum but actually correct: the flag is wrong.
            (_, true) => Status::Mismatch,
        };
        report.push(S, &loc, "error x^2 - n", &entry.stated_error, &err, status);
    }
    report
}

/// The scaled-seed run for `sqrt(2000)`: seed derivation, the stated
/// above-the-root stretch and its denominator bound, and the terminal value.
pub fn verify_appendix3(corpus: &Corpus) -> Report {
    let mut report = Report::default();
    for claim in &corpus.scaling {
        check_scaling(corpus, claim, &mut report);
    }
    report
}

fn check_scaling(corpus: &Corpus, claim: &ScalingClaim, report: &mut Report) {
    const S: Section = Section::Appendix3;
    let loc = claim.fixture.as_str();
    let Some(fixture) = corpus.fixture(&claim.fixture) else {
        report.claim(S, loc, "fixture", "present", "missing", false);
        return;
    };
    let n = &fixture.radicand;

    let scaled = match scaled_seeds(corpus, &claim.c, &claim.m) {
        Ok(s) => s,
        Err(e) => {
            report.claim(S, loc, "seed derivation", "seeds", e, false);
            return;
        }
    };
    report.claim(
        S,
        loc,
        "source is Chuquet's upper root",
        format!("upper root of {}", claim.m),
        format!("{} ({})", scaled.source.value, scaled.source.side),
        scaled.from_chuquet && scaled.source.side == Side::Upper,
    );
    report.claim(S, loc, "target radicand", n, &scaled.target, &scaled.target == n);
    let pair = scaled.pair;
    let first = &fixture.rows[0];
    report.push(
        S,
        loc,
        "scaled lower seed",
        &first.lower,
        pair.lower.to_raw().mixed_text(),
        compare(&first.lower.raw(), &pair.lower.to_raw()),
    );
    report.push(
        S,
        loc,
        "companion upper seed",
        &first.upper,
        pair.upper.to_raw().mixed_text(),
        compare(&first.upper.raw(), &pair.upper.to_raw()),
    );

    let trace = match run_fixture(corpus, fixture) {
        Ok(t) => t,
        Err(e) => {
            report.claim(S, loc, "run", "a trace", e, false);
            return;
        }
    };

    let k = claim.last_above_row;
    let first_below = trace
        .rows
        .iter()
        .skip(1)
        .find(|r| r.updated == Update::LowerUpdated)
        .map(|r| r.index);
    report.claim(
        S,
        loc,
        "rows 2.. land above until the stated row",
        format!("first below at row {}", k + 1),
        row_word(first_below).replace("row", "first below at row"),
        first_below == Some(k + 1),
    );

    // lower + det/(q x) is above the root while x < 2 p det / rho, where
    // p/q is the lower seed and rho/q^2 its remainder.
    let seed = &trace.rows[0];
    let det = determinant(seed);
    let q = Rational::from_integer(seed.lower.denom().clone());
    let rho = remainder_raw(&seed.lower, n).value() * q.square();
    let threshold =
        Rational::from_integer(seed.lower.numer() * 2 * det).checked_div(&rho);
    match threshold {
        Ok(t) => {
            report.claim(
                S,
                loc,
                "denominator threshold 2 p det / rho",
                &claim.threshold,
                &t,
                t == claim.threshold,
            );
            let stretch = trace.rows.iter().skip(1).take(k.saturating_sub(1));
            let worst = stretch.map(|r| r.upper.denom().clone()).max();
            let holds = worst
                .as_ref()
                .is_some_and(|w| Rational::from_integer(w.clone()) < t);
            report.claim(
                S,
                loc,
                "upper denominators in the stretch stay below the threshold",
                format!("< {t}"),
                worst.map_or_else(|| "none".to_string(), |w| format!("max {w}")),
                holds,
            );
        }
        Err(e) => report.claim(S, loc, "denominator threshold", &claim.threshold, e, false),
    }

    let edition = fixture
        .entry
        .and_then(|id| corpus.entry(id))
        .map(|e| e.col2_value.clone());
    if let (Some(value), Some(red)) = (edition, fixture.red_row) {
        let row = trace.row(red);
        let computed = row.map_or_else(|| "none".to_string(), |r| r.upper.mixed_text());
        let status = row.map_or(Status::Mismatch, |r| compare(&value.raw(), &r.upper));
        report.push(S, loc, &format!("edition value at row {red}"), &value, computed, status);
    }

    let last = trace.last();
    let optimal = is_optimal_upper(&last.upper.value(), n);
    report.claim(
        S,
        loc,
        "terminal upper is optimal",
        "optimal",
        format!("{} at row {}", side_word(optimal), last.index),
        optimal && Some(last.index) == fixture.first_optimal_row,
    );

    // Both policies end on the same value.
    let reduced = corpus.fixtures.iter().find(|f| {
        f.radicand == *n && f.policy == crate::engine::RefinePolicy::Reduce
    });
    if let Some(other) = reduced.and_then(|f| run_fixture(corpus, f).ok()) {
        let a = last.upper.value();
        let b = other.last().upper.value();
        report.claim(
            S,
            loc,
            "raw and reduced runs end on the same value",
            &b,
            &a,
            a == b,
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{load_corpus, parse_corpus, EMBEDDED_CORPUS};

    #[test]
    fn embedded_corpus_has_no_mismatches() {
        let corpus = load_corpus().unwrap();
        let report = verify_all(&corpus);
        let bad: Vec<_> = report.mismatches().collect();
        assert!(bad.is_empty(), "{bad:#?}");
        assert_eq!(report.count(Status::KnownErratum), 2);
    }

    #[test]
    fn reduction_matches_are_reported_as_such() {
        let corpus = load_corpus().unwrap();
        let report = verify_section2(&corpus);
        let reduced: Vec<_> = report
            .findings
            .iter()
            .filter(|f| f.status == Status::MatchAfterReduction)
            .map(|f| (f.location.as_str(), f.check.as_str()))
            .collect();
        assert_eq!(
            reduced,
            vec![("id 9", "col1 remainder"), ("id 13", "col2 remainder")]
        );
    }

    #[test]
    fn errata_are_n5_and_n12() {
        let corpus = load_corpus().unwrap();
        let report = verify_chuquet(&corpus);
        let errata: Vec<_> = report
            .findings
            .iter()
            .filter(|f| f.status == Status::KnownErratum)
            .map(|f| (f.location.as_str(), f.computed.as_str()))
            .collect();
        assert_eq!(errata, vec![("n=5 upper", "5/465124"), ("n=12 upper", "1/152100")]);
    }

    #[test]
    fn corrupted_value_is_a_mismatch() {
        let text = EMBEDDED_CORPUS.replace("row|4|11+21/67|11+28/89", "row|4|11+21/67|11+28/88");
        assert_ne!(text, EMBEDDED_CORPUS);
        let corpus = parse_corpus(&text).unwrap();
        let report = verify_traces(&corpus);
        let bad: Vec<_> = report.mismatches().map(|f| f.location.clone()).collect();
        assert_eq!(bad, vec!["s3-128 row 4".to_string()]);
    }

    #[test]
    fn stale_erratum_flag_is_a_mismatch() {
        let text = EMBEDDED_CORPUS.replace(
            "chuquet|2|1+169/408|1/166464|upper|-",
            "chuquet|2|1+169/408|1/166464|upper|erratum",
        );
        let corpus = parse_corpus(&text).unwrap();
        assert_eq!(verify_chuquet(&corpus).count(Status::Mismatch), 1);
    }

    #[test]
    fn appendix_claims_hold() {
        let corpus = load_corpus().unwrap();
        let report = verify_appendix3(&corpus);
        assert!(report.is_clean(), "{}", report.render_text());
        assert!(report.findings.len() >= 8);
    }

    #[test]
    fn csv_has_header_and_one_line_per_finding() {
        let corpus = load_corpus().unwrap();
        let report = verify_section2(&corpus);
        let csv = report.render_csv();
        assert_eq!(csv.lines().count(), report.findings.len() + 1);
        assert!(csv.starts_with("section,location,check,printed,recomputed,status\n"));
    }
}
