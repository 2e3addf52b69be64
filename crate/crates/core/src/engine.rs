//! Mediant ("mediation") refinement of a bracket around a square root.
//!
//! Each step forms the mediant of the current lower and upper bounds and
//! replaces whichever bound it lands on the same side as. Under
//! [`RefinePolicy::Reduce`] the mediant is put in lowest terms before it
//! enters the state; under [`RefinePolicy::KeepRaw`] the component sums are
//! kept, so the sequence differs whenever the seed determinant exceeds one.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{
    mediant_raw, square_compare, upper_error, Radicand, RawFraction, Rational, SideOfRoot,
};
use crate::seeds::SeedPair;

pub const DEFAULT_ROW_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RefinePolicy {
    #[default]
    Reduce,
    KeepRaw,
}

impl fmt::Display for RefinePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RefinePolicy::Reduce => "reduce",
            RefinePolicy::KeepRaw => "raw",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StopRule {
    /// First row whose upper bound `p/q` has `(p/q)^2 - n = 1/q^2`.
    FirstOptimalUpper,
    /// First row whose upper bound is optimal, counting only rows at or after
    /// the one where the given value appears as a bound. This is how the
    /// printed tables run: on to Ortega's value, then on to an optimal upper.
    FirstOptimalUpperAfter(Rational),
    /// First row holding this value (by canonical value) on either side.
    TargetValue(Rational),
    MaxRows(usize),
    /// Only an exact mediant or the row cap ends the run.
    ExactHit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Update {
    SeedRow,
    LowerUpdated,
    UpperUpdated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRow {
    /// 1-based; row 1 is the seed pair.
    pub index: usize,
    pub lower: RawFraction,
    pub upper: RawFraction,
    /// `upper^2 - n`, always positive.
    pub upper_error: Rational,
    pub updated: Update,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Termination {
    StopRuleMet,
    ExactRootFound(Rational),
    /// The row cap was hit before the stop rule was satisfied.
    Incomplete,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub radicand: Radicand,
    pub policy: RefinePolicy,
    pub stop: StopRule,
    pub rows: Vec<TraceRow>,
    pub termination: Termination,
}

impl Trace {
    pub fn last(&self) -> &TraceRow {
        self.rows.last().expect("a trace always holds its seed row")
    }

    pub fn row(&self, index: usize) -> Option<&TraceRow> {
        index.checked_sub(1).and_then(|i| self.rows.get(i))
    }

    pub fn is_complete(&self) -> bool {
        self.termination != Termination::Incomplete
    }

    /// Index of the first row whose upper bound has this value.
    pub fn first_upper_row(&self, value: &Rational) -> Option<usize> {
        self.rows
            .iter()
            .find(|r| &r.upper.value() == value)
            .map(|r| r.index)
    }

    /// Index of the first row whose lower bound has this value.
    pub fn first_lower_row(&self, value: &Rational) -> Option<usize> {
        self.rows
            .iter()
            .find(|r| &r.lower.value() == value)
            .map(|r| r.index)
    }

    pub fn first_optimal_upper_row(&self) -> Option<usize> {
        self.rows
            .iter()
            .find(|r| is_optimal_upper(&r.upper.value(), &self.radicand))
            .map(|r| r.index)
    }

    /// One row per line: index, lower, upper, upper error, joined by `sep`.
    pub fn to_delimited(&self, sep: char) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&format!(
                "{}{sep}{}{sep}{}{sep}{}\n",
                row.index,
                row.lower.mixed_text(),
                row.upper.mixed_text(),
                row.upper_error.to_fraction_text()
            ));
        }
        out
    }
}

/// Outcome of one mediant step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Advanced {
        lower: RawFraction,
        upper: RawFraction,
        updated: Update,
    },
    ExactRootFound(Rational),
}

fn check_bracket(n: &Radicand, lower: &RawFraction, upper: &RawFraction) -> Result<()> {
    if square_compare(&lower.value(), n) != SideOfRoot::Below {
        return Err(Error::InvalidSeeds(format!(
            "{} is not below the square root of {n}",
            lower.mixed_text()
        )));
    }
    if square_compare(&upper.value(), n) != SideOfRoot::Above {
        return Err(Error::InvalidSeeds(format!(
            "{} is not above the square root of {n}",
            upper.mixed_text()
        )));
    }
    Ok(())
}

fn apply_policy(m: RawFraction, policy: RefinePolicy) -> RawFraction {
    match policy {
        RefinePolicy::Reduce => m.value().to_raw(),
        RefinePolicy::KeepRaw => m,
    }
}

/// Replaces one bound by the mediant of the pair.
pub fn refine_step(
    n: &Radicand,
    lower: &RawFraction,
    upper: &RawFraction,
    policy: RefinePolicy,
) -> Result<Step> {
    check_bracket(n, lower, upper)?;
    Ok(step_unchecked(n, lower, upper, policy))
}

fn step_unchecked(
    n: &Radicand,
    lower: &RawFraction,
    upper: &RawFraction,
    policy: RefinePolicy,
) -> Step {
    let m = apply_policy(mediant_raw(lower, upper), policy);
    match square_compare(&m.value(), n) {
        SideOfRoot::Below => Step::Advanced {
            lower: m,
            upper: upper.clone(),
            updated: Update::LowerUpdated,
        },
        SideOfRoot::Above => Step::Advanced {
            lower: lower.clone(),
            upper: m,
            updated: Update::UpperUpdated,
        },
        SideOfRoot::Exact => Step::ExactRootFound(m.value()),
    }
}

/// Runs the iteration from a seed pair until `stop` fires, an exact root
/// turns up, or [`DEFAULT_ROW_CAP`] rows have been produced.
pub fn refine(n: &Radicand, seeds: &SeedPair, policy: RefinePolicy, stop: StopRule) -> Result<Trace> {
    refine_raw(
        n,
        seeds.lower.to_raw(),
        seeds.upper.to_raw(),
        policy,
        stop,
        DEFAULT_ROW_CAP,
    )
}

/// Like [`refine`], from raw (possibly unreduced) seeds and with an explicit
/// row cap. Under `Reduce` the seeds are canonicalized first.
pub fn refine_raw(
    n: &Radicand,
    lower: RawFraction,
    upper: RawFraction,
    policy: RefinePolicy,
    stop: StopRule,
    row_cap: usize,
) -> Result<Trace> {
    if matches!(stop, StopRule::MaxRows(0)) {
        return Err(Error::InvalidStopRule("row limit must be positive".into()));
    }
    if row_cap == 0 {
        return Err(Error::InvalidStopRule("row cap must be positive".into()));
    }
    let mut lower = apply_policy(lower, policy);
    let mut upper = apply_policy(upper, policy);
    check_bracket(n, &lower, &upper)?;

    let mut trace = Trace {
        radicand: n.clone(),
        policy,
        stop: stop.clone(),
        rows: Vec::new(),
        termination: Termination::Incomplete,
    };
    let mut updated = Update::SeedRow;
    let mut target_seen = false;

    loop {
        let row = TraceRow {
            index: trace.rows.len() + 1,
            upper_error: upper_error(&upper.value(), n),
            lower: lower.clone(),
            upper: upper.clone(),
            updated,
        };
        let done = match &stop {
            StopRule::FirstOptimalUpper => is_optimal_upper(&row.upper.value(), n),
            StopRule::FirstOptimalUpperAfter(target) => {
                target_seen |= &row.lower.value() == target || &row.upper.value() == target;
                target_seen && is_optimal_upper(&row.upper.value(), n)
            }
            StopRule::TargetValue(target) => {
                &row.lower.value() == target || &row.upper.value() == target
            }
            StopRule::MaxRows(k) => row.index >= *k,
            StopRule::ExactHit => false,
        };
        trace.rows.push(row);
        if done {
            trace.termination = Termination::StopRuleMet;
            return Ok(trace);
        }
        if trace.rows.len() >= row_cap {
            return Ok(trace);
        }
        match step_unchecked(n, &lower, &upper, policy) {
            Step::Advanced {
                lower: l,
                upper: u,
                updated: what,
            } => {
                lower = l;
                upper = u;
                updated = what;
            }
            Step::ExactRootFound(root) => {
                trace.termination = Termination::ExactRootFound(root);
                return Ok(trace);
            }
        }
    }
}

/// `(p/q)^2 - n = 1/q^2` on the canonical form, i.e. `p^2 D - N q^2 = D`.
pub fn is_optimal_upper(x: &Rational, n: &Radicand) -> bool {
    if !x.is_positive() {
        return false;
    }
    let lhs = x.numer() * x.numer() * n.denom() - n.numer() * x.denom() * x.denom();
    &lhs == n.denom()
}

/// `n - (p/q)^2 = 1/q^2`, i.e. `N q^2 - p^2 D = D`.
pub fn is_optimal_lower(x: &Rational, n: &Radicand) -> bool {
    if x.is_negative() || (x.is_zero() && n.value().is_zero()) {
        return false;
    }
    let lhs = n.numer() * x.denom() * x.denom() - x.numer() * x.numer() * n.denom();
    &lhs == n.denom()
}

/// `|p2 q1 - p1 q2|` for the raw lower `p1/q1` and upper `p2/q2` of a row.
pub fn determinant(row: &TraceRow) -> num_bigint::BigInt {
    let d = row.upper.numer() * row.lower.denom() - row.lower.numer() * row.upper.denom();
    if d < num_bigint::BigInt::zero() {
        -d
    } else {
        d
    }
}
