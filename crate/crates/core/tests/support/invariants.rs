//! Randomized invariants shared by the property tests and the acceptance run.

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use ortega::engine::{determinant, refine_raw, RefinePolicy, StopRule};
use ortega::rational::{
    make_rational, mediant, mediant_raw, remainder, upper_error, Radicand, RawFraction, Rational,
};
use ortega::seeds::{
    heron_bounds, integer_bounds, reciprocal_scale, Bracket, ClassifiedApprox, Side,
};

pub const CASES: u32 = 1000;

type CaseResult = Result<(), TestCaseError>;

fn rational() -> impl Strategy<Value = Rational> {
    (-1_000_000i64..1_000_000, 1i64..1_000_000).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..1_000_000, 1i64..1_000_000).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

/// Non-square radicands `N/D >= 1`, so both seed rules apply.
fn radicand() -> impl Strategy<Value = Radicand> {
    (1i64..5000, 1i64..40)
        .prop_filter("at least one", |(n, d)| n >= d)
        .prop_map(|(n, d)| Radicand::new(Rational::new(n, d).unwrap()).unwrap())
        .prop_filter("not a perfect square", |r| r.exact_root().is_none())
}

fn policy() -> impl Strategy<Value = RefinePolicy> {
    prop_oneof![Just(RefinePolicy::Reduce), Just(RefinePolicy::KeepRaw)]
}

fn seeds(n: &Radicand, heron: bool) -> (RawFraction, RawFraction) {
    let bracket = if heron {
        heron_bounds(n).unwrap()
    } else {
        integer_bounds(n)
    };
    match bracket {
        Bracket::Pair(p) => (p.lower.to_raw(), p.upper.to_raw()),
        Bracket::Exact(_) => unreachable!("squares are filtered out"),
    }
}

/// `x^2 < n` by cross-multiplication, independent of the library's comparison.
fn square_below(x: &Rational, n: &Radicand) -> bool {
    x.numer() * x.numer() * n.denom() < n.numer() * x.denom() * x.denom()
}

pub fn mediant_betweenness(x: Rational, y: Rational) -> CaseResult {
    prop_assume!(x != y);
    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
    let m = mediant(&lo, &hi);
    prop_assert!(lo < m && m < hi);
    Ok(())
}

pub fn raw_mediant_betweenness((a, b, c, d): (i64, i64, i64, i64)) -> CaseResult {
    let x = RawFraction::new(a, b).unwrap();
    let y = RawFraction::new(c, d).unwrap();
    prop_assume!(x.value() != y.value());
    let m = mediant_raw(&x, &y);
    prop_assert_eq!(m.numer(), &BigInt::from(a + c));
    prop_assert_eq!(m.denom(), &BigInt::from(b + d));
    let (lo, hi) = if x.value() < y.value() {
        (x.value(), y.value())
    } else {
        (y.value(), x.value())
    };
    prop_assert!(lo < m.value() && m.value() < hi);
    Ok(())
}

pub fn bracketing_and_shrinkage(
    (n, heron, policy, rows): (Radicand, bool, RefinePolicy, usize),
) -> CaseResult {
    let (lower, upper) = seeds(&n, heron);
    let trace = refine_raw(&n, lower, upper, policy, StopRule::MaxRows(rows), 10_000).unwrap();
    let mut prev: Option<(Rational, Rational)> = None;
    for row in &trace.rows {
        let (l, u) = (row.lower.value(), row.upper.value());
        prop_assert!(square_below(&l, &n));
        prop_assert!(!square_below(&u, &n) && u.square() != *n.value());
        if let Some((pl, pu)) = prev {
            prop_assert!(l >= pl);
            prop_assert!(u <= pu);
            prop_assert!(&u - &l < &pu - &pl);
        }
        prev = Some((l, u));
    }
    Ok(())
}

pub fn determinant_divides_seed((n, heron, rows): (Radicand, bool, usize)) -> CaseResult {
    let (lower, upper) = seeds(&n, heron);
    let trace = refine_raw(
        &n,
        lower,
        upper,
        RefinePolicy::Reduce,
        StopRule::MaxRows(rows),
        10_000,
    )
    .unwrap();
    let seed_det = determinant(&trace.rows[0]);
    for row in &trace.rows {
        prop_assert!(seed_det.is_multiple_of(&determinant(row)));
    }
    Ok(())
}

pub fn integer_seeds_unimodular((k, rows): (i64, usize)) -> CaseResult {
    let n = Radicand::from_integer(k).unwrap();
    prop_assume!(n.exact_root().is_none());
    let (lower, upper) = seeds(&n, false);
    let run = |policy| {
        refine_raw(
            &n,
            lower.clone(),
            upper.clone(),
            policy,
            StopRule::MaxRows(rows),
            10_000,
        )
        .unwrap()
    };
    let (reduce, raw) = (run(RefinePolicy::Reduce), run(RefinePolicy::KeepRaw));
    prop_assert_eq!(reduce.rows.len(), raw.rows.len());
    for (a, b) in reduce.rows.iter().zip(&raw.rows) {
        prop_assert_eq!(determinant(a), BigInt::from(1));
        prop_assert!(a.lower.same_components(&b.lower) && a.upper.same_components(&b.upper));
    }
    Ok(())
}

pub fn error_antisymmetry((x, n): (Rational, Radicand)) -> CaseResult {
    prop_assert_eq!(upper_error(&x, &n), -remainder(&x, &n));
    prop_assert_eq!(remainder(&x, &n), n.value() - &x.square());
    Ok(())
}

pub fn reciprocal_side_flip((c, m, u): (Rational, Radicand, Rational)) -> CaseResult {
    let approx = ClassifiedApprox::classify(u.clone(), &m);
    prop_assume!(approx.side != Side::Exact);
    let (target, scaled) = reciprocal_scale(&c, &m, &approx).unwrap();
    prop_assert_eq!(target.value(), &c.square().checked_div(m.value()).unwrap());
    let v = c.checked_div(&u).unwrap();
    prop_assert_eq!(&scaled.value, &v);
    // u^2 > m  <=>  (c/u)^2 < c^2/m
    prop_assert_eq!(square_below(&v, &target), !square_below(&u, &m));
    prop_assert_eq!(scaled.side, approx.side.flipped());
    Ok(())
}

pub fn canonical_idempotence((x, k): (Rational, i64)) -> CaseResult {
    let again = make_rational(x.numer().clone(), x.denom().clone()).unwrap();
    prop_assert_eq!(&again, &x);
    let scaled = make_rational(x.numer() * k, x.denom() * k).unwrap();
    prop_assert_eq!(&scaled, &x);
    prop_assert_eq!(x.to_raw().value(), x.clone());
    prop_assert!(x.to_raw().is_reduced());
    prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    Ok(())
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    check: impl Fn(S::Value) -> CaseResult,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, check).map_err(|e| e.to_string())
}

/// Name and outcome of every invariant, each over `cases` random inputs.
pub fn run_all(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    vec![
        (
            "mediant betweenness",
            run(cases, (rational(), rational()), |(x, y)| mediant_betweenness(x, y)),
        ),
        (
            "raw mediant betweenness",
            run(
                cases,
                (-10_000i64..10_000, 1i64..10_000, -10_000i64..10_000, 1i64..10_000),
                raw_mediant_betweenness,
            ),
        ),
        (
            "bracketing and monotone shrinkage",
            run(
                cases,
                (radicand(), any::<bool>(), policy(), 2usize..60),
                bracketing_and_shrinkage,
            ),
        ),
        (
            "determinant divides the seed determinant (reduce)",
            run(cases, (radicand(), any::<bool>(), 2usize..60), determinant_divides_seed),
        ),
        (
            "integer seeds stay unimodular under both policies",
            run(cases, (2i64..100_000, 2usize..60), integer_seeds_unimodular),
        ),
        (
            "remainder / upper error antisymmetry",
            run(cases, (rational(), radicand()), error_antisymmetry),
        ),
        (
            "reciprocal scaling flips the side",
            run(
                cases,
                (positive_rational(), radicand(), positive_rational()),
                reciprocal_side_flip,
            ),
        ),
        (
            "canonical form idempotence",
            run(cases, (rational(), 1i64..1000), canonical_idempotence),
        ),
    ]
}
