//! Initial brackets for the mediant iteration.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{square_compare, Radicand, RawFraction, Rational, SideOfRoot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Lower,
    Upper,
    Exact,
}

impl From<SideOfRoot> for Side {
    fn from(s: SideOfRoot) -> Self {
        match s {
            SideOfRoot::Below => Side::Lower,
            SideOfRoot::Exact => Side::Exact,
            SideOfRoot::Above => Side::Upper,
        }
    }
}

impl Side {
    pub fn flipped(self) -> Side {
        match self {
            Side::Lower => Side::Upper,
            Side::Upper => Side::Lower,
            Side::Exact => Side::Exact,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
            Side::Exact => "exact",
        })
    }
}

/// A value tagged with its position relative to the root of some radicand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassifiedApprox {
    pub value: Rational,
    pub side: Side,
}

impl ClassifiedApprox {
    pub fn classify(value: Rational, n: &Radicand) -> Self {
        let side = square_compare(&value, n).into();
        ClassifiedApprox { value, side }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeedOrigin {
    Heron,
    Integer,
    Scaled,
    Custom,
}

/// `lower^2 < n < upper^2`, checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedPair {
    pub lower: Rational,
    pub upper: Rational,
    pub origin: SeedOrigin,
}

impl SeedPair {
    pub fn new(lower: Rational, upper: Rational, origin: SeedOrigin, n: &Radicand) -> Result<Self> {
        if square_compare(&lower, n) != SideOfRoot::Below {
            return Err(Error::InvalidSeeds(format!(
                "{lower} is not below the square root of {n}"
            )));
        }
        if square_compare(&upper, n) != SideOfRoot::Above {
            return Err(Error::InvalidSeeds(format!(
                "{upper} is not above the square root of {n}"
            )));
        }
        Ok(SeedPair {
            lower,
            upper,
            origin,
        })
    }
}

/// Either a strict bracket or the exact root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracket {
    Pair(SeedPair),
    Exact(Rational),
}

impl Bracket {
    pub fn pair(self) -> Option<SeedPair> {
        match self {
            Bracket::Pair(p) => Some(p),
            Bracket::Exact(_) => None,
        }
    }
}

/// Largest integer `a` with `a^2 <= n`.
pub fn floor_sqrt(n: &Radicand) -> BigInt {
    let a = n.floor_root().clone();
    debug_assert!(square_compare(&Rational::from_integer(a.clone()), n) != SideOfRoot::Above);
    debug_assert!(square_compare(&Rational::from_integer(&a + 1), n) == SideOfRoot::Above);
    a
}

/// `a + r/(2a+1) < sqrt(n) < a + r/(2a)`.
pub fn heron_bounds(n: &Radicand) -> Result<Bracket> {
    let a = floor_sqrt(n);
    let r = n.floor_remainder();
    if r.is_zero() {
        return Ok(Bracket::Exact(Rational::from_integer(a)));
    }
    if a.is_zero() {
        return Err(Error::HeronUndefined(n.to_string()));
    }
    let whole = Rational::from_integer(a.clone());
    let twice = Rational::from_integer(&a * 2);
    let lower = &whole + &(r / &(&twice + &Rational::one()));
    let upper = &whole + &(r / &twice);
    SeedPair::new(lower, upper, SeedOrigin::Heron, n).map(Bracket::Pair)
}

/// `(a, a+1)`.
pub fn integer_bounds(n: &Radicand) -> Bracket {
    let a = floor_sqrt(n);
    if n.floor_remainder().is_zero() {
        return Bracket::Exact(Rational::from_integer(a));
    }
    Bracket::Pair(SeedPair {
        lower: Rational::from_integer(a.clone()),
        upper: Rational::from_integer(a + 1),
        origin: SeedOrigin::Integer,
    })
}

/// Turns an approximation of `sqrt(m)` into one of `sqrt(c^2/m) = c/sqrt(m)`.
///
/// The value is `c / approx`; lower and upper swap. Returns the target
/// radicand together with the re-classified value.
pub fn reciprocal_scale(
    c: &Rational,
    m: &Radicand,
    approx: &ClassifiedApprox,
) -> Result<(Radicand, ClassifiedApprox)> {
    if !c.is_positive() {
        return Err(Error::InvalidSeeds(format!(
            "scale factor must be positive, got {c}"
        )));
    }
    if approx.value.is_zero() {
        return Err(Error::ZeroApproximation);
    }
    if approx.value.is_negative() || !m.value().is_positive() {
        return Err(Error::InvalidSeeds(format!(
            "cannot scale {} as a root of {m}",
            approx.value
        )));
    }
    let actual: Side = square_compare(&approx.value, m).into();
    if actual != approx.side {
        return Err(Error::Misclassified {
            value: approx.value.to_string(),
            expected: approx.side.to_string(),
            radicand: m.to_string(),
        });
    }

    let target = Radicand::new(c.square().checked_div(m.value())?)?;
    let scaled = ClassifiedApprox::classify(c.checked_div(&approx.value)?, &target);
    if scaled.side != approx.side.flipped() {
        return Err(Error::Misclassified {
            value: scaled.value.to_string(),
            expected: approx.side.flipped().to_string(),
            radicand: target.to_string(),
        });
    }
    Ok((target, scaled))
}

/// Upper companion of a printed lower value `whole + p/q`: `whole + p/(q-1)`.
///
/// Works on the printed fraction, so `44+44/61` gives `44+44/60 = 44+11/15`.
/// The rule is a heuristic; a candidate that is not above the root is an error.
pub fn denominator_companion(
    whole: &BigInt,
    frac: &RawFraction,
    n: &Radicand,
) -> Result<ClassifiedApprox> {
    let q = frac.denom();
    if q <= &BigInt::one() {
        return Err(Error::InvalidSeeds(format!(
            "denominator companion needs a denominator of at least 2, got {}",
            frac
        )));
    }
    let candidate = Rational::from_integer(whole.clone()) + Rational::new(frac.numer().clone(), q - 1)?;
    let classified = ClassifiedApprox::classify(candidate, n);
    if classified.side != Side::Upper {
        return Err(Error::NotUpper {
            candidate: classified.value.to_string(),
            radicand: n.to_string(),
        });
    }
    Ok(classified)
}
