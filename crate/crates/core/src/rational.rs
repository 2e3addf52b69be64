//! Exact rational arithmetic over arbitrary-precision integers.
//!
//! Two fraction representations live here. [`Rational`] is always in lowest
//! terms with a positive denominator. [`RawFraction`] keeps whatever
//! numerator and denominator it was built from, which is how non-reducing
//! mediant sequences are carried. [`FractionText`] additionally remembers the
//! printed shape (`k`, `p/q` or `a+p/q`) so that transcribed values can be
//! written back byte for byte.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact signed fraction in canonical lowest-terms form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(k: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(k.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn square(&self) -> Rational {
        Rational(&self.0 * &self.0)
    }

    pub fn recip(&self) -> Result<Rational> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Rational> {
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(&self.0 / &other.0))
    }

    pub fn to_raw(&self) -> RawFraction {
        RawFraction {
            num: self.numer().clone(),
            den: self.denom().clone(),
        }
    }

    /// `k` for integers, `p/q` otherwise; never the mixed form.
    pub fn to_fraction_text(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl From<i64> for Rational {
    fn from(k: i64) -> Self {
        Rational::from_integer(k)
    }
}

impl From<BigInt> for Rational {
    fn from(k: BigInt) -> Self {
        Rational::from_integer(k)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the integer types do. Use `checked_div`
// where the divisor is not known to be non-zero.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let magnitude = self.abs();
        let sign = if self.is_negative() { "-" } else { "" };
        let whole = magnitude.floor();
        let frac = &magnitude - &Rational::from_integer(whole.clone());
        if frac.is_zero() {
            write!(f, "{sign}{whole}")
        } else if whole.is_zero() {
            write!(f, "{sign}{}/{}", frac.numer(), frac.denom())
        } else {
            write!(f, "{sign}{whole}+{}/{}", frac.numer(), frac.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(s.parse::<FractionText>()?.value())
    }
}

/// A fraction kept exactly as built: positive denominator, no reduction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RawFraction {
    num: BigInt,
    den: BigInt,
}

impl RawFraction {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (num, den) = (num.into(), den.into());
        match den.sign() {
            num_bigint::Sign::NoSign => Err(Error::ZeroDenominator),
            num_bigint::Sign::Minus => Ok(RawFraction { num: -num, den: -den }),
            num_bigint::Sign::Plus => Ok(RawFraction { num, den }),
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn value(&self) -> Rational {
        Rational(BigRational::new(self.num.clone(), self.den.clone()))
    }

    /// Same numerator and denominator, not merely the same value.
    pub fn same_components(&self, other: &RawFraction) -> bool {
        self.num == other.num && self.den == other.den
    }

    pub fn is_reduced(&self) -> bool {
        self.num.gcd(&self.den).is_one()
    }

    /// Renders `a+p/q` keeping the raw denominator (`k` when it is 1).
    pub fn mixed_text(&self) -> String {
        if self.den.is_one() {
            return self.num.to_string();
        }
        let sign = if self.num.is_negative() { "-" } else { "" };
        let magnitude = self.num.abs();
        let (whole, part) = magnitude.div_mod_floor(&self.den);
        if whole.is_zero() {
            format!("{sign}{part}/{}", self.den)
        } else {
            format!("{sign}{whole}+{part}/{}", self.den)
        }
    }
}

impl fmt::Display for RawFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl From<&Rational> for RawFraction {
    fn from(x: &Rational) -> Self {
        x.to_raw()
    }
}

/// A fraction in its printed shape.
///
/// `11`, `11+0/1` and `11/1` all denote the same raw fraction `11/1` but are
/// different texts; this type keeps them apart so a table can be written back
/// exactly as it was transcribed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FractionText {
    /// `k`
    Integer(BigInt),
    /// `p/q`, sign on the numerator.
    Fraction(RawFraction),
    /// `a+p/q` with `a, p >= 0`; `negative` applies to the whole value.
    Mixed {
        negative: bool,
        whole: BigInt,
        frac: RawFraction,
    },
}

impl FractionText {
    pub fn raw(&self) -> RawFraction {
        match self {
            FractionText::Integer(k) => RawFraction {
                num: k.clone(),
                den: BigInt::one(),
            },
            FractionText::Fraction(f) => f.clone(),
            FractionText::Mixed {
                negative,
                whole,
                frac,
            } => {
                let num = whole * &frac.den + &frac.num;
                RawFraction {
                    num: if *negative { -num } else { num },
                    den: frac.den.clone(),
                }
            }
        }
    }

    pub fn value(&self) -> Rational {
        self.raw().value()
    }

    /// Whole part and fractional part as printed, for non-negative values.
    /// `Integer(k)` is `(k, 0/1)`, `Fraction(p/q)` is `(0, p/q)`.
    pub fn whole_and_fraction(&self) -> (BigInt, RawFraction) {
        match self {
            FractionText::Integer(k) => (k.clone(), RawFraction::new(0, 1).unwrap()),
            FractionText::Fraction(f) => (BigInt::zero(), f.clone()),
            FractionText::Mixed { whole, frac, .. } => (whole.clone(), frac.clone()),
        }
    }
}

impl fmt::Display for FractionText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FractionText::Integer(k) => write!(f, "{k}"),
            FractionText::Fraction(r) => write!(f, "{}/{}", r.num, r.den),
            FractionText::Mixed {
                negative,
                whole,
                frac,
            } => {
                let sign = if *negative { "-" } else { "" };
                write!(f, "{sign}{whole}+{}/{}", frac.num, frac.den)
            }
        }
    }
}

impl FromStr for FractionText {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_fraction_text(s, true)
    }
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            chars: text
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            at: 0,
            text,
        }
    }

    fn pos(&self) -> usize {
        self.chars
            .get(self.at)
            .map(|(i, _)| *i)
            .unwrap_or(self.text.len())
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|(_, c)| *c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<(usize, BigInt)> {
        let start = self.pos();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.at += 1;
        }
        if digits.is_empty() {
            return Err(match self.peek() {
                Some(c) => Error::parse(start, format!("expected digit, found '{c}'")),
                None => Error::parse(start, "expected digit, found end of input"),
            });
        }
        Ok((start, digits.parse().expect("ascii digits")))
    }

    fn denominator(&mut self) -> Result<BigInt> {
        let (pos, den) = self.int()?;
        if den.is_zero() {
            return Err(Error::parse(pos, "zero denominator"));
        }
        Ok(den)
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(Error::parse(self.pos(), format!("unexpected '{c}'"))),
        }
    }
}

/// Grammar: `["-"] INT | ["-"] INT "/" INT | ["-"] INT "+" INT "/" INT`,
/// whitespace ignored.
fn parse_fraction_text(text: &str, allow_sign: bool) -> Result<FractionText> {
    let mut cur = Cursor::new(text);
    let sign_pos = cur.pos();
    let negative = cur.eat('-');
    if negative && !allow_sign {
        return Err(Error::parse(sign_pos, "negative value not allowed"));
    }
    let (_, lead) = cur.int()?;
    let parsed = if cur.eat('/') {
        let den = cur.denominator()?;
        let num = if negative { -lead } else { lead };
        FractionText::Fraction(RawFraction { num, den })
    } else if cur.eat('+') {
        let (_, num) = cur.int()?;
        if !cur.eat('/') {
            return Err(Error::parse(cur.pos(), "expected '/' in mixed fraction"));
        }
        let den = cur.denominator()?;
        FractionText::Mixed {
            negative,
            whole: lead,
            frac: RawFraction { num, den },
        }
    } else {
        FractionText::Integer(if negative { -lead } else { lead })
    };
    cur.finish()?;
    Ok(parsed)
}

/// Canonicalizing constructor; the sign ends up on the numerator.
pub fn make_rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    Rational::new(num, den)
}

/// `(a+c)/(b+d)` of the canonical forms, re-canonicalized.
pub fn mediant(x: &Rational, y: &Rational) -> Rational {
    Rational(BigRational::new(x.numer() + y.numer(), x.denom() + y.denom()))
}

/// Component-wise `(a+c)/(b+d)`, never reduced.
pub fn mediant_raw(x: &RawFraction, y: &RawFraction) -> RawFraction {
    RawFraction {
        num: &x.num + &y.num,
        den: &x.den + &y.den,
    }
}

/// Where `x` sits relative to the square root of a radicand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SideOfRoot {
    Below,
    Exact,
    Above,
}

/// Non-negative rational radicand `n = N/D`, with `a = floor(sqrt(n))` and
/// `r = n - a^2` computed once.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Radicand {
    n: Rational,
    a: BigInt,
    r: Rational,
}

impl Radicand {
    pub fn new(n: Rational) -> Result<Self> {
        if n.is_negative() {
            return Err(Error::NegativeRadicand(n.to_string()));
        }
        // a^2 <= N/D  <=>  a^2 <= floor(N/D) for integer a.
        let a = n.floor().sqrt();
        let r = &n - &Rational::from_integer(&a * &a);
        debug_assert!(!r.is_negative());
        Ok(Radicand { n, a, r })
    }

    pub fn from_integer(k: impl Into<BigInt>) -> Result<Self> {
        Radicand::new(Rational::from_integer(k))
    }

    pub fn value(&self) -> &Rational {
        &self.n
    }

    pub fn numer(&self) -> &BigInt {
        self.n.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.n.denom()
    }

    /// `floor(sqrt(n))`
    pub fn floor_root(&self) -> &BigInt {
        &self.a
    }

    /// `n - floor(sqrt(n))^2`
    pub fn floor_remainder(&self) -> &Rational {
        &self.r
    }

    pub fn is_integer(&self) -> bool {
        self.n.is_integer()
    }

    /// The rational square root, when `N` and `D` are both perfect squares.
    pub fn exact_root(&self) -> Option<Rational> {
        let num_root = self.numer().sqrt();
        let den_root = self.denom().sqrt();
        if &(&num_root * &num_root) == self.numer() && &(&den_root * &den_root) == self.denom() {
            Some(Rational(BigRational::new(num_root, den_root)))
        } else {
            None
        }
    }
}

impl fmt::Display for Radicand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.n.fmt(f)
    }
}

impl FromStr for Radicand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_radicand(s)
    }
}

/// Parses `INT`, `INT/INT` or `INT+INT/INT` into a radicand.
pub fn parse_radicand(text: &str) -> Result<Radicand> {
    Radicand::new(parse_fraction_text(text, false)?.value())
}

/// Sign of `x^2 - n` by integer cross-multiplication: `p^2 D` vs `N q^2`.
pub fn square_compare(x: &Rational, n: &Radicand) -> SideOfRoot {
    let lhs = x.numer() * x.numer() * n.denom();
    let rhs = n.numer() * x.denom() * x.denom();
    match lhs.cmp(&rhs) {
        Ordering::Less => SideOfRoot::Below,
        Ordering::Equal => SideOfRoot::Exact,
        Ordering::Greater => SideOfRoot::Above,
    }
}

/// `n - x^2`: positive below the root, negative above.
pub fn remainder(x: &Rational, n: &Radicand) -> Rational {
    n.value() - &x.square()
}

/// `x^2 - n`: positive above the root.
pub fn upper_error(x: &Rational, n: &Radicand) -> Rational {
    x.square() - n.value()
}

/// `n - x^2` over the natural common denominator `lcm(D, q^2)` of the raw
/// value `x = P/q`, which is how a hand computation would leave it.
pub fn remainder_raw(x: &RawFraction, n: &Radicand) -> RawFraction {
    let q2 = &x.den * &x.den;
    let den = n.denom().lcm(&q2);
    let num = n.numer() * (&den / n.denom()) - &x.num * &x.num * (&den / &q2);
    RawFraction { num, den }
}

/// `(floor(x), x - floor(x))`
pub fn to_mixed(x: &Rational) -> (BigInt, Rational) {
    let whole = x.floor();
    let frac = x - &Rational::from_integer(whole.clone());
    (whole, frac)
}
