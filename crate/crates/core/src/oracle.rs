//! Independent checks for the mediant engine: periodic continued fractions,
//! convergents, fundamental Pell solutions, an exhaustive best-upper search,
//! and unit-fraction display. Nothing here calls into the engine.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{Radicand, Rational};

/// Simple continued fraction of `sqrt(n)`: `[a0; period, period, ...]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfExpansion {
    pub n: BigInt,
    pub a0: BigInt,
    pub period: Vec<BigInt>,
}

impl CfExpansion {
    /// Partial quotients `a0, a1, a2, ...`, cycling through the period.
    pub fn terms(&self) -> impl Iterator<Item = &BigInt> + '_ {
        std::iter::once(&self.a0).chain(self.period.iter().cycle())
    }
}

/// Minimal `p, q > 0` with `p^2 - n q^2 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolution {
    pub p: BigInt,
    pub q: BigInt,
}

impl PellSolution {
    pub fn value(&self) -> Rational {
        Rational::new(self.p.clone(), self.q.clone()).expect("q > 0")
    }
}

fn non_square_root(n: &BigInt) -> Result<BigInt> {
    if n < &BigInt::from(2) {
        return Err(Error::NotNonSquareInteger(n.to_string()));
    }
    let a0 = n.sqrt();
    if &(&a0 * &a0) == n {
        return Err(Error::NotNonSquareInteger(n.to_string()));
    }
    Ok(a0)
}

/// Period of `sqrt(n)` via the integer recurrence
/// `m' = d a - m`, `d' = (n - m'^2) / d`, `a' = (a0 + m') / d'`.
pub fn cf_expansion(n: &BigInt) -> Result<CfExpansion> {
    let a0 = non_square_root(n)?;
    let (mut m, mut d, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let twice = &a0 * 2;
    let mut period = Vec::new();
    loop {
        m = &d * &a - &m;
        d = (n - &m * &m) / &d;
        a = (&a0 + &m) / &d;
        period.push(a.clone());
        if a == twice {
            break;
        }
    }
    // The period closes exactly when the state is back to (a0, 1).
    debug_assert!(m == a0 && d.is_one());
    Ok(CfExpansion {
        n: n.clone(),
        a0,
        period,
    })
}

/// First `count` convergents `p_k/q_k` from `p_k = a_k p_{k-1} + p_{k-2}`.
pub fn convergents(e: &CfExpansion, count: usize) -> Vec<Rational> {
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    e.terms()
        .take(count)
        .map(|a| {
            let p_next = a * &p + &p_prev;
            let q_next = a * &q + &q_prev;
            p_prev = std::mem::replace(&mut p, p_next);
            q_prev = std::mem::replace(&mut q, q_next);
            Rational::new(p.clone(), q.clone()).expect("q > 0")
        })
        .collect()
}

/// Scans convergents for the first solution of `p^2 - n q^2 = 1`.
pub fn fundamental_pell(n: &BigInt) -> Result<PellSolution> {
    let e = cf_expansion(n)?;
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    for a in e.terms() {
        let p_next = a * &p + &p_prev;
        let q_next = a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        if &p * &p - n * &q * &q == BigInt::one() {
            return Ok(PellSolution { p, q });
        }
    }
    unreachable!("the convergent at the end of the first or second period solves Pell")
}

/// Smallest `p/q` above `sqrt(n)` over every denominator `q <= qmax`.
///
/// For each `q`, the candidate is the least `p` with `p^2 D > N q^2`; the
/// winner is found by exact cross-multiplication. Ties keep the smaller `q`.
pub fn brute_best_upper(n: &Radicand, qmax: u64) -> Result<Rational> {
    if n.exact_root().is_some() {
        return Err(Error::PerfectSquare {
            radicand: n.to_string(),
            root: n.exact_root().unwrap().to_string(),
        });
    }
    if qmax == 0 {
        return Err(Error::InvalidSeeds("qmax must be at least 1".into()));
    }
    let (p, q) = match (n.numer().to_u128(), n.denom().to_u128()) {
        (Some(num), Some(den)) if fits_u128(num, den, qmax) => best_upper_u128(num, den, qmax),
        _ => best_upper_big(n, qmax),
    };
    Ok(Rational::new(p, q).expect("q > 0"))
}

fn fits_u128(num: u128, den: u128, qmax: u64) -> bool {
    // p^2 D and N q^2 must stay below 2^127 with p ~ q sqrt(N/D) + 1.
    let q = qmax as u128;
    num.checked_mul(q * q)
        .and_then(|v| v.checked_mul(4))
        .and_then(|v| v.checked_mul(den))
        .is_some_and(|v| v < (1u128 << 126))
}

fn best_upper_u128(num: u128, den: u128, qmax: u64) -> (BigInt, BigInt) {
    let mut best: Option<(u128, u128)> = None;
    for q in 1..=qmax as u128 {
        // Least p with p^2 D > N q^2 is floor(sqrt(floor(N q^2 / D))) + 1;
        // equality is impossible for a non-square radicand.
        let p = (num * q * q / den).isqrt() + 1;
        debug_assert!(p * p * den > num * q * q);
        best = match best {
            Some((bp, bq)) if bp * q <= p * bq => Some((bp, bq)),
            _ => Some((p, q)),
        };
    }
    let (p, q) = best.expect("qmax >= 1");
    (BigInt::from(p), BigInt::from(q))
}

fn best_upper_big(n: &Radicand, qmax: u64) -> (BigInt, BigInt) {
    let mut best: Option<(BigInt, BigInt)> = None;
    for q in 1..=qmax {
        let q = BigInt::from(q);
        let p = (n.numer() * &q * &q / n.denom()).sqrt() + 1;
        best = match best {
            Some((bp, bq)) if &bp * &q <= &p * &bq => Some((bp, bq)),
            _ => Some((p, q)),
        };
    }
    best.expect("qmax >= 1")
}

/// `whole + 1/u [+ 1/v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitForm {
    pub whole: BigInt,
    pub u: BigInt,
    pub v: Option<BigInt>,
}

impl std::fmt::Display for UnitForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}+1/{}", self.whole, self.u)?;
        if let Some(v) = &self.v {
            write!(f, "+1/{v}")?;
        }
        Ok(())
    }
}

pub const UNIT_FRACTION_BOUND: u32 = 1000;

/// Writes the fractional part as `1/u` or `1/u + 1/v` with
/// `2 <= u < v <= 1000`, preferring a single unit fraction and otherwise the
/// smallest `u`.
pub fn unit_fraction_form(x: &Rational) -> Option<UnitForm> {
    if x.is_negative() {
        return None;
    }
    let whole = x.floor();
    let frac = x - &Rational::from_integer(whole.clone());
    if frac.is_zero() {
        return None;
    }
    if frac.numer().is_one() {
        return Some(UnitForm {
            whole,
            u: frac.denom().clone(),
            v: None,
        });
    }
    (2..UNIT_FRACTION_BOUND).find_map(|u| {
        let u = BigInt::from(u);
        let rest = &frac - &Rational::new(1, u.clone()).expect("u > 0");
        let fits = rest.is_positive()
            && rest.numer().is_one()
            && rest.denom() > &u
            && rest.denom() <= &BigInt::from(UNIT_FRACTION_BOUND);
        fits.then(|| UnitForm {
            whole: whole.clone(),
            u,
            v: Some(rest.denom().clone()),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_radicand;

    fn big(k: i64) -> BigInt {
        BigInt::from(k)
    }

    fn val(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn cf_examples() {
        let e = cf_expansion(&big(2)).unwrap();
        assert_eq!((e.a0.clone(), e.period.clone()), (big(1), ints(&[2])));
        // Oracle: convergents 3/2, 7/5, 17/12 give p^2 - 2 q^2 = +-1.
        for c in &convergents(&e, 4)[1..] {
            let norm = c.numer() * c.numer() - big(2) * c.denom() * c.denom();
            assert!(norm == big(1) || norm == big(-1));
        }

        let e = cf_expansion(&big(5)).unwrap();
        assert_eq!((e.a0.clone(), e.period.clone()), (big(2), ints(&[4])));

        let e = cf_expansion(&big(128)).unwrap();
        assert_eq!(e.a0, big(11));
        assert_eq!(e.period, ints(&[3, 5, 3, 22]));
        assert!(convergents(&e, 8).contains(&val("577/51")));
    }

    #[test]
    fn cf_rejects_squares() {
        for n in [0, 1, 4, 9, 144] {
            assert!(cf_expansion(&big(n)).is_err());
        }
    }

    #[test]
    fn convergent_examples() {
        let e = cf_expansion(&big(2)).unwrap();
        assert_eq!(
            convergents(&e, 4),
            vec![val("1"), val("3/2"), val("7/5"), val("17/12")]
        );
        assert_eq!(convergents(&e, 8).last(), Some(&val("577/408")));
        assert_eq!(convergents(&cf_expansion(&big(5)).unwrap(), 1), vec![val("2")]);
    }

    #[test]
    fn pell_examples() {
        let s = fundamental_pell(&big(128)).unwrap();
        assert_eq!((s.p, s.q), (big(577), big(51)));
        let s = fundamental_pell(&big(2)).unwrap();
        assert_eq!((s.p, s.q), (big(3), big(2)));
        let s = fundamental_pell(&big(5)).unwrap();
        assert_eq!((s.p, s.q), (big(9), big(4)));
        // Odd period: the solution closes the second period.
        let s = fundamental_pell(&big(13)).unwrap();
        assert_eq!((s.p, s.q), (big(649), big(180)));
        assert!(fundamental_pell(&big(16)).is_err());
    }

    #[test]
    fn pell_brute_force_for_five() {
        // Exhaustive q = 1..10 for n = 5.
        let hit = (1..=10i64)
            .flat_map(|q| (1..=40i64).map(move |p| (p, q)))
            .find(|&(p, q)| p * p - 5 * q * q == 1);
        assert_eq!(hit, Some((9, 4)));
    }

    #[test]
    fn brute_best_upper_examples() {
        let r = |s: &str| parse_radicand(s).unwrap();
        assert_eq!(brute_best_upper(&r("128"), 51).unwrap(), val("577/51"));
        assert_eq!(brute_best_upper(&r("80"), 18).unwrap(), val("8+17/18"));
        assert_eq!(brute_best_upper(&r("2"), 1).unwrap(), val("2"));
        assert_eq!(brute_best_upper(&r("16/3"), 42).unwrap(), val("2+13/42"));
        assert!(brute_best_upper(&r("9/4"), 5).is_err());
    }

    #[test]
    fn brute_paths_agree() {
        let n = parse_radicand("1400/11").unwrap();
        for qmax in [1, 7, 50, 341] {
            let (p, q) = best_upper_big(&n, qmax);
            let small = brute_best_upper(&n, qmax).unwrap();
            assert_eq!(Rational::new(p, q).unwrap(), small);
        }
    }

    #[test]
    fn unit_fraction_examples() {
        let f = unit_fraction_form(&val("2+13/42")).unwrap();
        assert_eq!((f.whole, f.u, f.v), (big(2), big(6), Some(big(7))));
        let f = unit_fraction_form(&val("3+1/4")).unwrap();
        assert_eq!((f.whole, f.u, f.v), (big(3), big(4), None));
        let f = unit_fraction_form(&val("1/2")).unwrap();
        assert_eq!((f.whole, f.u, f.v), (big(0), big(2), None));
        assert_eq!(unit_fraction_form(&val("2+13/42")).unwrap().to_string(), "2+1/6+1/7");
        assert_eq!(unit_fraction_form(&val("3")), None);
        // 16/51 is not a sum of two unit fractions with denominators <= 1000.
        assert_eq!(unit_fraction_form(&val("11+16/51")), None);
    }
}
