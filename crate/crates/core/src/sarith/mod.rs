//! Exact arithmetic over Q relative to a finite set S of primes.
//!
//! The archimedean place is always implicitly part of S, so a set with `k`
//! primes describes `k + 1` places. Everything here is a pure function of
//! immutable values.

mod factor;
mod unit_eq;

pub(crate) use factor::smooth_part;
pub use factor::{
    factor, factor_with_budget, is_prime, is_prime_certified, Factorization, DEFAULT_FACTOR_BUDGET,
};
pub use unit_eq::{evertse_bound, solve_unit_eq, UnitEquationSolutions, UnitSolution};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Elements of Q, the ring of S-integers and its unit group all live here.
pub type Rational = BigRational;

/// The finite primes of S, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SPrimeSet {
    primes: Vec<u64>,
}

impl SPrimeSet {
    /// Builds the set from any list of primes; duplicates are merged.
    pub fn new<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self> {
        let mut primes: Vec<u64> = primes.into_iter().collect();
        for &p in &primes {
            if !is_prime(&BigInt::from(p)) {
                return Err(Error::NotPrime(p.to_string()));
            }
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(SPrimeSet { primes })
    }

    /// S containing only the archimedean place, so that Z_S = Z.
    pub fn empty() -> Self {
        SPrimeSet::default()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Number of places, counting the archimedean one.
    pub fn place_count(&self) -> usize {
        self.primes.len() + 1
    }

    pub fn contains(&self, p: &BigInt) -> bool {
        match u64::try_from(p) {
            Ok(q) => self.primes.binary_search(&q).is_ok(),
            Err(_) => false,
        }
    }

    /// Parses a comma separated list such as `2,3`; the empty string is the empty set.
    pub fn parse(text: &str) -> Result<Self> {
        let mut primes = Vec::new();
        for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let p: u64 = tok.parse().map_err(|_| Error::Parse {
                position: 0,
                token: tok.to_string(),
                message: "expected a prime".into(),
            })?;
            primes.push(p);
        }
        SPrimeSet::new(primes)
    }
}

impl fmt::Display for SPrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// An integral ideal of Z_S, stored as its unique positive generator with no
/// prime factor in S.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SIdeal {
    generator: BigInt,
}

impl SIdeal {
    /// The ideal generated by a nonzero integer: its S-part is a unit and drops out.
    pub fn from_integer(n: &BigInt, s: &SPrimeSet) -> Self {
        assert!(!n.is_zero(), "the zero ideal is not an SIdeal");
        let (_, coprime) = split_s_part(n, s);
        SIdeal { generator: coprime }
    }

    pub fn unit() -> Self {
        SIdeal {
            generator: BigInt::one(),
        }
    }

    pub fn generator(&self) -> &BigInt {
        &self.generator
    }

    pub fn is_unit(&self) -> bool {
        self.generator.is_one()
    }

    pub fn divides(&self, other: &SIdeal) -> bool {
        (&other.generator % &self.generator).is_zero()
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &SIdeal) -> Option<SIdeal> {
        self.divides(other).then(|| SIdeal {
            generator: &other.generator / &self.generator,
        })
    }
}

impl fmt::Display for SIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.generator)
    }
}

/// Exponent of `p` in a nonzero integer. `p` must be at least 2.
pub(crate) fn vp_int(n: &BigInt, p: &BigInt) -> u64 {
    debug_assert!(!n.is_zero());
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

pub(crate) fn vp_unchecked(x: &Rational, p: &BigInt) -> i64 {
    vp_int(x.numer(), p) as i64 - vp_int(x.denom(), p) as i64
}

/// The p-adic valuation of a nonzero rational.
pub fn vp(x: &Rational, p: &BigInt) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(vp_unchecked(x, p))
}

/// Removes every prime of S from `|n|` and returns `(s_part, coprime_part)`, both positive.
pub fn split_s_part(n: &BigInt, s: &SPrimeSet) -> (BigInt, BigInt) {
    assert!(!n.is_zero(), "split_s_part of zero");
    let mut rest = n.abs();
    let mut s_part = BigInt::one();
    for &p in s.primes() {
        let p = BigInt::from(p);
        loop {
            let (q, r) = rest.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            s_part *= &p;
        }
    }
    (s_part, rest)
}

/// True iff every prime outside S has nonnegative valuation in `x`.
pub fn is_s_integer(x: &Rational, s: &SPrimeSet) -> bool {
    if x.is_zero() {
        return true;
    }
    split_s_part(x.denom(), s).1.is_one()
}

/// True iff `x` is nonzero with vanishing valuation at every prime outside S.
pub fn is_s_unit(x: &Rational, s: &SPrimeSet) -> bool {
    !x.is_zero() && split_s_part(x.numer(), s).1.is_one() && split_s_part(x.denom(), s).1.is_one()
}

/// Exponent vector of an S-unit over the primes of S, or `None` if `x` is not one.
pub fn s_unit_exponents(x: &Rational, s: &SPrimeSet) -> Option<Vec<i64>> {
    if !is_s_unit(x, s) {
        return None;
    }
    Some(
        s.primes()
            .iter()
            .map(|&p| vp_unchecked(x, &BigInt::from(p)))
            .collect(),
    )
}

/// All S-units `±∏ p^e` with `|e| <= max_exp`, sorted ascending.
pub fn enumerate_s_units(s: &SPrimeSet, max_exp: u32) -> Vec<Rational> {
    let mut units = vec![Rational::one()];
    for &p in s.primes() {
        let p = Rational::from_integer(BigInt::from(p));
        let mut next = Vec::with_capacity(units.len() * (2 * max_exp as usize + 1));
        for u in &units {
            for e in -(max_exp as i32)..=(max_exp as i32) {
                next.push(u * p.pow(e));
            }
        }
        units = next;
    }
    let mut all: Vec<Rational> = units.iter().map(|u| -u).chain(units.iter().cloned()).collect();
    all.sort();
    all
}

/// Canonical text for a rational: `a` or `a/b`.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
