//! Integer factorization with certified primality.
//!
//! Trial division by every prime below 10^6, then Brent's variant of Pollard
//! rho for what remains. Survivors are only reported as prime once certified:
//! Miller-Rabin with the first thirteen prime bases is a proof below
//! 3.317 * 10^24, and larger candidates get a Pocklington certificate built
//! from a recursive factorization of `n - 1`.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Rho iterations granted to a default `factor` call.
pub const DEFAULT_FACTOR_BUDGET: u64 = 20_000_000;

const TRIAL_LIMIT: u32 = 1_000_000;
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

fn mr_deterministic_limit() -> &'static BigInt {
    static LIMIT: OnceLock<BigInt> = OnceLock::new();
    LIMIT.get_or_init(|| "3317044064679887385961981".parse().unwrap())
}

/// Complete prime factorization of a nonzero integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    negative: bool,
    factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// `(prime, exponent)` pairs, primes ascending.
    pub fn factors(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    pub fn value(&self) -> BigInt {
        let mut v = BigInt::one();
        for (p, e) in &self.factors {
            v *= num_traits::pow(p.clone(), *e as usize);
        }
        if self.negative {
            -v
        } else {
            v
        }
    }

    /// Every positive divisor, ascending.
    pub fn divisors(&self) -> Vec<BigInt> {
        let mut divs = vec![BigInt::one()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
            for d in &divs {
                let mut pk = d.clone();
                next.push(pk.clone());
                for _ in 0..*e {
                    pk *= p;
                    next.push(pk.clone());
                }
            }
            divs = next;
        }
        divs.sort();
        divs
    }

    fn from_primes(negative: bool, mut primes: Vec<BigInt>) -> Self {
        primes.sort();
        let mut factors: Vec<(BigInt, u32)> = Vec::new();
        for p in primes {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Factorization { negative, factors }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

struct Budget {
    remaining: u64,
}

impl Budget {
    fn spend(&mut self, n: u64) -> bool {
        if self.remaining < n {
            self.remaining = 0;
            false
        } else {
            self.remaining -= n;
            true
        }
    }
}

/// Factors `n` completely with the default budget.
pub fn factor(n: &BigInt) -> Result<Factorization> {
    factor_with_budget(n, DEFAULT_FACTOR_BUDGET)
}

/// Factors `n` completely, spending at most `budget` rho iterations.
///
/// Never returns a partial factorization: running out of budget is an error
/// carrying the first unresolved cofactor.
pub fn factor_with_budget(n: &BigInt, budget: u64) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::FactorZero);
    }
    let mut budget = Budget { remaining: budget };
    let mut primes = Vec::new();
    let rest = trial_divide(&n.abs(), &mut primes);
    if !rest.is_one() {
        split_into(rest, &mut primes, &mut budget)?;
    }
    Ok(Factorization::from_primes(n.is_negative(), primes))
}

/// The part of `n` found by trial division alone, used when a full
/// factorization is out of budget.
pub(crate) fn smooth_part(n: &BigInt) -> Factorization {
    let mut primes = Vec::new();
    trial_divide(&n.abs(), &mut primes);
    Factorization::from_primes(n.is_negative(), primes)
}

fn trial_divide(n: &BigInt, out: &mut Vec<BigInt>) -> BigInt {
    let mut rest = n.clone();
    if let Some(small) = rest.to_u64() {
        let mut m = small;
        for &p in small_primes() {
            let p = p as u64;
            if p * p > m {
                break;
            }
            while m % p == 0 {
                out.push(BigInt::from(p));
                m /= p;
            }
        }
        if m > 1 && m < (TRIAL_LIMIT as u64) * (TRIAL_LIMIT as u64) {
            out.push(BigInt::from(m));
            return BigInt::one();
        }
        return BigInt::from(m);
    }
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            out.push(pb.clone());
            rest = q;
        }
    }
    if rest > BigInt::one() && rest < BigInt::from(TRIAL_LIMIT as u64 * TRIAL_LIMIT as u64) {
        out.push(rest);
        return BigInt::one();
    }
    rest
}

// `n` has no prime factor below the trial limit.
fn split_into(n: BigInt, out: &mut Vec<BigInt>, budget: &mut Budget) -> Result<()> {
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if m < BigInt::from(TRIAL_LIMIT as u64 * TRIAL_LIMIT as u64) {
            out.push(m);
            continue;
        }
        if is_probable_prime(&m) {
            if certify_prime(&m, budget)? {
                out.push(m);
                continue;
            }
            return Err(Error::FactorBudgetExceeded {
                cofactor: m.to_string(),
            });
        }
        if let Some(r) = perfect_power_root(&m) {
            // m = r^k; push k copies of r's factors by re-queueing.
            let k = exponent_of_root(&m, &r);
            for _ in 0..k {
                stack.push(r.clone());
            }
            continue;
        }
        let d = pollard_brent(&m, budget).ok_or_else(|| Error::FactorBudgetExceeded {
            cofactor: m.to_string(),
        })?;
        let other = &m / &d;
        stack.push(d);
        stack.push(other);
    }
    Ok(())
}

fn exponent_of_root(m: &BigInt, r: &BigInt) -> u32 {
    let mut k = 0;
    let mut acc = BigInt::one();
    while &acc < m {
        acc *= r;
        k += 1;
    }
    k
}

fn perfect_power_root(m: &BigInt) -> Option<BigInt> {
    let bits = m.bits();
    for k in 2..=bits as u32 {
        let r = m.nth_root(k);
        if r <= BigInt::one() {
            break;
        }
        if num_traits::pow(r.clone(), k as usize) == *m {
            return Some(r);
        }
    }
    None
}

fn pollard_brent(n: &BigInt, budget: &mut Budget) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    const BATCH: u64 = 128;
    for c in 1u32.. {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = BigInt::one();
        let mut q = BigInt::one();
        let mut r: u64 = 1;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                if !budget.spend(steps) {
                    return None;
                }
                for _ in 0..steps {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

fn miller_rabin(n: &BigInt, base: &BigInt) -> bool {
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    let mut x = base.modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

fn is_probable_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for &p in &MR_BASES {
        let pb = BigInt::from(p);
        if *n == pb {
            return true;
        }
        if (n % &pb).is_zero() {
            return false;
        }
    }
    MR_BASES
        .iter()
        .all(|&b| miller_rabin(n, &BigInt::from(b)))
}

// Caller guarantees `n` passed Miller-Rabin.
fn certify_prime(n: &BigInt, budget: &mut Budget) -> Result<bool> {
    if n < mr_deterministic_limit() {
        return Ok(true);
    }
    // Pocklington with the full factorization of n - 1.
    let n_minus_1 = n - BigInt::one();
    let mut qs = Vec::new();
    let rest = trial_divide(&n_minus_1, &mut qs);
    if !rest.is_one() {
        split_into(rest, &mut qs, budget)?;
    }
    qs.sort();
    qs.dedup();
    let one = BigInt::one();
    for q in &qs {
        let e = &n_minus_1 / q;
        let witness = (2u32..200).map(BigInt::from).find(|a| {
            a.modpow(&n_minus_1, n) == one && (a.modpow(&e, n) - &one).gcd(n) == one
        });
        if witness.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Primality test; a proof for inputs below 3.317 * 10^24, otherwise
/// certified with the default budget and probabilistic only if that fails.
pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    if let Some(m) = n.to_u64() {
        if m < TRIAL_LIMIT as u64 {
            return small_primes().binary_search(&(m as u32)).is_ok();
        }
    }
    if !is_probable_prime(n) {
        return false;
    }
    let mut budget = Budget {
        remaining: DEFAULT_FACTOR_BUDGET,
    };
    certify_prime(n, &mut budget).unwrap_or(true)
}

/// Primality with a certificate: `Ok(true)` only when primality is proven.
pub fn is_prime_certified(n: &BigInt, budget: u64) -> Result<bool> {
    if *n < BigInt::from(2) || !is_probable_prime(n) {
        return Ok(false);
    }
    let mut budget = Budget { remaining: budget };
    if certify_prime(n, &mut budget)? {
        Ok(true)
    } else {
        Err(Error::FactorBudgetExceeded {
            cofactor: n.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division_oracle(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    fn as_u64_pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.factors()
            .iter()
            .map(|(p, e)| (p.to_u64().unwrap(), *e))
            .collect()
    }

    #[test]
    fn small_examples() {
        let f = factor(&BigInt::from(57)).unwrap();
        assert_eq!(as_u64_pairs(&f), vec![(3, 1), (19, 1)]);
        let f = factor(&BigInt::from(-1)).unwrap();
        assert!(f.is_negative());
        assert!(f.factors().is_empty());
        assert_eq!(factor(&BigInt::zero()), Err(Error::FactorZero));
    }

    #[test]
    fn matches_trial_division() {
        let f = factor(&BigInt::from(65281)).unwrap();
        assert_eq!(as_u64_pairs(&f), trial_division_oracle(65281));
        assert_eq!(as_u64_pairs(&f), vec![(97, 1), (673, 1)]);
    }

    #[test]
    fn beyond_trial_limit() {
        // (10^9 + 7) * (10^9 + 9) and a square of a large prime
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(1_000_000_009u64);
        let f = factor(&(&p * &q)).unwrap();
        assert_eq!(f.factors(), &[(p.clone(), 1), (q.clone(), 1)]);
        let f = factor(&(&p * &p * &q)).unwrap();
        assert_eq!(f.factors(), &[(p.clone(), 2), (q, 1)]);
        let r: BigInt = "1000000000000000003".parse().unwrap();
        assert!(is_prime(&r));
        let f = factor(&(&r * &r)).unwrap();
        assert_eq!(f.factors(), &[(r, 2)]);
    }

    #[test]
    fn pocklington_certifies_large_prime() {
        // 2^89 - 1 is a Mersenne prime above the deterministic Miller-Rabin range.
        let m89 = (BigInt::one() << 89) - 1;
        assert!(is_prime_certified(&m89, DEFAULT_FACTOR_BUDGET).unwrap());
        let f = factor(&(&m89 * 3)).unwrap();
        assert_eq!(f.factors(), &[(BigInt::from(3), 1), (m89, 1)]);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let p: BigInt = "1000000000039".parse().unwrap();
        let q: BigInt = "1000000000061".parse().unwrap();
        let n = &p * &q;
        assert!(matches!(
            factor_with_budget(&n, 10),
            Err(Error::FactorBudgetExceeded { .. })
        ));
        assert_eq!(factor(&n).unwrap().value(), n);
    }

    #[test]
    fn divisors_of_twelve() {
        let f = factor(&BigInt::from(12)).unwrap();
        let d: Vec<i64> = f.divisors().iter().map(|d| d.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }

    proptest! {
        #[test]
        fn factorization_reconstructs(n in 1u64..5_000_000_000) {
            let f = factor(&BigInt::from(n)).unwrap();
            prop_assert_eq!(f.value(), BigInt::from(n));
            prop_assert_eq!(as_u64_pairs(&f), trial_division_oracle(n));
        }
    }
}
