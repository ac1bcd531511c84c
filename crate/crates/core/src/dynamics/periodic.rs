use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms;
use crate::projline::ProjPoint;
use crate::ratmap::HomogMap;
use crate::sarith::{factor_with_budget, smooth_part};

/// Largest allowed `d^n + 1`, the degree of the fixed-point form of the iterate.
pub const DEFAULT_DEGREE_GUARD: u64 = 10_000;

/// Rational points with `Φ^n(P) = P`, sorted. `complete` certifies that no
/// other rational solutions exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicPoints {
    pub points: Vec<ProjPoint>,
    pub complete: bool,
}

pub fn periodic_points(phi: &HomogMap, n: usize, budget: u64) -> Result<PeriodicPoints> {
    periodic_points_with_guard(phi, n, budget, DEFAULT_DEGREE_GUARD)
}

/// Rational roots of `y F_n(x,y) - x G_n(x,y)` where `Φ^n = [F_n : G_n]`.
///
/// `budget` bounds both the rho iterations spent factoring the extreme
/// coefficients and the number of candidate roots evaluated.
pub fn periodic_points_with_guard(
    phi: &HomogMap,
    n: usize,
    budget: u64,
    guard: u64,
) -> Result<PeriodicPoints> {
    let d = phi.degree() as u64;
    u32::try_from(n)
        .ok()
        .and_then(|n| d.checked_pow(n))
        .and_then(|dn| dn.checked_add(1))
        .filter(|&k| k <= guard)
        .ok_or(Error::DegreeGuard {
            degree: format!("{d}^{n} + 1"),
            guard,
        })?;
    let it = phi.iterate(n);
    let fixed: Vec<BigInt> = forms::times_y(it.f())
        .iter()
        .zip(&forms::times_x(it.g()))
        .map(|(a, b)| a - b)
        .collect();
    if fixed.iter().all(Zero::is_zero) {
        return Err(Error::IdentityIterate);
    }

    let mut points = Vec::new();
    // leading zeros are factors of y, trailing zeros factors of x
    let lead_zeros = fixed.iter().take_while(|c| c.is_zero()).count();
    let trail_zeros = fixed.iter().rev().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        points.push(ProjPoint::infinity());
    }
    if trail_zeros > 0 {
        points.push(ProjPoint::from_ints(0, 1)?);
    }
    let core = &fixed[lead_zeros..fixed.len() - trail_zeros];
    let mut complete = true;
    if core.len() > 1 {
        let lead = &core[0];
        let trail = &core[core.len() - 1];
        let mut split = |c: &BigInt| match factor_with_budget(c, budget) {
            Ok(f) => f,
            Err(_) => {
                complete = false;
                smooth_part(c)
            }
        };
        let qs = split(lead).divisors();
        let ps = split(trail).divisors();
        let at_one = forms::eval(core, &1.into(), &1.into());
        let at_minus_one = forms::eval(core, &(-1).into(), &1.into());
        let mut evaluations = 0u64;
        'outer: for q in &qs {
            for p0 in &ps {
                for p in [p0.clone(), -p0] {
                    if !p.gcd(q).is_one() {
                        continue;
                    }
                    // a root p/q makes (q x - p y) a factor of the form
                    if !divides(&(q - &p), &at_one) || !divides(&(q + &p), &at_minus_one) {
                        continue;
                    }
                    if evaluations >= budget {
                        complete = false;
                        break 'outer;
                    }
                    evaluations += 1;
                    if forms::eval(core, &p, q).is_zero() {
                        points.push(ProjPoint::new(p, q.clone())?);
                    }
                }
            }
        }
    }
    points.sort();
    points.dedup();
    debug_assert!(points.iter().all(|p| {
        let mut x = p.clone();
        for _ in 0..n {
            x = phi.eval(&x);
        }
        &x == p
    }));
    Ok(PeriodicPoints { points, complete })
}

fn divides(a: &BigInt, b: &BigInt) -> bool {
    a.is_zero() || (b % a.abs()).is_zero()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::sarith::DEFAULT_FACTOR_BUDGET;

    fn pt(x: i64, y: i64) -> ProjPoint {
        ProjPoint::from_ints(x, y).unwrap()
    }

    fn map(f: &[i64], g: &[i64]) -> HomogMap {
        HomogMap::from_i64_forms(f, g).unwrap()
    }

    // Direct search over small heights, independent of root extraction.
    fn brute(phi: &HomogMap, n: usize, h: i64) -> Vec<ProjPoint> {
        let mut out = vec![];
        let mut cands = vec![ProjPoint::infinity()];
        for y in 1..=h {
            for x in -h..=h {
                cands.push(pt(x, y));
            }
        }
        cands.sort();
        cands.dedup();
        for c in cands {
            let mut x = c.clone();
            for _ in 0..n {
                x = phi.eval(&x);
            }
            if x == c {
                out.push(c);
            }
        }
        out
    }

    #[test]
    fn squaring_fixed_points() {
        let r = periodic_points(&map(&[1, 0, 0], &[0, 0, 1]), 1, DEFAULT_FACTOR_BUDGET).unwrap();
        assert!(r.complete);
        assert_eq!(r.points, vec![pt(0, 1), ProjPoint::infinity(), pt(1, 1)]);
    }

    #[test]
    fn z_squared_minus_one() {
        let phi = map(&[1, 0, -1], &[0, 0, 1]);
        let r1 = periodic_points(&phi, 1, DEFAULT_FACTOR_BUDGET).unwrap();
        assert_eq!(r1.points, vec![ProjPoint::infinity()]);
        assert!(r1.complete);
        let r2 = periodic_points(&phi, 2, DEFAULT_FACTOR_BUDGET).unwrap();
        assert!(r2.complete);
        assert_eq!(r2.points, brute(&phi, 2, 12));
        assert!(r2.points.contains(&pt(0, 1)) && r2.points.contains(&pt(-1, 1)));
    }

    #[test]
    fn matches_brute_force() {
        let maps = [
            map(&[2, -3, -3, 2], &[0, 2, -2, 0]),
            map(&[1, 0, -2], &[0, 2, 0]),
            map(&[2, 0], &[0, 1]),
            map(&[3, 0, -4], &[1, 0, 0]),
        ];
        for phi in &maps {
            for n in 1..=3 {
                let r = periodic_points(phi, n, DEFAULT_FACTOR_BUDGET).unwrap();
                assert!(r.complete);
                let b = brute(phi, n, 10);
                assert!(b.iter().all(|p| r.points.contains(p)), "{phi} {n}");
            }
        }
    }

    #[test]
    fn guard_and_identity() {
        let sq = map(&[1, 0, 0], &[0, 0, 1]);
        assert!(matches!(periodic_points(&sq, 14, 10), Err(Error::DegreeGuard { .. })));
        let u = map(&[0, 1], &[-1, 1]);
        assert_eq!(periodic_points(&u, 3, 10), Err(Error::IdentityIterate));
    }
}
