use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::projline::{cross_det, ProjPoint};
use crate::ratmap::HomogMap;
use crate::sarith::{factor, vp_int, SPrimeSet};

/// Distinct points `P_0, ..., P_{n-1}` with `map(P_i) = P_{i+1 mod n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    map: HomogMap,
    points: Vec<ProjPoint>,
}

impl Cycle {
    pub(crate) fn new_unchecked(map: HomogMap, points: Vec<ProjPoint>) -> Self {
        Cycle { map, points }
    }

    pub fn map(&self) -> &HomogMap {
        &self.map
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `P_{i mod n}`.
    pub fn point(&self, i: usize) -> &ProjPoint {
        &self.points[i % self.points.len()]
    }
}

/// Checks distinctness, the cyclic action and good reduction of the map outside S.
pub fn verify_cycle(phi: &HomogMap, points: &[ProjPoint], s: &SPrimeSet) -> Result<Cycle> {
    if points.is_empty() {
        return Err(Error::CycleTooShort { min: 1 });
    }
    for (j, p) in points.iter().enumerate() {
        if let Some(i) = points[..j].iter().position(|q| q == p) {
            return Err(Error::CycleNotDistinct {
                point: p.to_string(),
                first: i,
                second: j,
            });
        }
    }
    let n = points.len();
    for (i, p) in points.iter().enumerate() {
        let image = phi.eval(p);
        let expected = &points[(i + 1) % n];
        if &image != expected {
            return Err(Error::CycleEval {
                index: i,
                point: p.to_string(),
                image: image.to_string(),
                expected: expected.to_string(),
            });
        }
    }
    if let Some(p) = phi.bad_primes()?.into_iter().find(|p| !s.contains(p)) {
        return Err(Error::CycleReduction { prime: p.to_string() });
    }
    Ok(Cycle::new_unchecked(phi.clone(), points.to_vec()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prop61Violation {
    /// `δ_p(P_i, P_j) != δ_p(P_{i+k}, P_{j+k})`.
    Shift {
        prime: BigInt,
        i: usize,
        j: usize,
        k: usize,
        before: u64,
        after: u64,
    },
    /// `gcd(i - j, n) = 1` but `δ_p(P_i, P_j) != δ_p(P_0, P_1)`.
    Coprime {
        prime: BigInt,
        i: usize,
        j: usize,
        value: u64,
        expected: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop61Report {
    /// Primes dividing some cross-determinant where the map reduces well.
    pub primes: Vec<BigInt>,
    /// Primes of the support skipped because the map has bad reduction there.
    pub skipped: Vec<BigInt>,
    pub checks: usize,
    pub violations: Vec<Prop61Violation>,
}

impl Prop61Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Shift invariance of `δ_p` along the cycle and the coprime-difference rule,
/// at every prime dividing a pairwise cross-determinant.
pub fn check_prop61(cycle: &Cycle) -> Result<Prop61Report> {
    let n = cycle.len();
    let dets: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| cross_det(cycle.point(i), cycle.point(j)).abs()).collect())
        .collect();
    let mut support = BTreeSet::new();
    for (i, row) in dets.iter().enumerate() {
        for d in &row[i + 1..] {
            support.extend(factor(d)?.primes().cloned());
        }
    }
    let (skipped, primes): (Vec<BigInt>, Vec<BigInt>) = support
        .into_iter()
        .partition(|p| !cycle.map().good_reduction_at(p));
    let mut checks = 0;
    let mut violations = Vec::new();
    for p in &primes {
        let delta: Vec<Vec<u64>> = dets
            .iter()
            .map(|row| row.iter().map(|d| if d.is_zero() { 0 } else { vp_int(d, p) }).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for k in 1..n {
                    checks += 1;
                    let after = delta[(i + k) % n][(j + k) % n];
                    if delta[i][j] != after {
                        violations.push(Prop61Violation::Shift {
                            prime: p.clone(),
                            i,
                            j,
                            k,
                            before: delta[i][j],
                            after,
                        });
                    }
                }
                if (i + n - j).gcd(&n) == 1 {
                    checks += 1;
                    if delta[i][j] != delta[0][1] {
                        violations.push(Prop61Violation::Coprime {
                            prime: p.clone(),
                            i,
                            j,
                            value: delta[i][j],
                            expected: delta[0][1],
                        });
                    }
                }
            }
        }
    }
    Ok(Prop61Report {
        primes,
        skipped,
        checks,
        violations,
    })
}
