use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Cycle;
use crate::equivalence::Mobius;
use crate::error::{Error, Result};
use crate::projline::{cross_det, delta_p, DeltaValue, ProjPoint};
use crate::sarith::{
    factor, format_rational, is_s_integer, is_s_unit, split_s_part, Rational, SIdeal, SPrimeSet,
};

/// Cross-determinant ratios of a cycle `P_0, ..., P_{n-1}`, indices mod n.
///
/// `C_i = det(P_0, P_i) / det(P_0, P_1)`, `u_{j,j+i} = det(P_j, P_{j+i}) / det(P_0, P_i)`
/// and `L_{i,j} = det(P_0, P_{ij}) / det(P_0, P_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleLedger {
    pub s: SPrimeSet,
    pub n: usize,
    /// `c[i] = C_i` for `0 <= i < n`, with `C_0 = 0`.
    pub c: Vec<Rational>,
    /// `units[j][i - 1] = u_{j,j+i}` for `0 <= j < n`, `1 <= i < n`.
    pub units: Vec<Vec<Rational>>,
    /// `l[i - 1][j - 1] = L_{i,j}` for `1 <= i, j < n`.
    pub l: Vec<Vec<Rational>>,
    /// `ideals[i - 1]` generates `I_i`, the part of `det(P_0, P_i)` prime to S.
    pub ideals: Vec<SIdeal>,
    /// `reduced_ideals[i - 1] = I_i / I_1`.
    pub reduced_ideals: Vec<SIdeal>,
}

impl CycleLedger {
    pub fn unit(&self, j: usize, i: usize) -> &Rational {
        &self.units[j % self.n][i - 1]
    }

    pub fn l(&self, i: usize, j: usize) -> &Rational {
        &self.l[i - 1][j - 1]
    }
}

fn det(c: &Cycle, i: usize, j: usize) -> BigInt {
    cross_det(c.point(i), c.point(j))
}

fn ratio(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}

fn violation(equation: &'static str, detail: String) -> Error {
    Error::LedgerViolation { equation, detail }
}

/// Builds the ledger and checks every identity it is expected to satisfy for a
/// cycle of a map with good reduction outside S.
pub fn cycle_ledger(cycle: &Cycle, s: &SPrimeSet) -> Result<CycleLedger> {
    let n = cycle.len();
    if n < 2 {
        return Err(Error::CycleTooShort { min: 2 });
    }
    let d01 = det(cycle, 0, 1);
    let c: Vec<Rational> = (0..n).map(|i| ratio(det(cycle, 0, i), d01.clone())).collect();
    let units: Vec<Vec<Rational>> = (0..n)
        .map(|j| (1..n).map(|i| ratio(det(cycle, j, j + i), det(cycle, 0, i))).collect())
        .collect();
    let l: Vec<Vec<Rational>> = (1..n)
        .map(|i| (1..n).map(|j| ratio(det(cycle, 0, i * j), det(cycle, 0, j))).collect())
        .collect();
    let ideals: Vec<SIdeal> = (1..n).map(|i| SIdeal::from_integer(&det(cycle, 0, i), s)).collect();

    if !c[1].is_one() {
        return Err(violation("C_1", format_rational(&c[1])));
    }
    for (i, ci) in c.iter().enumerate().skip(1) {
        if !is_s_integer(ci, s) {
            return Err(violation("C_i", format!("C_{i} = {}", format_rational(ci))));
        }
    }
    for (j, row) in units.iter().enumerate() {
        for (k, u) in row.iter().enumerate() {
            if !is_s_unit(u, s) {
                let i = k + 1;
                return Err(violation(
                    "f",
                    format!("u_{{{j},{}}} = {}", (j + i) % n, format_rational(u)),
                ));
            }
        }
    }
    let mut reduced_ideals = Vec::new();
    for (k, ideal) in ideals.iter().enumerate() {
        let i = k + 1;
        let q = ideals[0]
            .quotient_of(ideal)
            .ok_or_else(|| violation("I_i", format!("I_1 = {} does not divide I_{i} = {ideal}", ideals[0])))?;
        if i.gcd(&n) == 1 && !q.is_unit() {
            return Err(violation("I_i", format!("I_{i} = {ideal} differs from I_1 with gcd({i},{n}) = 1")));
        }
        reduced_ideals.push(q);
    }
    for i in 1..n {
        for j in i + 1..n {
            if i.gcd(&j) != 1 {
                continue;
            }
            let g = c[i].numer().gcd(c[j].numer());
            let (_, rest) = split_s_part(&g, s);
            if !rest.is_one() {
                return Err(violation("mN", format!("C_{i} and C_{j} share {rest}")));
            }
        }
    }
    for i in 1..n {
        for j in 1..n {
            let lij = &l[i - 1][j - 1];
            if !is_s_integer(lij, s) {
                return Err(violation("L_{i,j}", format!("L_{{{i},{j}}} = {}", format_rational(lij))));
            }
            if lij * &c[j] != &l[j - 1][i - 1] * &c[i] {
                return Err(violation("L_{i,j}", format!("L_{{{i},{j}}} C_{j} != L_{{{j},{i}}} C_{i}")));
            }
        }
    }
    if n % 2 == 1 && n >= 3 && !is_s_unit(&c[2], s) {
        return Err(violation("C_2", format!("C_2 = {} is not an S-unit", format_rational(&c[2]))));
    }
    Ok(CycleLedger {
        s: s.clone(),
        n,
        c,
        units,
        l,
        ideals,
        reduced_ideals,
    })
}

/// A cycle moved to `[0:1], [1:0], [D_2:1], ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedTuple {
    pub points: Vec<ProjPoint>,
    /// Sends `P_0` to `[0:1]` and `P_1` to `[1:0]`.
    pub a: Mobius,
    /// Diagonal S-unit matrix sending the third point to `[D_2:1]`; identity when `n = 2`.
    pub u: Mobius,
    /// Prime-to-S part of `C_2`, or 1 when `n = 2`.
    pub d2: BigInt,
}

/// Applies `A = (1/D) ((-y_0, x_0), (y_1, -x_1))`, `D = x_0 y_1 - x_1 y_0`, then
/// the diagonal unit matrix, and checks the transformed coordinates against the ledger.
pub fn normalized_tuple(cycle: &Cycle, s: &SPrimeSet) -> Result<NormalizedTuple> {
    let n = cycle.len();
    if n < 2 {
        return Err(Error::CycleTooShort { min: 2 });
    }
    let ledger = cycle_ledger(cycle, s)?;
    let (p0, p1) = (cycle.point(0), cycle.point(1));
    let d = Rational::from_integer(det(cycle, 0, 1));
    let q = |x: &BigInt| Rational::from_integer(x.clone());
    let a_rat = [
        -q(p0.y()) / &d,
        q(p0.x()) / &d,
        q(p1.y()) / &d,
        -q(p1.x()) / &d,
    ];
    let bar: Vec<(Rational, Rational)> = cycle
        .points()
        .iter()
        .map(|p| {
            (
                &a_rat[0] * q(p.x()) + &a_rat[1] * q(p.y()),
                &a_rat[2] * q(p.x()) + &a_rat[3] * q(p.y()),
            )
        })
        .collect();

    // x̄_k = C_k and ȳ_k = -C_{k-1} u_{1,k}
    for (k, (xb, yb)) in bar.iter().enumerate() {
        if xb != &ledger.c[k] {
            return Err(violation("nc", format!("x̄_{k} != C_{k}")));
        }
        if k >= 2 && yb != &(-&ledger.c[k - 1] * ledger.unit(1, k - 1)) {
            return Err(violation("nc", format!("ȳ_{k} != -C_{} u_{{1,{k}}}", k - 1)));
        }
    }
    for j in 0..n {
        for i in 1..n {
            let (xj, yj) = &bar[j];
            let (xk, yk) = &bar[(j + i) % n];
            let lhs = xj * yk - xk * yj;
            let rhs = -&ledger.c[i] * ledger.unit(j, i);
            if lhs != rhs {
                return Err(violation("C_{j-i}", format!("j = {j}, i = {i}")));
            }
        }
    }

    let a = Mobius::from_rationals(&a_rat[0], &a_rat[1], &a_rat[2], &a_rat[3])?;
    let moved: Vec<ProjPoint> = cycle.points().iter().map(|p| a.apply(p)).collect();

    let mut support = BTreeSet::new();
    for i in 1..n {
        support.extend(factor(&det(cycle, 0, i))?.primes().cloned());
    }
    for p in support.iter().filter(|p| !s.contains(p)) {
        let base = finite(delta_p(p0, p1, p));
        for i in 1..n {
            let lhs = finite(delta_p(&moved[0], &moved[i], p));
            let rhs = finite(delta_p(p0, cycle.point(i), p)) as i64 - base as i64;
            if lhs as i64 != rhs {
                return Err(violation("d", format!("p = {p}, i = {i}: {lhs} != {rhs}")));
            }
        }
    }

    let (u, d2) = if n >= 3 {
        let c2 = &ledger.c[2];
        let (_, d2) = split_s_part(c2.numer(), s);
        let u12 = ledger.unit(1, 1);
        let unit = Rational::from_integer(d2.clone()) * u12 * u12 / c2;
        let u = Mobius::from_rationals(&unit, &Rational::zero(), &Rational::zero(), &-u12)?;
        (u, d2)
    } else {
        (Mobius::identity(), BigInt::one())
    };
    let points: Vec<ProjPoint> = moved.iter().map(|p| u.apply(p)).collect();
    if n >= 3 {
        debug_assert_eq!(points[2], ProjPoint::new(d2.clone(), BigInt::one())?);
        debug_assert!(u.in_pgl2_zs(s) && d2.is_positive());
    }
    Ok(NormalizedTuple { points, a, u, d2 })
}

fn finite(d: DeltaValue) -> u64 {
    d.finite().expect("distinct points")
}
