//! Points of P^1(Q), p-adic logarithmic distance, ideals between points,
//! good reduction of tuples, cross-ratio and the discriminant of a tuple's form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::sarith::{factor, split_s_part, vp_int, Rational, SIdeal, SPrimeSet};

/// A point `[x:y]` with coprime integer coordinates, `y > 0` or `[1:0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    x: BigInt,
    y: BigInt,
}

impl ProjPoint {
    /// Normalizes any nonzero coordinate pair.
    pub fn new(x: BigInt, y: BigInt) -> Result<Self> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::InvalidPoint("[0:0]".into()));
        }
        let g = x.gcd(&y);
        let (mut x, mut y) = (x / &g, y / &g);
        if y.is_negative() || (y.is_zero() && x.is_negative()) {
            x = -x;
            y = -y;
        }
        Ok(ProjPoint { x, y })
    }

    pub fn from_ints(x: i64, y: i64) -> Result<Self> {
        ProjPoint::new(BigInt::from(x), BigInt::from(y))
    }

    pub fn from_rational(q: &Rational) -> Self {
        ProjPoint {
            x: q.numer().clone(),
            y: q.denom().clone(),
        }
    }

    pub fn infinity() -> Self {
        ProjPoint {
            x: BigInt::one(),
            y: BigInt::zero(),
        }
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// Affine coordinate `x/y`, `None` at infinity.
    pub fn affine(&self) -> Option<Rational> {
        (!self.is_infinity()).then(|| Rational::new(self.x.clone(), self.y.clone()))
    }

    /// Largest coordinate magnitude.
    pub fn height(&self) -> BigInt {
        self.x.abs().max(self.y.abs())
    }

    /// Reduction modulo `p` as a point of P^1(F_p): `[1:0]`-style canonical pair of residues.
    pub fn reduce_mod(&self, p: &BigInt) -> (BigInt, BigInt) {
        let x = self.x.mod_floor(p);
        let y = self.y.mod_floor(p);
        if y.is_zero() {
            return (BigInt::one(), BigInt::zero());
        }
        // scale so that y == 1
        let inv = mod_inverse(&y, p).expect("coprime coordinates reduce to a nonzero vector");
        ((x * inv).mod_floor(p), BigInt::one())
    }

    /// Affine text `a`, `a/b` or `inf`.
    pub fn to_affine_string(&self) -> String {
        match self.affine() {
            None => "inf".into(),
            Some(q) if q.denom().is_one() => q.numer().to_string(),
            Some(q) => format!("{}/{}", q.numer(), q.denom()),
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.x, self.y)
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// `x_P y_Q - x_Q y_P` on canonical coordinates.
pub fn cross_det(p: &ProjPoint, q: &ProjPoint) -> BigInt {
    &p.x * &q.y - &q.x * &p.y
}

/// A value of the p-adic logarithmic distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DeltaValue {
    Finite(u64),
    Infinite,
}

impl DeltaValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            DeltaValue::Finite(v) => Some(v),
            DeltaValue::Infinite => None,
        }
    }
}

impl fmt::Display for DeltaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaValue::Finite(v) => write!(f, "{v}"),
            DeltaValue::Infinite => write!(f, "inf"),
        }
    }
}

/// `delta_p(P, Q) = v_p(x_P y_Q - x_Q y_P)` for coprime coordinates; infinite iff `P = Q`.
pub fn delta_p(p_pt: &ProjPoint, q_pt: &ProjPoint, p: &BigInt) -> DeltaValue {
    let d = cross_det(p_pt, q_pt);
    if d.is_zero() {
        DeltaValue::Infinite
    } else {
        DeltaValue::Finite(vp_int(&d, p))
    }
}

/// The ideal `prod_{p not in S} p^delta_p(P,Q)` of Z_S.
pub fn ideal_between(p_pt: &ProjPoint, q_pt: &ProjPoint, s: &SPrimeSet) -> Result<SIdeal> {
    let d = cross_det(p_pt, q_pt);
    if d.is_zero() {
        return Err(Error::IdealOfEqualPoints);
    }
    Ok(SIdeal::from_integer(&d, s))
}

pub(crate) fn ensure_distinct(points: &[ProjPoint]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(Error::RepeatedPoint(p.to_string()));
        }
    }
    Ok(())
}

/// Outcome of a good-reduction test on a tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleReduction {
    pub good: bool,
    /// One offending index pair for each bad prime, primes ascending.
    pub witnesses: Vec<(BigInt, (usize, usize))>,
}

/// A tuple has good reduction outside S iff all pairwise cross-determinants are S-units.
pub fn tuple_good_reduction(points: &[ProjPoint], s: &SPrimeSet) -> Result<TupleReduction> {
    ensure_distinct(points)?;
    let mut witnesses: BTreeMap<BigInt, (usize, usize)> = BTreeMap::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let (_, rest) = split_s_part(&cross_det(&points[i], &points[j]), s);
            if rest.is_one() {
                continue;
            }
            let f = factor(&rest)?;
            for p in f.primes() {
                witnesses.entry(p.clone()).or_insert((i, j));
            }
        }
    }
    Ok(TupleReduction {
        good: witnesses.is_empty(),
        witnesses: witnesses.into_iter().collect(),
    })
}

/// A finite cross-ratio or the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrossRatio {
    Finite(Rational),
    Infinite,
}

/// `(x1y3 - x3y1)(x2y4 - x4y2) / ((x1y2 - x2y1)(x3y4 - x4y3))`.
pub fn cross_ratio(
    p1: &ProjPoint,
    p2: &ProjPoint,
    p3: &ProjPoint,
    p4: &ProjPoint,
) -> Result<CrossRatio> {
    ensure_distinct(&[p1.clone(), p2.clone(), p3.clone(), p4.clone()])?;
    let num = cross_det(p1, p3) * cross_det(p2, p4);
    let den = cross_det(p1, p2) * cross_det(p3, p4);
    Ok(if den.is_zero() {
        CrossRatio::Infinite
    } else {
        CrossRatio::Finite(Rational::new(num, den))
    })
}

/// `prod_{i<j} (x_i y_j - x_j y_i)^2`, the discriminant of `prod (x_i X - y_i Y)`.
pub fn tuple_form_discriminant(points: &[ProjPoint]) -> Result<BigInt> {
    ensure_distinct(points)?;
    let mut d = BigInt::one();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let c = cross_det(&points[i], &points[j]);
            d *= &c * &c;
        }
    }
    Ok(d)
}
