//! Möbius transformations, PGL2(Z_S) membership and equivalence of ordered tuples.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dynamics::Cycle;
use crate::error::{Error, Result};
use crate::forms;
use crate::projline::{cross_det, ensure_distinct, ideal_between, mod_inverse, ProjPoint};
use crate::ratmap::HomogMap;
use crate::sarith::{split_s_part, Rational, SPrimeSet};

/// Largest subgroup of `(Z/A)*` explored when deciding two-point equivalence.
pub const DEFAULT_SUBGROUP_CAP: usize = 2_000_000;

/// `z -> (az + b)/(cz + d)` as a primitive integer matrix whose first nonzero entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mobius {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Mobius {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let g = forms::content([&a, &b, &c, &d]);
        let neg = [&a, &b, &c, &d]
            .into_iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative());
        let g = if neg { -g } else { g };
        Ok(Mobius {
            a: a / &g,
            b: b / &g,
            c: c / &g,
            d: d / &g,
        })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Mobius::new(a.into(), b.into(), c.into(), d.into())
    }

    /// Clears denominators of a rational matrix.
    pub fn from_rationals(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<Self> {
        let l = [a, b, c, d]
            .iter()
            .fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let scaled = |q: &Rational| (q * Rational::from_integer(l.clone())).to_integer();
        Mobius::new(scaled(a), scaled(b), scaled(c), scaled(d))
    }

    pub fn identity() -> Self {
        Mobius {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    /// `[a, b, c, d]`.
    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let x = &self.a * p.x() + &self.b * p.y();
        let y = &self.c * p.x() + &self.d * p.y();
        ProjPoint::new(x, y).expect("invertible matrix")
    }

    /// Matrix product `self * rhs`, acting as `rhs` first.
    pub fn mul(&self, rhs: &Mobius) -> Mobius {
        Mobius::new(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
        .expect("product of invertible matrices")
    }

    /// The adjugate, which is the inverse in PGL2.
    pub fn adjugate(&self) -> Mobius {
        Mobius::new(self.d.clone(), -&self.b, -&self.c, self.a.clone()).expect("invertible matrix")
    }

    pub fn as_map(&self) -> HomogMap {
        HomogMap::normalized(
            vec![self.a.clone(), self.b.clone()],
            vec![self.c.clone(), self.d.clone()],
        )
    }

    /// Membership in PGL2(Z_S).
    ///
    /// A class in PGL2(Q) lies in PGL2(Z_S) iff some representative `λM` has
    /// S-integral entries and S-unit determinant. Take `M` primitive. For
    /// `p ∉ S`, integrality of `λM` at `p` forces `v_p(λ) ≥ 0` because some
    /// entry of `M` is a `p`-unit, and `v_p(det λM) = 2 v_p(λ) + v_p(det M)` must
    /// vanish. Both terms are nonnegative, so `v_p(det M) = 0`. Conversely, if
    /// `det M` has no prime factor outside S then `M` itself is a witness.
    pub fn in_pgl2_zs(&self, s: &SPrimeSet) -> bool {
        let (_, rest) = split_s_part(&self.det(), s);
        rest.is_one()
    }
}

pub fn in_pgl2_zs(m: &Mobius, s: &SPrimeSet) -> bool {
    m.in_pgl2_zs(s)
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

// Sends [1:0], [0:1], [1:1] to v1, v2, v3.
fn frame(v: &[ProjPoint; 3]) -> Result<Mobius> {
    ensure_distinct(v)?;
    let s1 = cross_det(&v[2], &v[1]);
    let s2 = cross_det(&v[0], &v[2]);
    Mobius::new(
        &s1 * v[0].x(),
        &s2 * v[1].x(),
        &s1 * v[0].y(),
        &s2 * v[1].y(),
    )
}

/// The unique Möbius transformation sending `src[i]` to `dst[i]`.
pub fn mobius_from_three_points(src: &[ProjPoint; 3], dst: &[ProjPoint; 3]) -> Result<Mobius> {
    Ok(frame(dst)?.mul(&frame(src)?.adjugate()))
}

fn bezout(p: &ProjPoint) -> (BigInt, BigInt) {
    let e = p.x().extended_gcd(p.y());
    if e.gcd.is_negative() {
        (-e.x, -e.y)
    } else {
        (e.x, e.y)
    }
}

/// Determinant-one matrix `((r_x, r_y), (-y, x))` with `x r_x + y r_y = 1`, sending `P` to `[1:0]`.
pub fn point_to_infinity(p: &ProjPoint) -> Mobius {
    let (rx, ry) = bezout(p);
    Mobius::new(rx, ry, -p.y(), p.x().clone()).expect("determinant one")
}

// GL2(Z) matrix sending P to [0:1].
fn point_to_zero(p: &ProjPoint) -> Mobius {
    let (rx, ry) = bezout(p);
    Mobius::new(-p.y(), p.x().clone(), rx, ry).expect("determinant minus one")
}

fn ideal_table(points: &[ProjPoint], s: &SPrimeSet) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            out.push(ideal_between(&points[i], &points[j], s)?.generator().clone());
        }
    }
    Ok(out)
}

/// Decides whether some `A` in PGL2(Z_S) maps `ta[i]` to `tb[i]` for every `i`, returning a witness.
pub fn tuples_equivalent(
    ta: &[ProjPoint],
    tb: &[ProjPoint],
    s: &SPrimeSet,
) -> Result<Option<Mobius>> {
    tuples_equivalent_with_cap(ta, tb, s, DEFAULT_SUBGROUP_CAP)
}

pub fn tuples_equivalent_with_cap(
    ta: &[ProjPoint],
    tb: &[ProjPoint],
    s: &SPrimeSet,
    cap: usize,
) -> Result<Option<Mobius>> {
    if ta.len() != tb.len() {
        return Err(Error::LengthMismatch(ta.len(), tb.len()));
    }
    ensure_distinct(ta)?;
    ensure_distinct(tb)?;
    if ideal_table(ta, s)? != ideal_table(tb, s)? {
        return Ok(None);
    }
    let witness = match ta.len() {
        0 => Some(Mobius::identity()),
        1 => Some(point_to_infinity(&tb[0]).adjugate().mul(&point_to_infinity(&ta[0]))),
        2 => two_point_witness(ta, tb, s, cap)?,
        _ => {
            let m = mobius_from_three_points(
                &[ta[0].clone(), ta[1].clone(), ta[2].clone()],
                &[tb[0].clone(), tb[1].clone(), tb[2].clone()],
            )?;
            let agrees = ta[3..].iter().zip(&tb[3..]).all(|(p, q)| &m.apply(p) == q);
            (agrees && m.in_pgl2_zs(s)).then_some(m)
        }
    };
    if let Some(m) = &witness {
        debug_assert!(m.in_pgl2_zs(s));
        debug_assert!(ta.iter().zip(tb).all(|(p, q)| &m.apply(p) == q));
    }
    Ok(witness)
}

// Move both first points to [0:1]. The stabilizer of [0:1] in PGL2(Z_S) is
// ((α, 0), (γ, δ)) with α, δ S-units. With the second points at [a:b] and
// [a':b'], equivalence holds iff a and a' share their coprime part A and
// b'/b mod A lies in the subgroup of (Z/A)* generated by -1 and S.
fn two_point_witness(
    ta: &[ProjPoint],
    tb: &[ProjPoint],
    s: &SPrimeSet,
    cap: usize,
) -> Result<Option<Mobius>> {
    let kp = point_to_zero(&ta[0]);
    let kq = point_to_zero(&tb[0]);
    let p1 = kp.apply(&ta[1]);
    let q1 = kq.apply(&tb[1]);
    let (a, b) = (p1.x(), p1.y());
    let (a2, b2) = (q1.x(), q1.y());
    let (_, big_a) = split_s_part(a, s);
    let (_, big_a2) = split_s_part(a2, s);
    if big_a != big_a2 {
        return Ok(None);
    }
    let delta = if big_a.is_one() {
        Rational::one()
    } else {
        let target = (b2 * mod_inverse(b, &big_a).expect("coprime coordinates")).mod_floor(&big_a);
        match subgroup_element(&big_a, &target, s, cap)? {
            Some(d) => d,
            None => return Ok(None),
        }
    };
    let q = |n: &BigInt| Rational::from_integer(n.clone());
    let stab = Mobius::from_rationals(
        &q(a2),
        &Rational::zero(),
        &(q(b2) - &delta * q(b)),
        &(&delta * q(a)),
    )?;
    let m = kq.adjugate().mul(&stab).mul(&kp);
    Ok(Some(m))
}

// Breadth-first search of <-1, S> in (Z/m)*. Returns the S-unit
// ±prod p^e (exponents of either sign) reached first whose residue is target.
fn subgroup_element(
    m: &BigInt,
    target: &BigInt,
    s: &SPrimeSet,
    cap: usize,
) -> Result<Option<Rational>> {
    // (residue, sign flip, prime index, exponent step)
    let mut gens: Vec<(BigInt, bool, usize, i64)> = vec![(m - 1u32, true, 0, 0)];
    for (i, &p) in s.primes().iter().enumerate() {
        let p = BigInt::from(p);
        if let Some(inv) = mod_inverse(&p, m) {
            gens.push((p.mod_floor(m), false, i, 1));
            gens.push((inv, false, i, -1));
        }
    }
    let start = BigInt::one().mod_floor(m);
    let mut parent: HashMap<BigInt, Option<(BigInt, usize)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    let mut found = parent.contains_key(target);
    while let Some(r) = queue.pop_front() {
        if found {
            break;
        }
        for (gi, (g, ..)) in gens.iter().enumerate() {
            let next = (&r * g).mod_floor(m);
            if parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= cap {
                return Err(Error::EquivalenceBudget {
                    modulus: m.to_string(),
                });
            }
            parent.insert(next.clone(), Some((r.clone(), gi)));
            if &next == target {
                found = true;
                break;
            }
            queue.push_back(next);
        }
    }
    if !found {
        return Ok(None);
    }
    let mut negative = false;
    let mut exps = vec![0i64; s.len()];
    let mut cur = target.clone();
    while let Some(Some((prev, gi))) = parent.get(&cur) {
        let (_, flip, i, step) = &gens[*gi];
        if *flip {
            negative = !negative;
        } else {
            exps[*i] += step;
        }
        cur = prev.clone();
    }
    let mut unit = Rational::one();
    for (&p, &e) in s.primes().iter().zip(&exps) {
        unit *= Rational::from_integer(BigInt::from(p)).pow(e as i32);
    }
    Ok(Some(if negative { -unit } else { unit }))
}

/// One equivalence class: indices into the input, ascending, and the least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClass {
    pub representative: Vec<ProjPoint>,
    pub members: Vec<usize>,
}

/// Partitions tuples under PGL2(Z_S). Classes are ordered by representative,
/// which is the lexicographically least member.
pub fn classify_tuples(tuples: &[Vec<ProjPoint>], s: &SPrimeSet) -> Result<Vec<EquivalenceClass>> {
    let mut order: Vec<usize> = (0..tuples.len()).collect();
    order.sort_by(|&i, &j| tuples[i].cmp(&tuples[j]).then(i.cmp(&j)));
    let mut classes: Vec<EquivalenceClass> = Vec::new();
    for i in order {
        let t = &tuples[i];
        let mut home = None;
        for (k, c) in classes.iter().enumerate() {
            if c.representative.len() == t.len()
                && tuples_equivalent(&c.representative, t, s)?.is_some()
            {
                home = Some(k);
                break;
            }
        }
        match home {
            Some(k) => classes[k].members.push(i),
            None => classes.push(EquivalenceClass {
                representative: t.clone(),
                members: vec![i],
            }),
        }
    }
    for c in &mut classes {
        c.members.sort_unstable();
    }
    Ok(classes)
}

pub fn classify(cycles: &[Cycle], s: &SPrimeSet) -> Result<Vec<EquivalenceClass>> {
    let tuples: Vec<Vec<ProjPoint>> = cycles.iter().map(|c| c.points().to_vec()).collect();
    classify_tuples(&tuples, s)
}
