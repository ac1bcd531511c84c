//! Rational self-maps of P^1 over Q as pairs of integer binary forms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::equivalence::Mobius;
use crate::error::{Error, Result};
use crate::forms;
use crate::projline::ProjPoint;
use crate::sarith::{factor, Factorization, SPrimeSet};

/// `[F(x,y) : G(x,y)]` with joint content 1, `Res(F,G) != 0` and the first
/// nonzero coefficient of `F` then `G` positive. Coefficients are listed from
/// `x^d` down to `y^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogMap {
    f: Vec<BigInt>,
    g: Vec<BigInt>,
}

/// `num(z) / den(z)`, coefficient of `z^i` at index `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineRationalFunction {
    pub num: Vec<BigInt>,
    pub den: Vec<BigInt>,
}

impl AffineRationalFunction {
    pub fn new(num: Vec<BigInt>, den: Vec<BigInt>) -> Self {
        AffineRationalFunction { num, den }
    }
}

fn poly_degree(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

impl HomogMap {
    /// Validates and normalizes a pair of forms of equal degree.
    pub fn from_forms(f: Vec<BigInt>, g: Vec<BigInt>) -> Result<Self> {
        if f.len() != g.len() || f.len() < 2 {
            return Err(Error::MalformedForms);
        }
        if f.iter().chain(&g).all(Zero::is_zero) {
            return Err(Error::ZeroMap);
        }
        let map = HomogMap::normalized(f, g);
        if map.resultant().is_zero() {
            return Err(Error::NotLowestTerms);
        }
        Ok(map)
    }

    pub fn from_i64_forms(f: &[i64], g: &[i64]) -> Result<Self> {
        HomogMap::from_forms(
            f.iter().map(|&c| BigInt::from(c)).collect(),
            g.iter().map(|&c| BigInt::from(c)).collect(),
        )
    }

    // Content and sign normalization only. Callers guarantee a nonzero resultant.
    pub(crate) fn normalized(mut f: Vec<BigInt>, mut g: Vec<BigInt>) -> Self {
        let c = forms::content(f.iter().chain(&g));
        let negative = f
            .iter()
            .chain(&g)
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative());
        let c = if negative { -c } else { c };
        if !c.is_one() {
            for x in f.iter_mut().chain(g.iter_mut()) {
                *x = &*x / &c;
            }
        }
        HomogMap { f, g }
    }

    /// Homogenizes `num/den` at degree `max(deg num, deg den)`, sending the pole of `z` to `[1:0]`.
    pub fn from_affine(phi: &AffineRationalFunction) -> Result<Self> {
        let dn = poly_degree(&phi.num);
        let dd = poly_degree(&phi.den).ok_or(Error::ZeroMap)?;
        let d = dn.unwrap_or(0).max(dd);
        if d == 0 {
            return Err(Error::ConstantMap);
        }
        let homog = |p: &[BigInt]| -> Vec<BigInt> {
            (0..=d)
                .map(|k| p.get(d - k).cloned().unwrap_or_default())
                .collect()
        };
        let map = HomogMap::normalized(homog(&phi.num), homog(&phi.den));
        if map.resultant().is_zero() {
            return Err(Error::NotLowestTerms);
        }
        Ok(map)
    }

    /// Back to affine form, coefficient of `z^i` at index `i`, trailing zeros trimmed.
    pub fn to_affine(&self) -> AffineRationalFunction {
        let dehom = |p: &[BigInt]| -> Vec<BigInt> {
            let mut out: Vec<BigInt> = p.iter().rev().cloned().collect();
            while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
                out.pop();
            }
            out
        };
        AffineRationalFunction::new(dehom(&self.f), dehom(&self.g))
    }

    pub fn identity() -> Self {
        HomogMap {
            f: vec![BigInt::one(), BigInt::zero()],
            g: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn f(&self) -> &[BigInt] {
        &self.f
    }

    pub fn g(&self) -> &[BigInt] {
        &self.g
    }

    pub fn eval(&self, p: &ProjPoint) -> ProjPoint {
        let x = forms::eval(&self.f, p.x(), p.y());
        let y = forms::eval(&self.g, p.x(), p.y());
        ProjPoint::new(x, y).expect("nonzero resultant keeps images away from [0:0]")
    }

    /// Sylvester resultant `Res(F, G)`.
    pub fn resultant(&self) -> BigInt {
        forms::resultant(&self.f, &self.g)
    }

    /// Factorization of `|Disc(Phi)|`, which equals `|Res(F,G)|` at unit joint content.
    pub fn disc_valuations(&self) -> Result<Factorization> {
        let r = self.resultant().abs();
        factor(&r)
    }

    /// Primes of bad reduction, ascending.
    pub fn bad_primes(&self) -> Result<Vec<BigInt>> {
        Ok(self.disc_valuations()?.primes().cloned().collect())
    }

    pub fn good_reduction_at(&self, p: &BigInt) -> bool {
        !(self.resultant() % p).is_zero()
    }

    /// True iff every bad prime lies in S.
    pub fn good_reduction_outside(&self, s: &SPrimeSet) -> Result<bool> {
        Ok(self.bad_primes()?.iter().all(|p| s.contains(p)))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &HomogMap) -> HomogMap {
        let f = forms::substitute(&self.f, &inner.f, &inner.g);
        let g = forms::substitute(&self.g, &inner.f, &inner.g);
        HomogMap::normalized(f, g)
    }

    /// The `n`-th iterate, renormalized after every composition.
    pub fn iterate(&self, n: usize) -> HomogMap {
        let mut out = HomogMap::identity();
        for _ in 0..n {
            out = self.compose(&out);
        }
        out
    }

    /// `A ∘ self ∘ A^{-1}`.
    pub fn conjugate_by(&self, a: &Mobius) -> HomogMap {
        a.as_map().compose(self).compose(&a.adjugate().as_map())
    }

    /// `z + T(self(z))` for `T = (a, b; u, c)`; requires `u != 0` and `self(∞) = ∞`.
    pub fn degree_bump(&self, t: &Mobius) -> Result<HomogMap> {
        let [a, b, u, c] = t.entries();
        if u.is_zero() {
            return Err(Error::DegreeBumpZeroEntry);
        }
        if !self.g[0].is_zero() {
            return Err(Error::DegreeBumpNotFixingInfinity);
        }
        let lower = forms::add(&forms::scale(&self.f, u), &forms::scale(&self.g, c));
        let upper = forms::add(&forms::scale(&self.f, a), &forms::scale(&self.g, b));
        let num = forms::add(&forms::times_x(&lower), &forms::times_y(&upper));
        let den = forms::times_y(&lower);
        HomogMap::from_forms(num, den)
    }
}

/// Free-function form of [`HomogMap::compose`]: `outer ∘ inner`.
pub fn compose(outer: &HomogMap, inner: &HomogMap) -> HomogMap {
    outer.compose(inner)
}

pub fn mobius_conjugate(a: &Mobius, phi: &HomogMap) -> HomogMap {
    phi.conjugate_by(a)
}

pub fn degree_bump(t: &Mobius, phi: &HomogMap) -> Result<HomogMap> {
    phi.degree_bump(t)
}

impl fmt::Display for HomogMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::format_map(self))
    }
}
