//! An explicit infinite family of degree-4 maps with good reduction outside
//! `{2}` and 3-cycles whose ideals `2^{2n} - 2^n + 1` run through infinitely many primes.
//!
//! `U(z) = 1/(1 - z)` has order 3 and `Ψ` is invariant under it. For a
//! parameter `u`, the matrix `H(u)` kills `Ψ` on the triple
//! `(u/(u-1), -(u-1), 1/u)`, so `Ψ₁ = z + H∘Ψ` fixes the triple and
//! `Φ = U∘Ψ₁` permutes it cyclically. The map `Φ` has good reduction outside S
//! exactly when `u` is an S-unit.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::dynamics::{verify_cycle, Cycle};
use crate::equivalence::Mobius;
use crate::error::{Error, Result};
use crate::projline::{ideal_between, ProjPoint};
use crate::ratmap::{AffineRationalFunction, HomogMap};
use crate::sarith::{factor_with_budget, is_s_unit, Factorization, Rational, SIdeal, SPrimeSet, DEFAULT_FACTOR_BUDGET};

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

/// `U(z) = 1/(1 - z)`.
pub fn build_u() -> HomogMap {
    HomogMap::from_affine(&AffineRationalFunction::new(ints(&[1]), ints(&[1, -1])))
        .expect("coprime")
}

pub fn u_matrix() -> Mobius {
    Mobius::from_i64(0, 1, -1, 1).expect("determinant one")
}

/// `Ψ(z) = (z + 1)(2z - 1)(z - 2) / (2z(z - 1))`.
pub fn build_psi() -> HomogMap {
    HomogMap::from_affine(&AffineRationalFunction::new(
        ints(&[2, -3, -3, 2]),
        ints(&[0, -2, 2]),
    ))
    .expect("coprime")
}

fn poly(u: &Rational, coeffs: &[i64]) -> Rational {
    // coefficients from the constant term up
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, &c| acc * u + Rational::from_integer(c.into()))
}

fn check_parameter(u: &Rational) -> Result<()> {
    if u.is_zero() || u.is_one() {
        return Err(Error::DegenerateParameter(crate::sarith::format_rational(u)));
    }
    Ok(())
}

/// `H(z) = ((4u² - 4u) z + 4u³ - 6u² - 6u + 4) / (2u z + 4u² + u - 2)`, determinant `8u⁴`.
pub fn build_h(u: &Rational) -> Result<Mobius> {
    check_parameter(u)?;
    Mobius::from_rationals(
        &poly(u, &[0, -4, 4]),
        &poly(u, &[4, -6, -6, 4]),
        &poly(u, &[0, 2]),
        &poly(u, &[-2, 1, 4]),
    )
}

// H∘Ψ written out: numerator and denominator coefficients from z^3 down.
fn h_psi_expected(u: &Rational) -> HomogMap {
    let num = [
        poly(u, &[0, -2, 2]),
        poly(u, &[2, 0, -6, 2]),
        poly(u, &[-2, 6, 0, -2]),
        poly(u, &[0, -2, 2]),
    ];
    let den = [
        poly(u, &[0, 1]),
        poly(u, &[-1, -1, 2]),
        poly(u, &[1, -2, -2]),
        poly(u, &[0, 1]),
    ];
    let l = num.iter().chain(&den).fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let scale = |q: &Rational| (q * Rational::from_integer(l.clone())).to_integer();
    HomogMap::normalized(num.iter().map(scale).collect(), den.iter().map(scale).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub u: Rational,
    pub s: SPrimeSet,
    pub u_map: HomogMap,
    pub psi: HomogMap,
    pub h: Mobius,
    pub psi1: HomogMap,
    pub phi: HomogMap,
    /// `(u/(u-1), -(u-1), 1/u)`.
    pub triple: [ProjPoint; 3],
    pub ideal1: SIdeal,
    pub ideal2: SIdeal,
    pub good_reduction: bool,
    /// The certified 3-cycle, present exactly when `Φ` has good reduction outside S.
    pub cycle: Option<Cycle>,
}

/// Builds every map of the construction and checks each intermediate identity.
/// With `strict`, a parameter that is not an S-unit is rejected up front.
pub fn build_family(u: &Rational, s: &SPrimeSet, strict: bool) -> Result<FamilyInstance> {
    check_parameter(u)?;
    if strict && !is_s_unit(u, s) {
        return Err(Error::ParameterNotUnit);
    }
    let fail = |what: &str| Error::FamilyCheck(what.to_string());
    let u_map = build_u();
    let psi = build_psi();
    let h = build_h(u)?;
    if h.as_map().compose(&psi) != h_psi_expected(u) {
        return Err(fail("H∘Ψ differs from its expanded form"));
    }
    let psi1 = psi.degree_bump(&h)?;
    let phi = u_map.compose(&psi1);
    if psi1.degree() != 4 || phi.degree() != 4 {
        return Err(fail("degree is not 4"));
    }
    let one = Rational::one();
    let triple = [
        ProjPoint::from_rational(&(u / (u - &one))),
        ProjPoint::from_rational(&(&one - u)),
        ProjPoint::from_rational(&(&one / u)),
    ];
    let zero = ProjPoint::from_ints(0, 1)?;
    for (i, p) in triple.iter().enumerate() {
        if h.apply(&psi.eval(p)) != zero {
            return Err(fail("H∘Ψ does not vanish on the triple"));
        }
        if &psi1.eval(p) != p {
            return Err(fail("Ψ₁ does not fix the triple"));
        }
        if phi.eval(p) != triple[(i + 1) % 3] {
            return Err(fail("Φ does not permute the triple"));
        }
    }
    let good_reduction = phi.good_reduction_outside(s)?;
    let cycle = if good_reduction {
        Some(verify_cycle(&phi, &triple, s)?)
    } else {
        None
    };
    let ideal1 = ideal_between(&triple[0], &triple[1], s)?;
    let ideal2 = ideal_between(&triple[0], &triple[2], s)?;
    Ok(FamilyInstance {
        u: u.clone(),
        s: s.clone(),
        u_map,
        psi,
        h,
        psi1,
        phi,
        triple,
        ideal1,
        ideal2,
        good_reduction,
        cycle,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub n: u32,
    /// `2^{2n} - 2^n + 1`.
    pub generator: BigInt,
    /// `None` when factoring ran out of budget.
    pub factorization: Option<Factorization>,
    /// Distinct primes seen in rows `1..=n`.
    pub cumulative_primes: usize,
    /// Whether the first ideal of the family at `u = 2^n` equals `generator`.
    pub matches_family: bool,
}

pub fn ideal_census(n_max: u32) -> Result<Vec<CensusRow>> {
    ideal_census_with_budget(n_max, DEFAULT_FACTOR_BUDGET)
}

pub fn ideal_census_with_budget(n_max: u32, budget: u64) -> Result<Vec<CensusRow>> {
    let s = SPrimeSet::new([2])?;
    let mut seen = BTreeSet::new();
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let p = BigInt::one() << n;
        let generator = &p * &p - &p + 1u32;
        let factorization = factor_with_budget(&generator, budget).ok();
        if let Some(f) = &factorization {
            seen.extend(f.primes().cloned());
        }
        let fam = build_family(&Rational::from_integer(p), &s, true)?;
        rows.push(CensusRow {
            n,
            matches_family: fam.ideal1.generator() == &generator && fam.ideal2 == fam.ideal1,
            generator,
            factorization,
            cumulative_primes: seen.len(),
        });
    }
    Ok(rows)
}
