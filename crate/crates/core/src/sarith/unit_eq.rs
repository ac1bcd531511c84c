//! Bounded exhaustive solving of `a_1 x_1 + ... + a_k x_k = 1` in S-units, k in {2, 3}.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{enumerate_s_units, s_unit_exponents, Rational, SPrimeSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitSolution {
    pub values: Vec<Rational>,
    /// Some nonempty proper subsum `sum a_i x_i` vanishes.
    pub degenerate: bool,
}

/// Every solution with all exponents in `[-max_exp, max_exp]`. Completeness
/// holds relative to that box only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitEquationSolutions {
    pub coefficients: Vec<Rational>,
    pub max_exp: u32,
    pub solutions: Vec<UnitSolution>,
}

impl UnitEquationSolutions {
    pub fn nondegenerate(&self) -> impl Iterator<Item = &UnitSolution> {
        self.solutions.iter().filter(|s| !s.degenerate)
    }
}

/// Upper bound `3 * 7^(1 + 2s)` on the number of solutions of a two-term
/// equation over Q, `s` counting places.
pub fn evertse_bound(place_count: usize) -> BigInt {
    BigInt::from(3) * num_traits::pow(BigInt::from(7), 1 + 2 * place_count)
}

fn in_box(x: &Rational, s: &SPrimeSet, max_exp: u32) -> bool {
    s_unit_exponents(x, s)
        .is_some_and(|e| e.iter().all(|v| v.unsigned_abs() <= max_exp as u64))
}

fn has_vanishing_subsum(coeffs: &[Rational], values: &[Rational]) -> bool {
    let k = coeffs.len();
    let terms: Vec<Rational> = coeffs.iter().zip(values).map(|(a, x)| a * x).collect();
    (1u32..(1 << k) - 1).any(|mask| {
        let sum: Rational = (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| terms[i].clone())
            .sum();
        sum.is_zero()
    })
}

pub fn solve_unit_eq(
    coeffs: &[Rational],
    s: &SPrimeSet,
    max_exp: u32,
) -> Result<UnitEquationSolutions> {
    if !(2..=3).contains(&coeffs.len()) || coeffs.iter().any(Zero::is_zero) {
        return Err(Error::UnitEquationShape);
    }
    let units = enumerate_s_units(s, max_exp);
    let last = coeffs.last().unwrap();
    let mut solutions = Vec::new();
    let mut push = |mut values: Vec<Rational>, partial: Rational| {
        let x = (Rational::one() - partial) / last;
        if in_box(&x, s, max_exp) {
            values.push(x);
            let degenerate = has_vanishing_subsum(coeffs, &values);
            solutions.push(UnitSolution { values, degenerate });
        }
    };
    match coeffs.len() {
        2 => {
            for x1 in &units {
                push(vec![x1.clone()], &coeffs[0] * x1);
            }
        }
        _ => {
            for x1 in &units {
                let t1 = &coeffs[0] * x1;
                for x2 in &units {
                    push(vec![x1.clone(), x2.clone()], &t1 + &coeffs[1] * x2);
                }
            }
        }
    }
    Ok(UnitEquationSolutions {
        coefficients: coeffs.to_vec(),
        max_exp,
        solutions,
    })
}
