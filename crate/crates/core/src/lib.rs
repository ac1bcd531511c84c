//! Exact arithmetic for cycles of rational maps on the projective line over Q
//! with good reduction outside a finite set S of primes.
//!
//! ```
//! use srcycles::{build_family, Rational, SPrimeSet};
//!
//! let s = SPrimeSet::new([2]).unwrap();
//! let fam = build_family(&Rational::from_integer(2.into()), &s, true).unwrap();
//! assert_eq!(fam.phi.degree(), 4);
//! assert_eq!(fam.ideal1.generator(), &3.into());
//! ```

pub mod dynamics;
pub mod equivalence;
pub mod error;
pub mod families;
mod forms;
pub mod projline;
pub mod ratmap;
pub mod sarith;
pub mod syntax;

pub use dynamics::{
    check_prop61, cycle_ledger, ms_bound, normalized_tuple, orbit, periodic_points, verify_cycle,
    Cycle, CycleLedger, NormalizedTuple, OrbitOutcome, OrbitResult, PeriodicPoints, Prop61Report,
};
pub use equivalence::{
    classify, classify_tuples, in_pgl2_zs, mobius_from_three_points, point_to_infinity,
    tuples_equivalent, EquivalenceClass, Mobius,
};
pub use error::{Error, Result};
pub use families::{build_family, build_h, build_psi, build_u, ideal_census, CensusRow, FamilyInstance};
pub use projline::{
    cross_ratio, delta_p, ideal_between, tuple_form_discriminant, tuple_good_reduction, CrossRatio,
    DeltaValue, ProjPoint, TupleReduction,
};
pub use ratmap::{AffineRationalFunction, HomogMap};
pub use sarith::{
    enumerate_s_units, factor, is_s_integer, is_s_unit, solve_unit_eq, split_s_part, vp,
    Factorization, Rational, SIdeal, SPrimeSet,
};
pub use syntax::{format_map, parse_map, parse_point, parse_tuple};
