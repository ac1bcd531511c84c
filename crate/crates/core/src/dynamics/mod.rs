//! Orbits, cycles and the arithmetic invariants attached to them.

mod bound;
mod cycle;
mod ledger;
mod orbit;
mod periodic;

pub use bound::{ln_interval, ms_bound};
pub use cycle::{check_prop61, verify_cycle, Cycle, Prop61Report, Prop61Violation};
pub use ledger::{cycle_ledger, normalized_tuple, CycleLedger, NormalizedTuple};
pub use orbit::{default_height_cap, orbit, OrbitOutcome, OrbitResult, DEFAULT_HEIGHT_CAP};
pub use periodic::{
    periodic_points, periodic_points_with_guard, PeriodicPoints, DEFAULT_DEGREE_GUARD,
};
