use std::collections::HashMap;

use num_bigint::BigInt;

use super::Cycle;
use crate::projline::ProjPoint;
use crate::ratmap::HomogMap;

/// Default bound on coordinate magnitude, `10^12`.
pub fn default_height_cap() -> BigInt {
    BigInt::from(10u64.pow(12))
}

pub const DEFAULT_HEIGHT_CAP: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitOutcome {
    CycleFound,
    HeightExceeded,
    StepLimit,
}

impl OrbitOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            OrbitOutcome::CycleFound => "cycle-found",
            OrbitOutcome::HeightExceeded => "height-exceeded",
            OrbitOutcome::StepLimit => "step-limit",
        }
    }
}

/// `tail` followed by the cycle points is the visited sequence. Without a
/// cycle, `tail` holds every visited point within the height cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitResult {
    pub tail: Vec<ProjPoint>,
    pub cycle: Option<Cycle>,
    pub outcome: OrbitOutcome,
}

pub fn orbit(phi: &HomogMap, start: &ProjPoint, max_steps: usize, height_cap: &BigInt) -> OrbitResult {
    let mut seq = Vec::new();
    let mut index = HashMap::new();
    if &start.height() > height_cap {
        return OrbitResult {
            tail: seq,
            cycle: None,
            outcome: OrbitOutcome::HeightExceeded,
        };
    }
    index.insert(start.clone(), 0);
    seq.push(start.clone());
    for _ in 0..max_steps {
        let next = phi.eval(seq.last().unwrap());
        if let Some(&k) = index.get(&next) {
            let points = seq.split_off(k);
            return OrbitResult {
                tail: seq,
                cycle: Some(Cycle::new_unchecked(phi.clone(), points)),
                outcome: OrbitOutcome::CycleFound,
            };
        }
        if &next.height() > height_cap {
            return OrbitResult {
                tail: seq,
                cycle: None,
                outcome: OrbitOutcome::HeightExceeded,
            };
        }
        index.insert(next.clone(), seq.len());
        seq.push(next);
    }
    OrbitResult {
        tail: seq,
        cycle: None,
        outcome: OrbitOutcome::StepLimit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_u;

    fn pt(x: i64, y: i64) -> ProjPoint {
        ProjPoint::from_ints(x, y).unwrap()
    }

    fn square() -> HomogMap {
        HomogMap::from_i64_forms(&[1, 0, 0], &[0, 0, 1]).unwrap()
    }

    #[test]
    fn u_cycle_from_zero() {
        let r = orbit(&build_u(), &pt(0, 1), 10, &default_height_cap());
        assert_eq!(r.outcome, OrbitOutcome::CycleFound);
        assert!(r.tail.is_empty());
        assert_eq!(r.cycle.unwrap().points(), &[pt(0, 1), pt(1, 1), ProjPoint::infinity()]);
    }

    #[test]
    fn squaring_diverges() {
        let r = orbit(&square(), &pt(2, 1), 50, &default_height_cap());
        assert_eq!(r.outcome, OrbitOutcome::HeightExceeded);
        assert_eq!(r.tail.last().unwrap(), &pt(65536 * 65536, 1));
        assert_eq!(r.tail.len(), 6);
    }

    #[test]
    fn fixed_point_and_tail() {
        let r = orbit(&square(), &pt(1, 1), 10, &default_height_cap());
        assert_eq!(r.cycle.unwrap().points(), &[pt(1, 1)]);
        let r = orbit(&square(), &pt(-1, 1), 10, &default_height_cap());
        assert_eq!(r.tail, vec![pt(-1, 1)]);
        assert_eq!(r.cycle.unwrap().points(), &[pt(1, 1)]);
        let r = orbit(&square(), &pt(3, 1), 2, &default_height_cap());
        assert_eq!(r.outcome, OrbitOutcome::StepLimit);
        assert_eq!(r.tail, vec![pt(3, 1), pt(9, 1), pt(81, 1)]);
    }
}
