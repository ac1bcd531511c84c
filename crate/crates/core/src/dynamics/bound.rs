use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::sarith::Rational;

// 2 atanh(t) = ln((1+t)/(1-t)) for 0 <= t < 1, enclosed using `terms` terms.
fn atanh2_interval(t: &Rational, terms: u32) -> (Rational, Rational) {
    let t2 = t * t;
    let mut power = t.clone();
    let mut sum = Rational::zero();
    for j in 0..terms {
        sum += &power / Rational::from_integer(BigInt::from(2 * j + 1));
        power *= &t2;
    }
    // remaining terms are bounded by the geometric tail
    let tail = &power / (Rational::from_integer(BigInt::from(2 * terms + 1)) * (Rational::one() - &t2));
    let two = Rational::from_integer(2.into());
    (&two * &sum, two * (sum + tail))
}

/// Rational enclosure `lo <= ln(x) <= hi` for an integer `x >= 1`.
pub fn ln_interval(x: u64, terms: u32) -> (Rational, Rational) {
    assert!(x >= 1);
    let k = 63 - x.leading_zeros();
    // x = 2^k m with 1 <= m < 2
    let m = Rational::new(BigInt::from(x), BigInt::one() << k);
    let one = Rational::one();
    let tm = (&m - &one) / (&m + &one);
    let t2 = Rational::new(1.into(), 3.into());
    let (lm, hm) = atanh2_interval(&tm, terms);
    let (l2, h2) = atanh2_interval(&t2, terms);
    let kq = Rational::from_integer(k.into());
    (&kq * l2 + lm, kq * h2 + hm)
}

/// `floor((12(s+2) ln(5(s+2)))^4)` for `s >= 1` places.
///
/// The logarithm is enclosed in a rational interval that is refined until the
/// floors of both endpoints agree, so the result is exact.
pub fn ms_bound(s: usize) -> BigInt {
    assert!(s >= 1, "at least one place");
    let x = 5 * (s as u64 + 2);
    let factor = Rational::from_integer(BigInt::from(12 * (s as u64 + 2)));
    let mut terms = 32;
    loop {
        let (lo, hi) = ln_interval(x, terms);
        let lo4 = num_traits::pow(&factor * lo, 4).floor().to_integer();
        let hi4 = num_traits::pow(&factor * hi, 4).floor().to_integer();
        if lo4 == hi4 || terms >= 4096 {
            return hi4;
        }
        terms *= 2;
    }
}
