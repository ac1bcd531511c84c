//! Integer binary forms stored as coefficient lists `c_0 x^d + c_1 x^(d-1) y + ... + c_d y^d`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub(crate) fn degree(f: &[BigInt]) -> usize {
    f.len() - 1
}

pub(crate) fn eval(f: &[BigInt], x: &BigInt, y: &BigInt) -> BigInt {
    // after step k: acc = sum_{j<=k} c_j x^(k-j) y^j
    let mut acc = BigInt::zero();
    let mut ypow = BigInt::one();
    for c in f {
        acc = acc * x + c * &ypow;
        ypow *= y;
    }
    acc
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn scale(a: &[BigInt], k: &BigInt) -> Vec<BigInt> {
    a.iter().map(|x| x * k).collect()
}

/// `f(A, B)` for forms `A`, `B` of equal degree.
pub(crate) fn substitute(f: &[BigInt], a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let d = degree(f);
    let e = degree(a);
    let apow: Vec<Vec<BigInt>> = (0..=d).scan(vec![BigInt::one()], |acc, i| {
        let cur = acc.clone();
        if i < d {
            *acc = mul(acc, a);
        }
        Some(cur)
    }).collect();
    let bpow: Vec<Vec<BigInt>> = (0..=d).scan(vec![BigInt::one()], |acc, i| {
        let cur = acc.clone();
        if i < d {
            *acc = mul(acc, b);
        }
        Some(cur)
    }).collect();
    let mut out = vec![BigInt::zero(); d * e + 1];
    for (k, c) in f.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = mul(&apow[d - k], &bpow[k]);
        for (o, t) in out.iter_mut().zip(&term) {
            *o += c * t;
        }
    }
    out
}

pub(crate) fn content<'a, I: IntoIterator<Item = &'a BigInt>>(coeffs: I) -> BigInt {
    coeffs
        .into_iter()
        .fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Multiplies `x` by the form, i.e. shifts toward higher x-degree.
pub(crate) fn times_x(f: &[BigInt]) -> Vec<BigInt> {
    let mut out = f.to_vec();
    out.push(BigInt::zero());
    out
}

pub(crate) fn times_y(f: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero()];
    out.extend_from_slice(f);
    out
}

/// Resultant of two forms of the same degree `d >= 1` as the `2d x 2d`
/// Sylvester determinant.
pub(crate) fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let d = degree(f);
    debug_assert_eq!(d, degree(g));
    let n = 2 * d;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for i in 0..d {
        for (j, c) in f.iter().enumerate() {
            m[i][i + j] = c.clone();
        }
        for (j, c) in g.iter().enumerate() {
            m[d + i][i + j] = c.clone();
        }
    }
    bareiss_determinant(m)
}

/// Fraction-free Gaussian elimination.
pub(crate) fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}
