//! Dense univariate polynomials over `Q`, coefficients in ascending degree.
//!
//! Only the handful of routines the cyclotomic field needs: multiplication,
//! division with remainder and the extended Euclidean algorithm. All results
//! are trimmed so that the zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type QPoly = Vec<BigRational>;

pub(crate) fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn add(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let neg: QPoly = b.iter().map(|c| -c).collect();
    add(a, &neg)
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Division with remainder. Panics if `divisor` is zero.
pub(crate) fn div_rem(dividend: &[BigRational], divisor: &[BigRational]) -> (QPoly, QPoly) {
    let mut divisor = divisor.to_vec();
    trim(&mut divisor);
    let lead = divisor.last().expect("polynomial division by zero").clone();
    let mut rem = dividend.to_vec();
    trim(&mut rem);
    if rem.len() < divisor.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - divisor.len() + 1];
    while rem.len() >= divisor.len() {
        let shift = rem.len() - divisor.len();
        let factor = rem.last().unwrap() / &lead;
        for (i, c) in divisor.iter().enumerate() {
            rem[shift + i] -= &factor * c;
        }
        quot[shift] = factor;
        // The leading term cancels exactly.
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Returns `(g, s)` with `s*a ≡ g (mod b)`, `g = gcd(a, b)` made monic.
pub(crate) fn gcd_ext(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (QPoly, QPoly) = (vec![BigRational::one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if let Some(lead) = r0.last().cloned() {
        for c in r0.iter_mut().chain(s0.iter_mut()) {
            *c /= &lead;
        }
    }
    (r0, s0)
}

pub(crate) fn from_ints(coeffs: &[BigInt]) -> QPoly {
    let mut p: QPoly = coeffs
        .iter()
        .cloned()
        .map(BigRational::from_integer)
        .collect();
    trim(&mut p);
    p
}

/// `x^n - 1` with integer coefficients.
pub(crate) fn x_pow_minus_one(n: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = -BigInt::one();
    p[n] = BigInt::one();
    p
}
