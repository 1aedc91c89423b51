//! Sums of four rational squares.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

fn is_square(v: &BigInt) -> Option<BigInt> {
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

/// `v` is a sum of three squares unless it has the form `4^a (8b + 7)`.
fn is_three_square(v: &BigInt) -> bool {
    if v.is_zero() {
        return true;
    }
    let mut v = v.clone();
    let four = BigInt::from(4);
    while (&v % &four).is_zero() {
        v /= &four;
    }
    &v % BigInt::from(8) != BigInt::from(7)
}

fn two_squares(v: &BigInt) -> Option<(BigInt, BigInt)> {
    let mut a = v.sqrt();
    while &a * &a * 2 >= *v {
        if let Some(b) = is_square(&(v - &a * &a)) {
            return Some((a, b));
        }
        if a.is_zero() {
            break;
        }
        a -= 1;
    }
    None
}

fn three_squares(v: &BigInt) -> Option<[BigInt; 3]> {
    let mut a = v.sqrt();
    loop {
        let r = v - &a * &a;
        if let Some((b, c)) = two_squares(&r) {
            return Some([a, b, c]);
        }
        if a.is_zero() {
            return None;
        }
        a -= 1;
    }
}

/// Four nonnegative integers whose squares sum to `v`.
pub fn four_square_int(v: &BigInt) -> Result<[BigInt; 4]> {
    if v.is_negative() {
        return Err(Error::InvalidParams(format!("{v} is negative")));
    }
    let mut a = v.sqrt();
    loop {
        let r = v - &a * &a;
        if is_three_square(&r) {
            if let Some([b, c, d]) = three_squares(&r) {
                return Ok([a, b, c, d]);
            }
        }
        if a.is_zero() {
            return Err(Error::Invariant(format!("no four-square decomposition found for {v}")));
        }
        a -= 1;
    }
}

/// Four rationals whose squares sum to `v` exactly. Writes `v = a/b = ab/b²`
/// and decomposes the integer `ab`.
pub fn four_square(v: &Rational) -> Result<[Rational; 4]> {
    if v.is_negative() {
        return Err(Error::InvalidParams(format!("{v} is negative")));
    }
    let b = v.denom().clone();
    let parts = four_square_int(&(v.numer() * &b))?;
    let out = parts.map(|p| Rational::new(p, b.clone()));
    let total: Rational = out.iter().map(Rational::square).sum();
    if total != *v {
        return Err(Error::Invariant(format!("four-square identity failed for {v}")));
    }
    Ok(out)
}
