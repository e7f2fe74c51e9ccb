//! Arbitrary-precision rationals.
//!
//! `Rational` is `num_rational::BigRational`, which already maintains the
//! invariants we need: fractions are stored reduced with a positive
//! denominator. Helpers here cover the canonical text form and the few
//! integer utilities the rest of the crate leans on.

pub use num_rational::BigRational as Rational;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text form: "n" for integers, "n/d" otherwise.
pub fn rational_to_text(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// p-adic valuation of a nonzero rational; None encodes +infinity (x = 0).
pub fn padic_valuation(x: &Rational, p: &BigInt) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let count = |mut n: BigInt| -> i64 {
        let mut v = 0;
        while (&n % p).is_zero() {
            n /= p;
            v += 1;
        }
        v
    };
    Some(count(x.numer().abs()) - count(x.denom().abs()))
}

/// x as an i64 when it is an integer in range.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn is_one(x: &Rational) -> bool {
    x.is_one()
}
