//! Rational scalars.
//!
//! `Rat` is an arbitrary-precision rational. Values are always reduced with a
//! positive denominator, and zero is canonically `0/1`; both invariants are
//! maintained by the underlying `Ratio` type on every construction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub type Rat = BigRational;

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// The fraction `n/d`, reduced. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `p` or `p/q` (optional sign, arbitrary precision). Returns `None`
/// on malformed input or a zero denominator.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let numer: BigInt = num_s.parse().ok()?;
    let denom: BigInt = match den_s {
        Some(d) => d.parse().ok()?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return None;
    }
    Some(BigRational::new(numer, denom))
}
