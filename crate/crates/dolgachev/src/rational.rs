//! Exact rational scalars.
//!
//! Everything in this crate that is not provably a small integer is a
//! [`Rat`] (arbitrary-precision rational). Parsing and printing use the
//! plain `numer/denom` form, integers print without a denominator.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub type Rat = num_rational::BigRational;

/// Exact integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact fraction `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// True when the rational is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.is_integer()
}

/// Extract an `i64` from an integral rational, if it fits.
pub fn to_i64(r: &Rat) -> Option<i64> {
    use num_traits::ToPrimitive;
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Parse "3", "-7/2" style exact rationals.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let numer: BigInt = n.trim().parse().ok()?;
            let denom: BigInt = d.trim().parse().ok()?;
            if denom.is_zero() {
                None
            } else {
                Some(Rat::new(numer, denom))
            }
        }
        None => {
            let numer: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(numer))
        }
    }
}

/// Floor of a rational as a `BigInt`.
pub fn floor_int(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Nearest integer to `r` with the given parity (0 or 1 mod 2).
///
/// Among integers `m ≡ parity (mod 2)` this returns one minimizing
/// `|m - r|`; ties broken towards the floor side.
pub fn nearest_with_parity(r: &Rat, parity: i64) -> BigInt {
    let two = BigInt::from(2);
    let f = floor_int(r);
    // Candidates: the two aligned integers bracketing r.
    let lo = if ((&f % &two) + &two) % &two == BigInt::from(parity.rem_euclid(2)) {
        f.clone()
    } else {
        &f - 1
    };
    let hi: BigInt = &lo + 2;
    let dist_lo = (r - Rat::from_integer(lo.clone())).abs();
    let dist_hi = (Rat::from_integer(hi.clone()) - r).abs();
    if dist_lo <= dist_hi {
        lo
    } else {
        hi
    }
}
