//! Exact arithmetic foundation: arbitrary-precision rationals, integer
//! polynomials, p-adic valuations and Smith normal form.
//!
//! Everything in this module is exact; no floating point is used anywhere.
//! All functions are pure and safe to call concurrently.

pub mod matrix;
pub mod poly;
pub mod snf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use matrix::Matrix;
pub use poly::{divide_out_factor, IntPolynomial};
pub use snf::{smith_normal_form, SnfResult};

/// Primality by trial division. Inputs are tiny throughout the crate.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Argument(format!("{p} is not prime")))
    }
}

/// p-adic valuation of a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero(), "valuation of zero integer");
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut cur = n.clone();
    loop {
        let (q, r) = cur.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        cur = q;
    }
}

/// p-adic valuation of a nonzero rational: `x = p^v * (unit at p)`.
///
/// Errors on zero input (the valuation would be infinite) and on
/// non-prime `p`.
pub fn valuation(x: &BigRational, p: u64) -> Result<i64> {
    ensure_prime(p)?;
    if x.is_zero() {
        return Err(Error::Domain("valuation of zero".into()));
    }
    Ok(int_valuation(x.numer(), p) - int_valuation(x.denom(), p))
}

/// Exact `p^n` as a rational, for any integer `n`.
pub fn rational_prime_power(p: u64, n: i64) -> BigRational {
    let base = BigInt::from(p);
    if n >= 0 {
        BigRational::from_integer(base.pow(n as u32))
    } else {
        BigRational::new(BigInt::one(), base.pow((-n) as u32))
    }
}

/// Signum times absolute value decomposition helper for readable reports.
pub fn sign_of(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
