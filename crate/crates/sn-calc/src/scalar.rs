//! Exact rational scalars. The coefficient field is fixed to the rationals;
//! every value is stored reduced with positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, SnError};

/// Exact rational scalar: reduced fraction of arbitrary-precision integers,
/// denominator always positive.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn rat(num: i64, den: i64) -> Scalar {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Integer power with negative exponents allowed on nonzero scalars.
pub fn pow(s: &Scalar, e: i64) -> Result<Scalar> {
    if e == 0 {
        return Ok(one());
    }
    if s.is_zero() {
        return Err(SnError::InvalidArgument("zero scalar has no negative power".into()));
    }
    let mut acc = one();
    let base = if e > 0 { s.clone() } else { s.recip() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    Ok(acc)
}

/// Decimal-free fraction string: "p" for integers, "p/q" otherwise.
pub fn to_string(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parse "p" or "p/q" (optionally signed) into a reduced scalar.
pub fn parse(text: &str) -> Result<Scalar> {
    let bad = || SnError::InvalidArgument(format!("invalid rational literal: {text:?}"));
    let mut parts = text.splitn(2, '/');
    let num: BigInt = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let den: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn is_negative(s: &Scalar) -> bool {
    s.is_negative()
}
