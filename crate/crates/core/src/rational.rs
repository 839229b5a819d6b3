//! Exact rationals used for every coordinate and function value.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Parses an integer or `p/q` fraction. Decimal points are rejected.
pub fn parse_rational(token: &str) -> Result<Rational, String> {
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("malformed rational {token:?}"))?;
    let den: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| format!("malformed rational {token:?}"))?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(format!("zero denominator in {token:?}"));
    }
    Ok(Rational::new(num, den))
}

pub(crate) fn parse_rational_at(token: &str, line: usize) -> Result<Rational> {
    parse_rational(token).map_err(|message| Error::Parse { line, message })
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
