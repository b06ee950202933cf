use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

/// Exact rational number. Displays as `p/q` with `q > 0` in lowest terms,
/// or as `p` when the denominator is one.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRatError {
    #[error("not a rational number: {0:?}")]
    Syntax(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `p`, `p/q`, `-p/q`. Returns the value in lowest terms together with
/// a flag telling whether the input text was already canonical.
pub fn parse_rat(text: &str) -> Result<(Rat, bool), ParseRatError> {
    let syntax = || ParseRatError::Syntax(text.to_string());
    let valid_int = |s: &str| {
        let digits = s.strip_prefix('-').unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    if !valid_int(num) || den.is_some_and(|d| !valid_int(d)) {
        return Err(syntax());
    }
    let num = BigInt::from_str(num).map_err(|_| syntax())?;
    let den = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| syntax())?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(ParseRatError::ZeroDenominator(text.to_string()));
    }
    let value = Rat::new(num, den);
    let canonical = value.to_string() == text;
    Ok((value, canonical))
}
