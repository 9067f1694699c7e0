//! Exact rational helpers shared by every module.

use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number used for every exact bound.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The exact value of a finite `f64`.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn pow(base: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {input:?} as a rational number")]
pub struct ParseRationalError {
    pub input: String,
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"-0.125"` or
/// `"2.5e-3"` into an exact rational. Decimal input is read digit by digit,
/// never through a float.
pub fn parse(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError { input: String::from(s) };
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = t[i + 1..].parse().map_err(|_| err())?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let mut joined = String::from(whole);
    joined.push_str(frac);
    let mut value = Rational::from_integer(joined.parse::<BigInt>().map_err(|_| err())?);
    let scale = exponent.checked_sub(frac.len() as i32).ok_or_else(err)?;
    if scale.unsigned_abs() > 4096 {
        return Err(err());
    }
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= pow(&ten, scale as usize);
    } else {
        value /= pow(&ten, scale.unsigned_abs() as usize);
    }
    Ok(if negative { -value } else { value })
}

/// `1/k` for a positive integer `k`, if `x` has that form.
pub fn reciprocal_integer(x: &Rational) -> Option<u64> {
    if !x.is_positive() || !x.numer().is_one() {
        return None;
    }
    x.denom().to_u64()
}

/// Display wrapper rendering `p/q`, or `p` when the denominator is one.
pub struct Exact<'a>(pub &'a Rational);

impl fmt::Display for Exact<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse("1/10").unwrap(), ratio(1, 10));
        assert_eq!(parse(" -3 / 6 ").unwrap(), ratio(-1, 2));
        assert_eq!(parse("0.2").unwrap(), ratio(1, 5));
        assert_eq!(parse("-0.125").unwrap(), ratio(-1, 8));
        assert_eq!(parse("2.5e-3").unwrap(), ratio(1, 400));
        assert_eq!(parse("3E2").unwrap(), int(300));
        assert_eq!(parse(".5").unwrap(), ratio(1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(parse("").is_err());
        assert!(parse("1.2.3").is_err());
    }

    #[test]
    fn reciprocal_integers() {
        assert_eq!(reciprocal_integer(&ratio(1, 8)), Some(8));
        assert_eq!(reciprocal_integer(&int(1)), Some(1));
        assert_eq!(reciprocal_integer(&ratio(2, 8)), Some(4));
        assert_eq!(reciprocal_integer(&ratio(3, 8)), None);
        assert_eq!(reciprocal_integer(&ratio(-1, 8)), None);
    }

    #[test]
    fn exact_display() {
        assert_eq!(Exact(&ratio(14, 2)).to_string(), "7");
        assert_eq!(Exact(&ratio(7, 2)).to_string(), "7/2");
        assert_eq!(Exact(&ratio(-1, 3)).to_string(), "-1/3");
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
    }
}
