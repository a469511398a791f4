//! Exact rational helpers: literal parsing and float conversion at the
//! reporting boundary.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact arbitrary-precision rational. Always reduced, positive denominator.
pub type Rational = BigRational;

/// Largest decimal exponent accepted by [`parse_rational`].
const MAX_EXPONENT: i64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty number")]
    Empty,
    #[error("`{0}` is not a rational literal (expected e.g. 3, -0.25, 1e-4 or 7/2)")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("exponent out of range in `{0}`")]
    ExponentRange(String),
}

/// `n/d` as a rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses an exact rational literal.
///
/// Accepts integers (`-3`), fractions (`7/2`, `-7/2`) and decimals with an
/// optional exponent (`0.1`, `.5`, `2.`, `1e-4`). A decimal is read exactly,
/// so `0.1` is `1/10`, never the nearest binary float.
pub fn parse_rational(input: &str) -> Result<Rational, ParseRationalError> {
    let s = input.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let invalid = || ParseRationalError::Invalid(s.to_string());

    if let Some((num, den)) = s.split_once('/') {
        let num = parse_integer(num.trim(), true).ok_or_else(invalid)?;
        let den = parse_integer(den.trim(), false).ok_or_else(invalid)?;
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational::new(num, den));
    }

    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(pos) => (&body[..pos], Some(&body[pos + 1..])),
        None => (body, None),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(invalid());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(invalid());
    }
    let mut exp10: i64 = match exponent {
        None => 0,
        Some(e) => {
            let digits = e.strip_prefix(['+', '-']).unwrap_or(e);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(invalid());
            }
            if digits.len() > 6 {
                return Err(ParseRationalError::ExponentRange(s.to_string()));
            }
            e.parse::<i64>().map_err(|_| invalid())?
        }
    };
    exp10 -= frac_part.len() as i64;
    let digits: String = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(digits.parse::<BigInt>().map_err(|_| invalid())?);
    if value.is_zero() {
        return Ok(value);
    }
    if exp10.abs() > MAX_EXPONENT {
        return Err(ParseRationalError::ExponentRange(s.to_string()));
    }
    let scale = Rational::from_integer(num_traits::pow(BigInt::from(10), exp10.unsigned_abs() as usize));
    if exp10 >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    Ok(if negative { -value } else { value })
}

fn parse_integer(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = if allow_sign {
        s.strip_prefix(['+', '-']).unwrap_or(s)
    } else {
        s
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Nearest `f64` (saturating to ±inf for out-of-range magnitudes).
pub fn to_f64(r: &Rational) -> f64 {
    match r.to_f64() {
        Some(x) => x,
        None if r.is_negative() => f64::NEG_INFINITY,
        None => f64::INFINITY,
    }
}

/// The rational with the same shortest decimal representation as `x`,
/// so `0.1_f64` maps to `1/10`. `None` for non-finite input.
pub fn from_f64_decimal(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    parse_rational(&format!("{x:e}")).ok()
}

/// The exact binary value of `x`. `None` for non-finite input.
pub fn from_f64_exact(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// `2^-bits`.
pub fn pow2_neg(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// Rounds to `digits` significant decimal digits; used for presentation only.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap_or(x)
}
