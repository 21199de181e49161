//! Exact rational scalars: constructors, parsing, and deterministic rendering.
//!
//! Provides:
//! - the crate-wide [`Rat`] alias (arbitrary-size exact rationals in canonical form),
//! - exact parsing of `"p/q"`, integer, and decimal literals (decimals convert
//!   exactly; they are never routed through binary floating point),
//! - canonical `"numerator/denominator"` strings,
//! - deterministic decimal rendering with a fixed number of significant digits.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-size rational, always in canonical reduced form with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

/// Shorthand for small rational constants.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The integer `n` as a rational.
pub fn rat_u32(n: u32) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact power of two `2^e` (negative exponents allowed).
pub fn pow2(e: i64) -> Rat {
    let mag = BigInt::one() << e.unsigned_abs() as usize;
    if e >= 0 {
        Rat::from_integer(mag)
    } else {
        Rat::new(BigInt::one(), mag)
    }
}

/// True when `q` is an integer `<= 0`; such values annihilate a Pochhammer
/// factor at some index and are rejected as lower series parameters.
pub fn is_nonpositive_integer(q: &Rat) -> bool {
    q.is_integer() && !q.is_positive()
}

/// `ceil(q)` clamped into `u64` (negative values clamp to 0).
pub fn ceil_u64(q: &Rat) -> u64 {
    let c = q.ceil().to_integer();
    if c.is_negative() {
        0
    } else {
        c.to_u64().unwrap_or(u64::MAX)
    }
}

/// Canonical `"numerator/denominator"` form, e.g. `"-4/3"`, `"5/1"`.
pub fn rat_string(q: &Rat) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses a rational from `"p/q"`, integer, or decimal syntax.
///
/// Decimal literals (optionally with an `e`/`E` exponent) are converted
/// exactly: `"0.99"` becomes `99/100`, never a binary float.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::parse(text, "empty rational literal"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::parse(text, "numerator is not an integer"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::parse(text, "denominator is not an integer"))?;
        if d.is_zero() {
            return Err(Error::parse(text, "denominator is zero"));
        }
        return Ok(Rat::new(n, d));
    }
    parse_decimal(s).ok_or_else(|| Error::parse(text, "expected `p/q`, integer, or decimal"))
}

fn parse_decimal(s: &str) -> Option<Rat> {
    let (sign, rest) = match s.as_bytes()[0] {
        b'-' => (-1i64, &s[1..]),
        b'+' => (1, &s[1..]),
        _ => (1, s),
    };
    let (mantissa, exp10) = match rest.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = rest[i + 1..].parse().ok()?;
            (&rest[..i], e)
        }
        None => (rest, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().unwrap_or_else(|_| BigInt::zero());
    let scale = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10u8);
    let pow = ten.pow(scale.unsigned_abs() as u32);
    let q = if scale >= 0 {
        Rat::from_integer(digits * pow)
    } else {
        Rat::new(digits, pow)
    };
    Some(if sign < 0 { -q } else { q })
}

/// Deterministic decimal rendering of `q` with `sig` significant digits,
/// rounded half-to-even. Uses plain notation near unit magnitude and
/// scientific notation (`d.dd…e±E`) otherwise; trailing fractional zeros are
/// stripped, so exactly representable values print exactly.
pub fn decimal_string(q: &Rat, sig: usize) -> String {
    assert!(sig >= 1, "at least one significant digit");
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let mag = q.abs();
    let e10 = decimal_exponent(&mag);
    // m = round(mag * 10^(sig-1-e10)), an integer in [10^(sig-1), 10^sig].
    let k = sig as i64 - 1 - e10;
    let ten = BigInt::from(10u8);
    let (mut num, mut den) = (mag.numer().clone(), mag.denom().clone());
    if k >= 0 {
        num *= ten.pow(k as u32);
    } else {
        den *= ten.pow((-k) as u32);
    }
    let (mut m, rem) = num_integer::Integer::div_rem(&num, &den);
    let twice = &rem * 2;
    if twice > den || (twice == den && num_integer::Integer::is_odd(&m)) {
        m += 1;
    }
    let mut e10 = e10;
    let cap = ten.pow(sig as u32);
    if m == cap {
        m = ten.pow(sig as u32 - 1);
        e10 += 1;
    }
    let digits = m.to_string();
    debug_assert_eq!(digits.len(), sig);
    let body = if e10 >= sig as i64 || e10 < -5 {
        let frac = digits[1..].trim_end_matches('0');
        if frac.is_empty() {
            format!("{}e{}", &digits[..1], e10)
        } else {
            format!("{}.{}e{}", &digits[..1], frac, e10)
        }
    } else if e10 >= 0 {
        let split = (e10 + 1) as usize;
        let frac = digits[split..].trim_end_matches('0');
        if frac.is_empty() {
            digits[..split].to_string()
        } else {
            format!("{}.{}", &digits[..split], frac)
        }
    } else {
        let frac = digits.trim_end_matches('0');
        format!("0.{}{}", "0".repeat((-e10 - 1) as usize), frac)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Exponent `e` with `10^e <= q < 10^(e+1)` for positive `q`.
fn decimal_exponent(q: &Rat) -> i64 {
    let bits = q.numer().bits() as i64 - q.denom().bits() as i64;
    let mut e = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64 - 2;
    while pow10_le(q, e + 1) {
        e += 1;
    }
    e
}

/// True when `10^e <= q` (q positive).
fn pow10_le(q: &Rat, e: i64) -> bool {
    let ten = BigInt::from(10u8);
    let pow = ten.pow(e.unsigned_abs() as u32);
    if e >= 0 {
        *q.numer() >= q.denom() * pow
    } else {
        q.numer() * pow >= *q.denom()
    }
}
