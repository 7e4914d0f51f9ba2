//! Helpers over exact rationals.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value
//! reduced with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Largest integer not exceeding `x`.
pub fn floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil(x: &Rational) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

/// Nearest integer, ties rounded up: `max{n : n <= x + 1/2}`.
pub fn nearest(x: &Rational) -> BigInt {
    let two = BigInt::from(2);
    (x.numer() * &two + x.denom()).div_floor(&(x.denom() * two))
}

/// `x - floor(x)`, always in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - from_bigint(floor(x))
}

/// Distance to the nearest integer.
pub fn dist_to_int(x: &Rational) -> Rational {
    (x - from_bigint(nearest(x))).abs()
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn pow(x: &Rational, n: u32) -> Rational {
    num_traits::pow(x.clone(), n as usize)
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-1.25"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        let whole = if ip_abs.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(ip_abs).ok()?
        };
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let mut n = whole * &scale + BigInt::from_str(fp).ok()?;
        if neg {
            n = -n;
        }
        return Some(Rational::new(n, scale));
    }
    BigInt::from_str(s).ok().map(Rational::from_integer)
}

/// Formats as `"p"` or `"p/q"`.
pub fn fmt_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Decimal expansion truncated toward zero after `digits` places.
pub fn to_decimal(x: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let neg = x.is_negative();
    let scaled = (x.abs() * from_bigint(scale.clone())).to_integer();
    let (ip, fp) = scaled.div_rem(&scale);
    let sign = if neg && !(ip.is_zero() && fp.is_zero()) { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{:0>width$}", fp.to_string(), width = digits)
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 gives up on huge operands; fall back to scaling.
        let bits = x.numer().bits() as i64 - x.denom().bits() as i64;
        let shift = bits - 60;
        let scaled = if shift > 0 {
            x / from_bigint(BigInt::one() << shift as usize)
        } else {
            x * from_bigint(BigInt::one() << (-shift) as usize)
        };
        scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}
