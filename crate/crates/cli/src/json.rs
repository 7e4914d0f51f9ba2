//! JSON encodings of exact and enclosed values, and their inverses for replay.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use powseq::numeric::ball::Ball;
use powseq::numeric::complex::ComplexBall;
use powseq::numeric::dyadic::Dyadic;
use powseq::numeric::rational::{self, Rational};
use powseq::poly::{IntPolynomial, RatPolynomial};
use powseq::quadratic::QuadraticElement;
use powseq::synthesis::Real;
use serde_json::{json, Map, Value};

pub fn rat(x: &Rational) -> Value {
    json!({"num": x.numer().to_string(), "den": x.denom().to_string()})
}

pub fn rats(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

/// Integers as JSON numbers when they fit in `i64`, decimal strings otherwise.
pub fn int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

/// Exact decimal of a dyadic rational.
fn dyadic_decimal(d: &Dyadic) -> String {
    let digits = (-d.exp()).max(0) as usize;
    rational::to_decimal(&d.to_rational(), digits)
}

/// Decimal upper bound with six significant digits.
fn decimal_up(x: &Rational) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let ten = BigInt::from(10);
    // find e with 10^5 <= x 10^e < 10^6
    let mut e: i64 = 0;
    let scaled = |e: i64| {
        if e >= 0 {
            x * Rational::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            x / Rational::from_integer(num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    let lo = Rational::from_integer(BigInt::from(100_000));
    let hi = Rational::from_integer(BigInt::from(1_000_000));
    let guess = rational::to_f64(x).log10().floor() as i64;
    if guess.abs() < 100_000 {
        e = 5 - guess;
    }
    let mut s = scaled(e);
    while s < lo {
        e += 1;
        s = scaled(e);
    }
    while s >= hi {
        e -= 1;
        s = scaled(e);
    }
    let mut m = rational::ceil(&s);
    if m == BigInt::from(1_000_000) {
        m = BigInt::from(100_000);
        e -= 1;
    }
    let digits = m.to_string();
    format!("{}.{}e{}", &digits[..1], &digits[1..], 5 - e)
}

pub fn ball(b: &Ball) -> Value {
    json!({
        "center": dyadic_decimal(b.mid()),
        "radius": decimal_up(&b.rad().to_rational()),
        "precision_bits": b.prec(),
    })
}

pub fn complex(z: &ComplexBall) -> Value {
    json!({"re": ball(&z.re), "im": ball(&z.im)})
}

pub fn real(r: &Real) -> Value {
    match r {
        Real::Exact(q) => rat(q),
        Real::Enclosure(b) => ball(b),
    }
}

pub fn int_poly(p: &IntPolynomial) -> Value {
    ints(p.coeffs())
}

pub fn rat_poly(p: &RatPolynomial) -> Value {
    rats(p.coeffs())
}

pub fn quadratic(x: &QuadraticElement) -> Value {
    json!({"a": rat(&x.a), "b": rat(&x.b), "d": if x.is_rational() { 0 } else { x.d }, "text": x.to_string()})
}

pub fn obj(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

/// Reads a `{"num", "den"}` object back.
pub fn parse_rat(v: &Value) -> Option<Rational> {
    let n: BigInt = v.get("num")?.as_str()?.parse().ok()?;
    let d: BigInt = v.get("den")?.as_str()?.parse().ok()?;
    (!d.is_zero()).then(|| Rational::new(n, d))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    match s.split_once('e') {
        Some((m, e)) => {
            let m = rational::parse_rational(m)?;
            let e: i64 = e.parse().ok()?;
            let p = Rational::from_integer(num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize));
            Some(if e >= 0 { m * p } else { m / p })
        }
        None => rational::parse_rational(s),
    }
}

/// `[center - radius, center + radius]` of a serialized Ball.
pub fn parse_ball(v: &Value) -> Option<(Rational, Rational)> {
    let c = parse_decimal(v.get("center")?.as_str()?)?;
    let r = parse_decimal(v.get("radius")?.as_str()?)?;
    (!r.is_negative()).then(|| (&c - &r, &c + &r))
}

pub fn is_ball(v: &Value) -> bool {
    v.as_object().is_some_and(|m| m.contains_key("center") && m.contains_key("radius") && m.contains_key("precision_bits"))
}

/// `"num/den"` text for manifests.
pub fn rat_text(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn rats_text(v: &[Rational]) -> String {
    v.iter().map(rat_text).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_round_trip_encloses() {
        let b = Ball::root_of_rational(&rational::int(2), 2, 128);
        let (lo, hi) = parse_ball(&ball(&b)).unwrap();
        assert!(lo <= b.lo().to_rational() && b.hi().to_rational() <= hi);
        assert!(&lo * &lo < rational::int(2) && &hi * &hi > rational::int(2));
    }

    #[test]
    fn radius_rounds_up() {
        assert_eq!(decimal_up(&rational::rat(1, 3)), "3.33334e-1");
        assert_eq!(decimal_up(&rational::int(1)), "1.00000e0");
        assert_eq!(decimal_up(&rational::rat(1, 1 << 20)), "9.53675e-7");
        let r = rational::rat(123, 1000);
        assert!(parse_decimal(&decimal_up(&r)).unwrap() >= r);
    }

    #[test]
    fn rationals() {
        let q = rational::rat(-13, 32);
        assert_eq!(rat(&q), json!({"num": "-13", "den": "32"}));
        assert_eq!(parse_rat(&rat(&q)), Some(q));
        assert_eq!(int(&BigInt::from(37)), json!(37));
    }
}
