//! Exact arithmetic in quadratic fields `Q(sqrt D)`.

use crate::numeric::ball::Ball;
use crate::numeric::rational::{self, Rational};
use crate::poly::{Coeff, FieldCoeff};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// `a + b sqrt(d)`. Elements with `b = 0` are rationals and combine with any field;
/// `d = 0` marks a rational that has not been attached to a field yet.
#[derive(Clone, Debug)]
pub struct QuadraticElement {
    pub a: Rational,
    pub b: Rational,
    pub d: i64,
}

impl QuadraticElement {
    pub fn new(a: Rational, b: Rational, d: i64) -> Self {
        assert!(
            b.is_zero() || is_valid_radicand(d),
            "radicand must be squarefree and not 0 or 1"
        );
        QuadraticElement { a, b, d }
    }

    pub fn rational(a: Rational) -> Self {
        QuadraticElement {
            a,
            b: Rational::zero(),
            d: 0,
        }
    }

    pub fn sqrt(d: i64) -> Self {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b sqrt(d)`.
    pub fn conj(&self) -> Self {
        QuadraticElement {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(self.d.into()) * &self.b * &self.b
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    /// Minimal polynomial coefficients `[c0, c1, 1]` (or `[-a, 1]` when rational).
    pub fn min_poly(&self) -> Vec<Rational> {
        if self.is_rational() {
            vec![-self.a.clone(), Rational::one()]
        } else {
            vec![self.norm(), -self.trace(), Rational::one()]
        }
    }

    /// Real enclosure; `None` for imaginary fields.
    pub fn to_ball(&self, prec: u32) -> Option<Ball> {
        if self.is_rational() {
            return Some(Ball::from_rational(&self.a, prec));
        }
        if self.d < 0 {
            return None;
        }
        let s = Ball::root_of_rational(&rational::int(self.d), 2, prec + 8);
        Some(&Ball::from_rational(&self.a, prec + 8) + &s.mul_rational(&self.b))
    }

    /// Parses `a`, `a+b*sqrt(D)`, `b*sqrt(D)`, `sqrt(D)` or `a-sqrt(D)`, with rational `a`, `b`.
    pub fn parse(s: &str) -> Option<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(pos) = s.find("sqrt(") else {
            return rational::parse_rational(&s).map(Self::rational);
        };
        let close = s[pos..].find(')')? + pos;
        if close + 1 != s.len() {
            return None;
        }
        let d: i64 = s[pos + 5..close].parse().ok()?;
        if !is_valid_radicand(d) {
            return None;
        }
        let head = &s[..pos];
        let head = head.strip_suffix('*').unwrap_or(head);
        // split head into "a" and the signed coefficient of sqrt
        let split = head
            .char_indices()
            .rev()
            .find(|&(i, c)| (c == '+' || c == '-') && i > 0 && !head[..i].ends_with('/'))
            .map(|(i, _)| i);
        let (a_str, b_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let a = if a_str.is_empty() {
            Rational::zero()
        } else {
            rational::parse_rational(a_str)?
        };
        let b = match b_str {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            t => rational::parse_rational(t.trim_start_matches('+'))?,
        };
        Some(Self::new(a, b, d))
    }

    fn field(&self, other: &Self) -> i64 {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => self.d.max(other.d),
            (false, true) => self.d,
            (true, false) => other.d,
            (false, false) => {
                assert_eq!(self.d, other.d, "mixing elements of different quadratic fields");
                self.d
            }
        }
    }
}

/// Squarefree and not 0 or 1.
pub fn is_valid_radicand(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let n = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= n {
        if n % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl PartialEq for QuadraticElement {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Zero for QuadraticElement {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadraticElement {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Add for QuadraticElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let d = self.field(&rhs);
        QuadraticElement {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            d,
        }
    }
}

impl Sub for QuadraticElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for QuadraticElement {
    type Output = Self;
    fn neg(self) -> Self {
        QuadraticElement {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Mul for QuadraticElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = self.field(&rhs);
        let dd = Rational::from_integer(BigInt::from(d));
        QuadraticElement {
            a: &self.a * &rhs.a + &self.b * &rhs.b * dd,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        }
    }
}

impl Div for QuadraticElement {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm();
        assert!(!n.is_zero(), "division by zero in quadratic field");
        let t = self * rhs.conj();
        QuadraticElement {
            a: t.a / &n,
            b: t.b / &n,
            d: t.d,
        }
    }
}

impl Coeff for QuadraticElement {
    fn from_i64(n: i64) -> Self {
        Self::rational(rational::int(n))
    }
}

impl FieldCoeff for QuadraticElement {}

impl fmt::Display for QuadraticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", rational::fmt_rational(&self.a));
        }
        let b = rational::fmt_rational(&self.b.abs());
        let sign = if self.b.is_negative() { "-" } else { "+" };
        if self.a.is_zero() {
            let s = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{s}{b}*sqrt({})", self.d)
        } else {
            write!(f, "{}{sign}{b}*sqrt({})", rational::fmt_rational(&self.a), self.d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, rat};
    use proptest::prelude::*;

    fn q(a: Rational, b: Rational) -> QuadraticElement {
        QuadraticElement::new(a, b, 5)
    }

    #[test]
    fn golden_ratio_identities() {
        let phi = q(rat(1, 2), rat(1, 2));
        let psi = phi.conj();
        assert_eq!(phi.clone() + psi.clone(), QuadraticElement::one());
        assert_eq!(phi.clone() * psi.clone(), QuadraticElement::from_i64(-1));
        let inv_sqrt5 = QuadraticElement::one() / QuadraticElement::sqrt(5);
        assert_eq!(inv_sqrt5, q(int(0), rat(1, 5)));
        assert!(phi.to_ball(64).unwrap().contains_rational(&rat(1618033988, 1000000000)) == false);
    }

    #[test]
    fn parsing() {
        assert_eq!(QuadraticElement::parse("1/2+1/2*sqrt(5)"), Some(q(rat(1, 2), rat(1, 2))));
        assert_eq!(QuadraticElement::parse("1-sqrt(5)"), Some(q(int(1), int(-1))));
        assert_eq!(QuadraticElement::parse("-2*sqrt(5)"), Some(q(int(0), int(-2))));
        assert_eq!(QuadraticElement::parse("3/4"), Some(QuadraticElement::rational(rat(3, 4))));
        assert_eq!(QuadraticElement::parse("sqrt(4)"), None);
        assert_eq!(
            QuadraticElement::parse("-1/3-2/7*sqrt(-3)"),
            Some(QuadraticElement::new(rat(-1, 3), rat(-2, 7), -3))
        );
        let x = q(rat(-1, 2), rat(3, 2));
        assert_eq!(QuadraticElement::parse(&x.to_string()), Some(x));
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involutive_automorphism(
            a in -20i64..20, b in -20i64..20, c in -20i64..20, e in -20i64..20, den in 1i64..9
        ) {
            let x = q(rat(a, den), rat(b, den));
            let y = q(rat(c, den), rat(e, 1));
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!((x.clone() * y.clone()).conj(), x.conj() * y.conj());
            prop_assert_eq!((x.clone() + y.clone()).conj(), x.conj() + y.conj());
            prop_assert_eq!(x.conj() == x, b == 0);
        }
    }
}
