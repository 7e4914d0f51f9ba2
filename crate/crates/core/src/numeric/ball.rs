//! Certified real enclosures: a dyadic midpoint with a dyadic radius.
//!
//! Every operation returns a ball containing the exact result for every
//! choice of inputs inside the operand balls. Midpoints are rounded to the
//! working precision and the rounding error is pushed into the radius.

use super::dyadic::{rational_msb, root_bits, Dyadic, Round};
use super::rational::Rational;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Significant bits kept in radii (always rounded up).
const RAD_BITS: u32 = 30;

#[derive(Clone, PartialEq, Eq)]
pub struct Ball {
    mid: Dyadic,
    rad: Dyadic,
    prec: u32,
}

fn rad_up(d: Dyadic) -> Dyadic {
    d.round(RAD_BITS, Round::Ceil)
}

impl Ball {
    pub fn new(mid: Dyadic, rad: Dyadic, prec: u32) -> Self {
        assert!(!rad.is_negative(), "negative ball radius");
        Ball {
            mid,
            rad: rad_up(rad),
            prec,
        }
    }

    pub fn exact(mid: Dyadic, prec: u32) -> Self {
        Ball {
            mid,
            rad: Dyadic::zero(),
            prec,
        }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Self::exact(Dyadic::from_int(n), prec)
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        Self::exact(Dyadic::from_bigint(n.clone()), prec)
    }

    pub fn zero(prec: u32) -> Self {
        Self::exact(Dyadic::zero(), prec)
    }

    /// Encloses a rational at `prec` significant bits (radius 0 if exact).
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        if q.is_zero() {
            return Self::zero(prec);
        }
        let lo = Dyadic::from_rational_prec(q, prec, Round::Floor);
        if lo.to_rational() == *q {
            return Self::exact(lo, prec);
        }
        let hi = Dyadic::from_rational_prec(q, prec, Round::Ceil);
        Self::from_endpoints(&lo, &hi, prec)
    }

    /// Smallest ball (up to radius rounding) containing `[lo, hi]`.
    pub fn from_endpoints(lo: &Dyadic, hi: &Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "inverted interval");
        let mid = (lo + hi).mul_pow2(-1);
        let rad = (hi - lo).mul_pow2(-1);
        Ball::new(mid, rad, prec)
    }

    pub fn from_rational_endpoints(lo: &Rational, hi: &Rational, prec: u32) -> Self {
        let lo = Dyadic::from_rational_prec(lo, prec, Round::Floor);
        let hi = Dyadic::from_rational_prec(hi, prec, Round::Ceil);
        Self::from_endpoints(&lo, &hi, prec)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Ball {
            prec,
            ..self.clone()
        }
    }

    pub fn lo(&self) -> Dyadic {
        &self.mid - &self.rad
    }

    pub fn hi(&self) -> Dyadic {
        &self.mid + &self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Rounds the midpoint to the working precision, widening the radius.
    fn normalize(mid: Dyadic, rad: Dyadic, prec: u32) -> Self {
        let rounded = mid.round(prec, Round::Floor);
        let err = &mid - &rounded;
        Ball {
            mid: rounded,
            rad: rad_up(&rad + &err),
            prec,
        }
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        self.lo() <= *x && *x <= self.hi()
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        self.lo().to_rational() <= *q && *q <= self.hi().to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    pub fn contains_ball(&self, other: &Ball) -> bool {
        self.lo() <= other.lo() && other.hi() <= self.hi()
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        self.lo() <= other.hi() && other.lo() <= self.hi()
    }

    pub fn is_positive(&self) -> bool {
        self.lo() > Dyadic::zero()
    }

    pub fn is_negative(&self) -> bool {
        self.hi() < Dyadic::zero()
    }

    /// Certainly `self < other`.
    pub fn lt(&self, other: &Ball) -> bool {
        self.hi() < other.lo()
    }

    /// Upper bound on `|x|` over the ball.
    pub fn abs_hi(&self) -> Dyadic {
        &self.mid.abs() + &self.rad
    }

    /// Lower bound on `|x|` over the ball (0 if it contains zero).
    pub fn abs_lo(&self) -> Dyadic {
        let m = self.mid.abs();
        if m <= self.rad {
            Dyadic::zero()
        } else {
            &m - &self.rad
        }
    }

    pub fn abs(&self) -> Ball {
        if self.contains_zero() {
            let hi = self.abs_hi();
            Ball::from_endpoints(&Dyadic::zero(), &hi, self.prec)
        } else if self.mid.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Radius plus the distance of the midpoint from zero scaled for width: `2 * rad`.
    pub fn width(&self) -> Dyadic {
        self.rad.mul_pow2(1)
    }

    pub fn add_error(&self, err: &Dyadic) -> Ball {
        Ball {
            mid: self.mid.clone(),
            rad: rad_up(&self.rad + &err.abs()),
            prec: self.prec,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Ball {
        Ball {
            mid: self.mid.mul_pow2(k),
            rad: self.rad.mul_pow2(k),
            prec: self.prec,
        }
    }

    pub fn mul_rational(&self, q: &Rational) -> Ball {
        self * &Ball::from_rational(q, self.prec)
    }

    pub fn add_rational(&self, q: &Rational) -> Ball {
        self + &Ball::from_rational(q, self.prec.max(self.mid.bits() as u32 + 8))
    }

    pub fn sqr(&self) -> Ball {
        self * self
    }

    /// Reciprocal; `None` when the ball contains zero.
    pub fn recip(&self) -> Option<Ball> {
        if self.contains_zero() {
            return None;
        }
        let m = &self.mid;
        let lo_q = Dyadic::one().div(m, self.prec, Round::Floor);
        let hi_q = Dyadic::one().div(m, self.prec, Round::Ceil);
        let center_err = &hi_q - &lo_q;
        // |1/x - 1/m| <= r / (|m| (|m| - r)) on the ball.
        let prop = if self.rad.is_zero() {
            Dyadic::zero()
        } else {
            let am = m.abs().round(RAD_BITS, Round::Floor);
            let gap = (&am - &self.rad).round(RAD_BITS, Round::Floor);
            let den = (&am * &gap).round(RAD_BITS, Round::Floor);
            self.rad.div(&den, RAD_BITS, Round::Ceil)
        };
        Some(Ball {
            mid: lo_q,
            rad: rad_up(&center_err + &prop),
            prec: self.prec,
        })
    }

    pub fn div(&self, other: &Ball) -> Option<Ball> {
        Some(self * &other.recip()?)
    }

    /// `self^n` by binary powering.
    pub fn pow(&self, n: u64) -> Ball {
        let mut result = Ball::from_int(1, self.prec);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        result
    }

    /// Square root of a ball; `None` if the ball reaches negative values.
    pub fn sqrt(&self) -> Option<Ball> {
        self.nth_root(2)
    }

    /// Real `n`-th root of a nonnegative ball.
    pub fn nth_root(&self, n: u32) -> Option<Ball> {
        let lo = self.lo();
        if lo.is_negative() {
            return None;
        }
        let hi = self.hi();
        let rlo = root_bits(&lo.to_rational(), n, self.prec, Round::Floor);
        let rhi = root_bits(&hi.to_rational(), n, self.prec, Round::Ceil);
        Some(Ball::from_endpoints(&rlo, &rhi, self.prec))
    }

    /// `q^(1/n)` for a positive rational, certified to about `prec` bits.
    pub fn root_of_rational(q: &Rational, n: u32, prec: u32) -> Ball {
        assert!(q.is_positive(), "root of nonpositive rational");
        let lo = root_bits(q, n, prec + 2, Round::Floor);
        let hi = root_bits(q, n, prec + 2, Round::Ceil);
        Ball::from_endpoints(&lo, &hi, prec)
    }

    pub fn hull(&self, other: &Ball) -> Ball {
        let lo = self.lo().min(other.lo());
        let hi = self.hi().max(other.hi());
        Ball::from_endpoints(&lo, &hi, self.prec.max(other.prec))
    }

    /// Intersection; `None` when disjoint.
    pub fn intersect(&self, other: &Ball) -> Option<Ball> {
        let lo = self.lo().max(other.lo());
        let hi = self.hi().min(other.hi());
        if lo > hi {
            None
        } else {
            Some(Ball::from_endpoints(&lo, &hi, self.prec.max(other.prec)))
        }
    }

    /// Relative accuracy in bits: `msb(mid) - msb(rad)`.
    pub fn accuracy_bits(&self) -> i64 {
        if self.rad.is_zero() {
            i64::MAX / 4
        } else if self.mid.is_zero() {
            -self.rad.msb()
        } else {
            self.mid.msb() - self.rad.msb()
        }
    }

    /// `pi` to `prec` bits (Machin's formula).
    pub fn pi(prec: u32) -> Ball {
        let p = prec + 16;
        let a = arctan_inv(5, p);
        let b = arctan_inv(239, p);
        (&a.mul_pow2(4) - &b.mul_pow2(2)).with_prec(prec)
    }

    /// `(cos x, sin x)` by Taylor series with a Lagrange remainder bound.
    pub fn cos_sin(&self) -> (Ball, Ball) {
        let p = self.prec + 16;
        let x = Ball::exact(self.mid.clone(), p);
        let mut cos = Ball::zero(p);
        let mut sin = Ball::zero(p);
        let mut term = Ball::from_int(1, p);
        let target = -(p as i64) - 2;
        let ax = self.mid.abs();
        let mut k: u64 = 0;
        loop {
            if k % 2 == 0 {
                if (k / 2) % 2 == 0 {
                    cos = &cos + &term;
                } else {
                    cos = &cos - &term;
                }
            } else if (k / 2) % 2 == 0 {
                sin = &sin + &term;
            } else {
                sin = &sin - &term;
            }
            k += 1;
            term = (&term * &x).div_int(k);
            // Past the hump of |x|^k/k! the next term bounds the tail of both series.
            if (k as f64) > ax.to_f64() && term.abs_hi().msb() < target {
                break;
            }
        }
        let tail = term.abs_hi();
        let err = &tail + &self.rad;
        (
            cos.add_error(&err).with_prec(self.prec),
            sin.add_error(&err).with_prec(self.prec),
        )
    }

    pub fn div_int(&self, k: u64) -> Ball {
        let d = Dyadic::from_int(k as i64);
        let lo = self.mid.div(&d, self.prec, Round::Floor);
        let hi = self.mid.div(&d, self.prec, Round::Ceil);
        let r = self.rad.div(&d, RAD_BITS, Round::Ceil);
        Ball {
            rad: rad_up(&(&hi - &lo) + &r),
            mid: lo,
            prec: self.prec,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Midpoint as a decimal string with enough digits for the precision.
    pub fn mid_decimal(&self) -> String {
        let digits = ((self.prec as f64) * 0.30103).ceil() as usize;
        let q = self.mid.to_rational();
        let mag = if q.is_zero() { 0 } else { rational_msb(&q) };
        let frac_digits = if mag >= 0 {
            digits.saturating_sub((mag as f64 * 0.30103) as usize).max(1)
        } else {
            digits + (-mag as f64 * 0.30103) as usize
        };
        super::rational::to_decimal(&q, frac_digits.min(4000))
    }

    pub fn rad_decimal(&self) -> String {
        if self.rad.is_zero() {
            return "0".into();
        }
        format!("{:e}", self.rad.to_f64())
    }
}

/// `arctan(1/m)` for integer `m >= 2`.
fn arctan_inv(m: i64, prec: u32) -> Ball {
    let x = Ball::from_int(1, prec).div_int(m as u64);
    let x2 = x.sqr();
    let mut power = x.clone();
    let mut sum = Ball::zero(prec);
    let target = -(prec as i64) - 2;
    let mut k: u64 = 0;
    loop {
        let term = power.div_int(2 * k + 1);
        if term.abs_hi().msb() < target {
            // alternating, decreasing: remainder below the first omitted term
            return sum.add_error(&term.abs_hi());
        }
        sum = if k % 2 == 0 { &sum + &term } else { &sum - &term };
        power = &power * &x2;
        k += 1;
    }
}

impl Add for &Ball {
    type Output = Ball;
    fn add(self, rhs: &Ball) -> Ball {
        let prec = self.prec.max(rhs.prec);
        Ball::normalize(&self.mid + &rhs.mid, &self.rad + &rhs.rad, prec)
    }
}

impl Sub for &Ball {
    type Output = Ball;
    fn sub(self, rhs: &Ball) -> Ball {
        let prec = self.prec.max(rhs.prec);
        Ball::normalize(&self.mid - &rhs.mid, &self.rad + &rhs.rad, prec)
    }
}

impl Mul for &Ball {
    type Output = Ball;
    fn mul(self, rhs: &Ball) -> Ball {
        let prec = self.prec.max(rhs.prec);
        let mid = &self.mid * &rhs.mid;
        let rad = if self.rad.is_zero() && rhs.rad.is_zero() {
            Dyadic::zero()
        } else {
            let am = self.mid.abs().round(RAD_BITS, Round::Ceil);
            let bm = rhs.mid.abs().round(RAD_BITS, Round::Ceil);
            let t1 = &am * &rhs.rad;
            let t2 = &bm * &self.rad;
            let t3 = &self.rad * &rhs.rad;
            &(&t1 + &t2) + &t3
        };
        Ball::normalize(mid, rad, prec)
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball {
            mid: -&self.mid,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Ball {
            type Output = Ball;
            fn $m(self, rhs: Ball) -> Ball {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        -&self
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +/- {:e}]", self.mid.to_f64(), self.rad.to_f64())
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +/- {}]", self.mid_decimal(), self.rad_decimal())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, rat};
    use proptest::prelude::*;

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..200).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn arithmetic_is_sound(a in small_rat(), b in small_rat(), prec in 8u32..80) {
            let ba = Ball::from_rational(&a, prec);
            let bb = Ball::from_rational(&b, prec);
            prop_assert!((&ba + &bb).contains_rational(&(&a + &b)));
            prop_assert!((&ba - &bb).contains_rational(&(&a - &b)));
            prop_assert!((&ba * &bb).contains_rational(&(&a * &b)));
            if !b.is_zero() {
                prop_assert!(ba.div(&bb).unwrap().contains_rational(&(&a / &b)));
            }
        }

        #[test]
        fn powers_are_sound(a in small_rat(), n in 0u64..12, prec in 16u32..100) {
            let p = Ball::from_rational(&a, prec).pow(n);
            prop_assert!(p.contains_rational(&crate::numeric::rational::pow(&a, n as u32)));
        }
    }

    #[test]
    fn exact_power_of_two() {
        let b = Ball::from_int(2, 64).pow(10);
        assert!(b.is_exact());
        assert_eq!(b.mid(), &Dyadic::from_int(1024));
    }

    #[test]
    fn pi_and_trig() {
        let pi = Ball::pi(128);
        assert!(pi.contains_rational(&rat(314159265358979323, 100000000000000000)) == false);
        assert!(pi.lo().to_rational() > rat(3141592653589793, 1000000000000000));
        assert!(pi.hi().to_rational() < rat(3141592653589794, 1000000000000000));
        let (c, s) = pi.cos_sin();
        assert!(c.contains_rational(&int(-1)));
        assert!(s.contains_zero());
        assert!(c.rad().to_f64() < 1e-30);
    }

    #[test]
    fn roots_enclose() {
        let r = Ball::root_of_rational(&int(2), 2, 100);
        assert!(r.sqr().contains_rational(&int(2)));
        assert!(r.rad().to_f64() < 1e-29);
        let q = Ball::from_rational(&rat(9, 4), 64).sqrt().unwrap();
        assert!(q.contains_rational(&rat(3, 2)));
        assert!(Ball::from_int(-1, 64).sqrt().is_none());
    }

    #[test]
    fn recip_of_ball_with_radius() {
        let b = Ball::from_endpoints(&Dyadic::from_int(2), &Dyadic::from_int(4), 64);
        let r = b.recip().unwrap();
        assert!(r.contains_rational(&rat(1, 2)) && r.contains_rational(&rat(1, 4)));
        assert!(Ball::from_endpoints(&Dyadic::from_int(-1), &Dyadic::from_int(1), 64)
            .recip()
            .is_none());
    }
}
