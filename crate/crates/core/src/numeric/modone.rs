//! Integer part, fractional part, nearest integer, residue and distance to
//! the nearest integer, for exact rationals and for balls.
//!
//! The nearest integer rounds ties up: `E(x) = max{n : n <= x + 1/2}`, so the
//! residue `x - E(x)` always lies in `[-1/2, 1/2)`.

use super::ball::Ball;
use super::dyadic::Dyadic;
use super::precision::PrecisionPolicy;
use super::rational::{self, Rational};
use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct ModOneDecomposition<T> {
    pub integer_part: BigInt,
    pub fractional_part: T,
    pub nearest: BigInt,
    pub residue: T,
    pub distance: T,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("enclosure straddles a rounding boundary at {precision} bits")]
pub struct Undecidable {
    pub precision: u32,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("requested precision {requested} exceeds the cap of {cap} bits")]
pub struct PrecisionOverflow {
    pub requested: u32,
    pub cap: u32,
}

pub fn decompose(x: &Rational) -> ModOneDecomposition<Rational> {
    let integer_part = rational::floor(x);
    let nearest = rational::nearest(x);
    let fractional_part = x - Rational::from_integer(integer_part.clone());
    let residue = x - Rational::from_integer(nearest.clone());
    let distance = residue.abs();
    ModOneDecomposition {
        integer_part,
        fractional_part,
        nearest,
        residue,
        distance,
    }
}

/// `floor(x)` when it is the same for every point of the ball.
pub fn certified_floor(x: &Ball) -> Option<BigInt> {
    let a = x.lo().floor();
    (a == x.hi().floor()).then_some(a)
}

/// `E(x)` when it is the same for every point of the ball.
pub fn certified_nearest(x: &Ball) -> Option<BigInt> {
    let half = Dyadic::pow2(-1);
    let a = (&x.lo() + &half).floor();
    (a == (&x.hi() + &half).floor()).then_some(a)
}

/// Decomposes a single ball without refinement.
pub fn decompose_fixed(x: &Ball) -> Result<ModOneDecomposition<Ball>, Undecidable> {
    let undecided = || Undecidable {
        precision: x.prec(),
    };
    let integer_part = certified_floor(x).ok_or_else(undecided)?;
    let nearest = certified_nearest(x).ok_or_else(undecided)?;
    let p = x.prec();
    let fractional_part = x - &Ball::from_bigint(&integer_part, p);
    let residue = x - &Ball::from_bigint(&nearest, p);
    let distance = residue.abs();
    Ok(ModOneDecomposition {
        integer_part,
        fractional_part,
        nearest,
        residue,
        distance,
    })
}

/// Decomposes the real number produced by `refine(prec)`, doubling the
/// precision until both the floor and the nearest integer are decided.
pub fn decompose_ball(
    refine: &dyn Fn(u32) -> Ball,
    policy: &PrecisionPolicy,
) -> Result<ModOneDecomposition<Ball>, Undecidable> {
    let mut last = policy.initial_bits;
    for prec in policy.schedule() {
        last = prec;
        if let Ok(d) = decompose_fixed(&refine(prec)) {
            return Ok(d);
        }
    }
    Err(Undecidable { precision: last })
}

/// Certified `E(x)` with refinement.
pub fn nearest_refined(
    refine: &dyn Fn(u32) -> Ball,
    policy: &PrecisionPolicy,
) -> Result<BigInt, Undecidable> {
    let mut last = policy.initial_bits;
    for prec in policy.schedule() {
        last = prec;
        if let Some(e) = certified_nearest(&refine(prec)) {
            return Ok(e);
        }
    }
    Err(Undecidable { precision: last })
}

/// Certified `floor(x)` with refinement.
pub fn floor_refined(
    refine: &dyn Fn(u32) -> Ball,
    policy: &PrecisionPolicy,
) -> Result<BigInt, Undecidable> {
    let mut last = policy.initial_bits;
    for prec in policy.schedule() {
        last = prec;
        if let Some(e) = certified_floor(&refine(prec)) {
            return Ok(e);
        }
    }
    Err(Undecidable { precision: last })
}

/// Exact bounds `(min, max)` of `||y||` over `y` in `[lo, hi]`.
pub fn distance_range(lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let half = rational::rat(1, 2);
    let d_lo = rational::dist_to_int(lo);
    let d_hi = rational::dist_to_int(hi);
    let contains_int = rational::ceil(lo) <= rational::floor(hi);
    let contains_half = rational::ceil(&(lo - &half)) <= rational::floor(&(hi - &half));
    let min = if contains_int {
        Rational::from_integer(0.into())
    } else {
        d_lo.clone().min(d_hi.clone())
    };
    let max = if contains_half { half } else { d_lo.max(d_hi) };
    (min, max)
}

/// Bounds on `||x||` over a ball.
pub fn ball_distance_range(x: &Ball) -> (Rational, Rational) {
    distance_range(&x.lo().to_rational(), &x.hi().to_rational())
}

/// `x^n` with the working precision raised to `target_precision`.
pub fn pow_ball(
    x: &Ball,
    n: u64,
    target_precision: u32,
    cap: u32,
) -> Result<Ball, PrecisionOverflow> {
    if target_precision > cap {
        return Err(PrecisionOverflow {
            requested: target_precision,
            cap,
        });
    }
    Ok(x.with_prec(target_precision.max(x.prec())).pow(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, rat};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&rat(37, 10));
        assert_eq!(d.integer_part, b(3));
        assert_eq!(d.fractional_part, rat(7, 10));
        assert_eq!(d.nearest, b(4));
        assert_eq!(d.residue, rat(-3, 10));
        assert_eq!(d.distance, rat(3, 10));

        let d = decompose(&rat(-1, 2));
        assert_eq!(d.integer_part, b(-1));
        assert_eq!(d.fractional_part, rat(1, 2));
        assert_eq!(d.nearest, b(0));
        assert_eq!(d.residue, rat(-1, 2));
        assert_eq!(d.distance, rat(1, 2));

        let d = decompose(&rat(243, 32));
        assert_eq!(d.integer_part, b(7));
        assert_eq!(d.nearest, b(8));
        assert_eq!(d.distance, rat(13, 32));

        assert_eq!(decompose(&rat(1, 2)).nearest, b(1));
    }

    #[test]
    fn decompose_ball_examples() {
        let x = Ball::from_rational_endpoints(&rat(369, 100), &rat(371, 100), 64);
        let d = decompose_fixed(&x).unwrap();
        assert_eq!(d.integer_part, b(3));
        assert_eq!(d.nearest, b(4));

        let y = Ball::from_rational_endpoints(&rat(38, 10), &rat(42, 10), 64);
        let fixed = move |_p: u32| y.clone();
        assert!(decompose_ball(&fixed, &PrecisionPolicy::new(64, 256)).is_err());

        let three_halves = |p: u32| Ball::from_rational(&rat(3, 2), p).pow(5);
        let d = decompose_ball(&three_halves, &PrecisionPolicy::default()).unwrap();
        let exact = decompose(&rat(243, 32));
        assert_eq!(d.integer_part, exact.integer_part);
        assert_eq!(d.nearest, exact.nearest);
        assert!(d.distance.contains_rational(&exact.distance));
    }

    #[test]
    fn pow_ball_examples() {
        let two = Ball::from_int(2, 64);
        let p = pow_ball(&two, 10, 64, 1 << 20).unwrap();
        assert!(p.is_exact() && p.contains_rational(&int(1024)));

        // phi^20 = L_20 - psi^20 with L_20 = 15127 (Lucas oracle).
        let phi = &(&Ball::root_of_rational(&int(5), 2, 53) + &Ball::from_int(1, 53)).mul_pow2(-1);
        let p = pow_ball(phi, 20, 53, 1 << 20).unwrap();
        let mut lucas = (int(2), int(1));
        for _ in 0..19 {
            lucas = (lucas.1.clone(), &lucas.0 + &lucas.1);
        }
        assert_eq!(lucas.1, int(15127));
        assert_eq!(certified_nearest(&p), Some(b(15127)));
        assert!(p.hi().to_rational() < int(15127));

        let th = pow_ball(&Ball::from_rational(&rat(3, 2), 64), 5, 64, 1 << 20).unwrap();
        assert!(th.contains_rational(&rat(243, 32)));
        assert!(pow_ball(&two, 3, 1 << 21, 1 << 20).is_err());
    }

    #[test]
    fn distance_range_cases() {
        assert_eq!(distance_range(&rat(1, 10), &rat(2, 10)), (rat(1, 10), rat(2, 10)));
        assert_eq!(distance_range(&rat(-1, 10), &rat(1, 10)), (Rational::zero(), rat(1, 10)));
        assert_eq!(distance_range(&rat(4, 10), &rat(6, 10)), (rat(4, 10), rat(1, 2)));
    }

    proptest! {
        #[test]
        fn periodic_and_symmetric(n in -10_000i64..10_000, d in 1i64..500, k in -50i64..50) {
            let x = rat(n, d);
            let a = decompose(&x);
            let shifted = decompose(&(&x + int(k)));
            prop_assert_eq!(&a.fractional_part, &shifted.fractional_part);
            prop_assert_eq!(&a.distance, &shifted.distance);
            prop_assert_eq!(&decompose(&-x.clone()).distance, &a.distance);
            prop_assert!(a.fractional_part >= Rational::zero() && a.fractional_part < int(1));
            prop_assert!(a.residue >= rat(-1, 2) && a.residue < rat(1, 2));
            prop_assert_eq!(Rational::from_integer(a.integer_part.clone()) + &a.fractional_part, x.clone());
            prop_assert_eq!(Rational::from_integer(a.nearest.clone()) + &a.residue, x);
        }

        #[test]
        fn exact_balls_agree(n in -10_000i64..10_000, d in 1i64..64) {
            let x = rat(n, d);
            let exact = decompose(&x);
            let ball = Ball::from_rational(&x, 200);
            if ball.is_exact() {
                let got = decompose_fixed(&ball).unwrap();
                prop_assert_eq!(got.integer_part, exact.integer_part);
                prop_assert_eq!(got.nearest, exact.nearest);
                prop_assert!(got.distance.contains_rational(&exact.distance));
            }
        }
    }
}
