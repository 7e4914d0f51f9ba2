//! Rectangular complex balls.

use super::ball::Ball;
use super::dyadic::{root_bits, Dyadic, Round};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        ComplexBall { re, im }
    }

    pub fn real(re: Ball) -> Self {
        let p = re.prec();
        ComplexBall {
            re,
            im: Ball::zero(p),
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::real(Ball::from_int(1, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn conj(&self) -> Self {
        ComplexBall {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm_sqr(&self) -> Ball {
        &self.re.sqr() + &self.im.sqr()
    }

    /// Enclosure of the modulus.
    pub fn abs(&self) -> Ball {
        let n = self.norm_sqr();
        let p = self.prec();
        let lo = n.lo().max(Dyadic::zero());
        let rlo = root_bits(&lo.to_rational(), 2, p, Round::Floor);
        let rhi = root_bits(&n.hi().to_rational(), 2, p, Round::Ceil);
        Ball::from_endpoints(&rlo, &rhi, p)
    }

    pub fn abs_hi(&self) -> Dyadic {
        self.abs().hi()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut result = ComplexBall::one(self.prec());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn recip(&self) -> Option<Self> {
        let d = self.norm_sqr().recip()?;
        Some(ComplexBall {
            re: &self.re * &d,
            im: -&(&self.im * &d),
        })
    }

    /// Ball midpoints only, with zero radius.
    pub fn midpoint(&self) -> Self {
        ComplexBall {
            re: Ball::exact(self.re.mid().clone(), self.re.prec()),
            im: Ball::exact(self.im.mid().clone(), self.im.prec()),
        }
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        ComplexBall {
            re: self.re.with_prec(prec),
            im: self.im.with_prec(prec),
        }
    }

    pub fn scale(&self, k: &Ball) -> Self {
        ComplexBall {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    /// `exp(2 pi i t)`.
    pub fn unit(t: &Ball) -> Self {
        let pi = Ball::pi(t.prec() + 8);
        let angle = &t.mul_pow2(1) * &pi;
        let (c, s) = angle.cos_sin();
        ComplexBall { re: c, im: s }
    }
}

impl Add for &ComplexBall {
    type Output = ComplexBall;
    fn add(self, rhs: &ComplexBall) -> ComplexBall {
        ComplexBall {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &ComplexBall {
    type Output = ComplexBall;
    fn sub(self, rhs: &ComplexBall) -> ComplexBall {
        ComplexBall {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &ComplexBall {
    type Output = ComplexBall;
    fn mul(self, rhs: &ComplexBall) -> ComplexBall {
        ComplexBall {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &ComplexBall {
    type Output = ComplexBall;
    fn neg(self) -> ComplexBall {
        ComplexBall {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::int;

    #[test]
    fn i_squared_is_minus_one() {
        let i = ComplexBall::new(Ball::zero(64), Ball::from_int(1, 64));
        let sq = i.pow(2);
        assert!(sq.re.contains_rational(&int(-1)) && sq.im.contains_zero());
        assert!(i.abs().contains_rational(&int(1)));
    }

    #[test]
    fn unit_circle_points() {
        let quarter = Ball::from_rational(&crate::numeric::rational::rat(1, 4), 96);
        let z = ComplexBall::unit(&quarter);
        assert!(z.re.contains_zero());
        assert!(z.im.contains_rational(&int(1)));
    }
}
