//! `g(k)` in Waring's problem from the fractional part of `(3/2)^k`.

use super::AlgebraicError;
use crate::numeric::rational::{self, Rational};
use num_bigint::BigInt;
use num_traits::One;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaringReport {
    pub k: u32,
    /// `2^k + floor((3/2)^k) - 2`, present only when the condition holds.
    pub g: Option<BigInt>,
    pub condition_holds: bool,
    /// `||(3/2)^k||`.
    pub distance: Rational,
    /// `(3/4)^k`.
    pub threshold: Rational,
}

/// Evaluates the condition `||(3/2)^k|| > (3/4)^k` and the formula it licenses.
pub fn waring_condition(k: u32) -> Result<WaringReport, AlgebraicError> {
    if k < 5 {
        return Err(AlgebraicError::KTooSmall { k });
    }
    let x = rational::pow(&rational::rat(3, 2), k);
    let distance = rational::dist_to_int(&x);
    let threshold = rational::pow(&rational::rat(3, 4), k);
    let condition_holds = distance > threshold;
    let g = condition_holds.then(|| (BigInt::one() << k) + rational::floor(&x) - BigInt::from(2));
    Ok(WaringReport {
        k,
        g,
        condition_holds,
        distance,
        threshold,
    })
}

/// `g(k)`; fails when the condition does not hold.
pub fn waring_g(k: u32) -> Result<WaringReport, AlgebraicError> {
    let r = waring_condition(k)?;
    if !r.condition_holds {
        return Err(AlgebraicError::ConditionFails { k });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::rat;

    #[test]
    fn small_values() {
        let r = waring_g(5).unwrap();
        assert_eq!(r.g, Some(BigInt::from(37)));
        assert_eq!(r.distance, rat(13, 32));
        assert_eq!(r.threshold, rat(243, 1024));
        let r = waring_g(6).unwrap();
        assert_eq!(r.g, Some(BigInt::from(73)));
        assert_eq!(r.distance, rat(25, 64));
        assert_eq!(waring_g(4), Err(AlgebraicError::KTooSmall { k: 4 }));
    }

    #[test]
    fn formula_against_integer_arithmetic() {
        for k in 5..=30u32 {
            // ||(3/2)^7|| = 11/128 < (3/4)^7, the only failure in this range
            if k == 7 {
                assert_eq!(waring_g(k), Err(AlgebraicError::ConditionFails { k }));
                let r = waring_condition(k).unwrap();
                assert_eq!((r.distance, r.g), (rat(11, 128), None));
                continue;
            }
            let r = waring_g(k).unwrap();
            // floor(3^k / 2^k) by integer division
            let q = BigInt::from(3).pow(k) / (BigInt::one() << k);
            assert_eq!(r.g.unwrap(), (BigInt::one() << k) + q - 2);
        }
    }
}
