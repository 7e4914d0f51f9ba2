//! Reduction of a rational generating function with integer coefficients to
//! lowest terms `P/Q` with `P, Q` in `Z[X]` and `Q(0) = 1`.

use super::RecurrenceError;
use crate::linalg::resultant;
use crate::numeric::rational::{self, Rational};
use crate::poly::{IntPolynomial, RatPolynomial};
use num_traits::Zero;

/// Number of series coefficients checked for integrality.
pub fn horizon(p: &IntPolynomial, q: &IntPolynomial) -> usize {
    2 * (p.deg() + q.deg()) + 16
}

/// Lowest-terms `(P, Q)` with integer coefficients and `Q(0) = 1`.
///
/// The series `p/q` must have integer coefficients up to the horizon
/// `2 (deg p + deg q) + 16`; otherwise `NotIntegralSeries` names the first
/// offending index.
pub fn fatou_reduce(
    p: &IntPolynomial,
    q: &IntPolynomial,
) -> Result<(IntPolynomial, IntPolynomial), RecurrenceError> {
    if q.coeff(0).is_zero() {
        return Err(RecurrenceError::ZeroConstantTerm);
    }
    let h = horizon(p, q);
    let (pr, qr) = (p.to_rational(), q.to_rational());
    let series = pr.series_div(&qr, h);
    if let Some(index) = series.iter().position(|c| !rational::is_integer(c)) {
        return Err(RecurrenceError::NotIntegralSeries { index });
    }
    if p.is_zero() {
        return Ok((IntPolynomial::zero(), IntPolynomial::one()));
    }
    let g = pr.gcd(&qr);
    let (pn, qn) = (pr.exact_div(&g).unwrap(), qr.exact_div(&g).unwrap());
    let q0 = qn.coeff(0);
    let inv = Rational::from_integer(1.into()) / q0;
    let (pn, qn) = (pn.scale(&inv), qn.scale(&inv));
    // integral by Fatou's lemma once the series is integral
    let (big_p, big_q) = match (pn.to_int(), qn.to_int()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(RecurrenceError::NotIntegralSeries { index: h }),
    };
    debug_assert!(coprime(&pn, &qn));
    Ok((big_p, big_q))
}

fn coprime(p: &RatPolynomial, q: &RatPolynomial) -> bool {
    p.is_zero() || q.deg() == 0 || p.deg() == 0 || !resultant(p, q).is_zero()
}

/// Checks the reduced pair: `Q(0) = 1`, coprime, and the same series as `p/q` to the horizon.
pub fn verify_reduction(
    p: &IntPolynomial,
    q: &IntPolynomial,
    big_p: &IntPolynomial,
    big_q: &IntPolynomial,
) -> bool {
    let h = horizon(p, q);
    let (bp, bq) = (big_p.to_rational(), big_q.to_rational());
    big_q.coeff(0) == 1.into()
        && coprime(&bp, &bq)
        && p.to_rational().series_div(&q.to_rational(), h) == bp.series_div(&bq, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn examples() {
        let (p, q) = (ip(&[2, 2]), ip(&[2, -4]));
        let (bp, bq) = fatou_reduce(&p, &q).unwrap();
        assert_eq!((bp.clone(), bq.clone()), (ip(&[1, 1]), ip(&[1, -2])));
        assert!(verify_reduction(&p, &q, &bp, &bq));

        let (p, q) = (ip(&[1, -1]), ip(&[1, -1]));
        assert_eq!(fatou_reduce(&p, &q).unwrap(), (ip(&[1]), ip(&[1])));

        assert_eq!(
            fatou_reduce(&ip(&[1]), &ip(&[2, -1])),
            Err(RecurrenceError::NotIntegralSeries { index: 0 })
        );
        // 1/(1 - 3X/2) is 1 + 3X/2 + ...
        assert_eq!(
            fatou_reduce(&ip(&[2]), &ip(&[2, -3])),
            Err(RecurrenceError::NotIntegralSeries { index: 1 })
        );
        assert_eq!(fatou_reduce(&ip(&[1]), &ip(&[0, 1])), Err(RecurrenceError::ZeroConstantTerm));
    }

    #[test]
    fn common_factor_with_sign() {
        // (1 + X)(3 - X) / ((1 + X)(-1 + X + X^2)) = (3 - X)/(-1 + X + X^2)
        let f = ip(&[1, 1]);
        let p = &f * &ip(&[3, -1]);
        let q = &f * &ip(&[-1, 1, 1]);
        let (bp, bq) = fatou_reduce(&p, &q).unwrap();
        assert_eq!((bp.clone(), bq.clone()), (ip(&[-3, 1]), ip(&[1, -1, -1])));
        assert!(verify_reduction(&p, &q, &bp, &bq));
    }
}
