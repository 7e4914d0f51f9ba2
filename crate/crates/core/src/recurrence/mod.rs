//! Linear recurrences over the rationals: recovery from samples through
//! Hankel systems, backward extension, characteristic and numerator
//! polynomials, Fatou reduction, p-adic integrality, coefficient recovery in
//! `Q` or `Q(sqrt D)`, and a nearest-integer P.V. detector.

pub mod coefficients;
pub mod detector;
pub mod fatou;
pub mod padic;

pub use coefficients::{galois_swap_check, recover_coefficients, PowerSumModel, SwapVerdict};
pub use detector::{nearest_integer_model, DetectorReport};
pub use fatou::fatou_reduce;
pub use padic::{
    global_integrality, growth_check, integrality_check, root_valuations, GrowthVerdict, PadicContext,
};

use crate::linalg::{determinant, hankel, solve};
use crate::numeric::rational::Rational;
use crate::poly::RatPolynomial;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RecurrenceError {
    #[error("NoRecurrence: no recurrence of order <= {max_order} fits the samples")]
    NoRecurrence { max_order: usize },
    #[error("need at least {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("all samples are zero")]
    AllZero,
    #[error("NotIntegralSeries: coefficient {index} of p/q is not an integer")]
    NotIntegralSeries { index: usize },
    #[error("q(0) must be nonzero")]
    ZeroConstantTerm,
    #[error("ZeroPolynomial")]
    ZeroPolynomial,
    #[error("not a prime: {0}")]
    NotPrime(String),
    #[error("SingularSystem: the roots must be distinct and nonzero")]
    SingularSystem,
    #[error("FieldUnsupported: {0}")]
    FieldUnsupported(&'static str),
    #[error("invalid model: {0}")]
    InvalidModel(&'static str),
    #[error("model does not reproduce sample {n}")]
    ReconstructionFailed { n: usize },
    #[error("start index {t} outside the sample window")]
    OutOfWindow { t: i64 },
    #[error("Undecidable: nearest integer at n = {n} undecided at {precision} bits")]
    Undecidable { n: usize, precision: u32 },
}

/// `c_n = r_1 c_{n-1} + ... + r_M c_{n-M}` on the samples `c_{n0}, c_{n0+1}, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSystem {
    pub order: usize,
    /// `r_1 .. r_M`, with `r_M != 0`.
    pub coefficients: Vec<Rational>,
    pub samples: Vec<Rational>,
    /// Index of the first sample.
    pub start: i64,
}

impl RecurrenceSystem {
    pub fn new(coefficients: Vec<Rational>, samples: Vec<Rational>, start: i64) -> Self {
        RecurrenceSystem {
            order: coefficients.len(),
            coefficients,
            samples,
            start,
        }
    }

    /// Sample with absolute index `n`, if inside the window.
    pub fn sample(&self, n: i64) -> Option<&Rational> {
        let i = n - self.start;
        (i >= 0).then(|| self.samples.get(i as usize)).flatten()
    }

    /// Checks the relation on every in-window index.
    pub fn holds(&self) -> bool {
        satisfies(&self.samples, &self.coefficients, self.order)
    }

    /// Next `count` terms after the window.
    pub fn extend_forward(&self, count: usize) -> Vec<Rational> {
        let mut all = self.samples.clone();
        for _ in 0..count {
            let n = all.len();
            let v = (1..=self.order).fold(Rational::zero(), |acc, i| acc + &self.coefficients[i - 1] * &all[n - i]);
            all.push(v);
        }
        all.split_off(self.samples.len())
    }
}

fn satisfies(c: &[Rational], r: &[Rational], from: usize) -> bool {
    (from..c.len()).all(|n| {
        let v = (1..=r.len()).fold(Rational::zero(), |acc, i| acc + &r[i - 1] * &c[n - i]);
        v == c[n]
    })
}

/// Minimal recurrence fitting every sample.
///
/// An order-`M` relation may start `s` samples late when `M + s <= max_order`;
/// this is the same as an order-`(M+s)` relation with zero trailing
/// coefficients, so the result never claims more than the data support.
pub fn recover_recurrence(samples: &[Rational], max_order: usize) -> Result<RecurrenceSystem, RecurrenceError> {
    if max_order == 0 || samples.len() < 2 * max_order {
        return Err(RecurrenceError::TooFewSamples {
            need: 2 * max_order.max(1),
            got: samples.len(),
        });
    }
    if samples.iter().all(Zero::is_zero) {
        return Err(RecurrenceError::AllZero);
    }
    for m in 1..=max_order {
        for s in 0..=(max_order - m) {
            if s + 2 * m > samples.len() {
                break;
            }
            let window = &samples[s..];
            let c = hankel(window, 0, m);
            let rhs: Vec<Rational> = (0..m).map(|i| window[i + m].clone()).collect();
            let Some(x) = solve(&c, &rhs) else { continue };
            // x_k multiplies c_{n+k}, so r_i = x_{M-i}
            let r: Vec<Rational> = (1..=m).map(|i| x[m - i].clone()).collect();
            if r[m - 1].is_zero() {
                continue;
            }
            if satisfies(window, &r, m) {
                return Ok(RecurrenceSystem::new(r, window.to_vec(), s as i64));
            }
        }
    }
    Err(RecurrenceError::NoRecurrence { max_order })
}

/// `det C_{n0}` at sizes `M` and `M+1` (when the window allows it).
pub fn hankel_minimality(sys: &RecurrenceSystem) -> (Rational, Option<Rational>) {
    let m = sys.order;
    let d = determinant(&hankel(&sys.samples, 0, m));
    let next = (sys.samples.len() > 2 * m).then(|| determinant(&hankel(&sys.samples, 0, m + 1)));
    (d, next)
}

/// `c_{n0-count} .. c_{n0-1}`, in increasing index order.
pub fn extend_backward(sys: &RecurrenceSystem, count: usize) -> Vec<Rational> {
    let m = sys.order;
    let r = &sys.coefficients;
    let mut front: std::collections::VecDeque<Rational> = sys.samples.iter().take(m).cloned().collect();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        // front = c_k .. c_{k+M-1}; solve the relation at c_{k+M-1} for c_{k-1}
        let mut acc = front[m - 1].clone();
        for i in 1..m {
            acc -= &r[i - 1] * &front[m - 1 - i];
        }
        let prev = acc / &r[m - 1];
        front.pop_back();
        front.push_front(prev.clone());
        out.push(prev);
    }
    out.reverse();
    out
}

/// The system moved `count` steps back, with the earlier terms prepended.
pub fn extended_system(sys: &RecurrenceSystem, count: usize) -> RecurrenceSystem {
    let mut samples = extend_backward(sys, count);
    samples.extend(sys.samples.iter().cloned());
    RecurrenceSystem::new(sys.coefficients.clone(), samples, sys.start - count as i64)
}

/// `f(X) = X^M - r_1 X^{M-1} - ... - r_M` and its reciprocal `q(X) = X^M f(1/X)`.
pub fn char_poly(sys: &RecurrenceSystem) -> (RatPolynomial, RatPolynomial) {
    let m = sys.order;
    let mut f = vec![Rational::zero(); m + 1];
    f[m] = Rational::one();
    for (i, r) in sys.coefficients.iter().enumerate() {
        f[m - 1 - i] = -r.clone();
    }
    let f = RatPolynomial::new(f);
    let q = f.reversed(m);
    (f, q)
}

/// `p_t(X) = sum_j (c_{t+j} - sum_{i<=j} r_i c_{t+j-i}) X^j`, so that `F_t q = p_t`.
pub fn numerator_poly(sys: &RecurrenceSystem, t: i64) -> Result<RatPolynomial, RecurrenceError> {
    let m = sys.order;
    let c = |n: i64| sys.sample(n).cloned().ok_or(RecurrenceError::OutOfWindow { t });
    let mut out = Vec::with_capacity(m);
    for j in 0..m as i64 {
        let mut v = c(t + j)?;
        for i in 1..=j {
            v -= &sys.coefficients[i as usize - 1] * c(t + j - i)?;
        }
        out.push(v);
    }
    Ok(RatPolynomial::new(out))
}

/// Checks `F_t(X) q(X) = p_t(X)` through every coefficient the window determines.
pub fn verify_numerator(sys: &RecurrenceSystem, t: i64) -> Result<bool, RecurrenceError> {
    let p = numerator_poly(sys, t)?;
    let (_, q) = char_poly(sys);
    let first = (t - sys.start) as usize;
    let series = RatPolynomial::new(sys.samples[first..].to_vec());
    let horizon = sys.samples.len() - first;
    let prod = (&series * &q).truncate(horizon);
    Ok(prod == p.truncate(horizon))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, rat};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn recovery_examples() {
        let lucas = ints(&[2, 1, 3, 4, 7, 11, 18]);
        let s = recover_recurrence(&lucas, 3).unwrap();
        assert_eq!(s.coefficients, ints(&[1, 1]));
        assert_eq!(s.start, 0);
        let (d, next) = hankel_minimality(&s);
        assert_eq!(d, int(5));
        assert_eq!(next, Some(int(0)));

        let geo = vec![int(1), rat(3, 2), rat(9, 4), rat(27, 8)];
        let s = recover_recurrence(&geo, 2).unwrap();
        assert_eq!(s.coefficients, vec![rat(3, 2)]);

        let s = recover_recurrence(&ints(&[0, 2, 8, 24, 64]), 2).unwrap();
        assert_eq!(s.coefficients, ints(&[4, -4]));

        // a zero root: 5, then powers of 2
        let s = recover_recurrence(&ints(&[5, 1, 2, 4, 8, 16]), 3).unwrap();
        assert_eq!((s.coefficients.clone(), s.start), (ints(&[2]), 1));

        assert!(matches!(
            recover_recurrence(&ints(&[1, 2, 4, 8, 17, 30, 1, 5]), 2),
            Err(RecurrenceError::NoRecurrence { .. })
        ));
        assert_eq!(recover_recurrence(&ints(&[0, 0, 0, 0]), 2), Err(RecurrenceError::AllZero));
    }

    #[test]
    fn backward_examples() {
        let s = recover_recurrence(&ints(&[2, 1, 3, 4, 7, 11, 18]), 2).unwrap();
        assert_eq!(extend_backward(&s, 2), ints(&[3, -1]));
        let s = RecurrenceSystem::new(ints(&[3]), ints(&[1, 3, 9]), 0);
        assert_eq!(extend_backward(&s, 1), vec![rat(1, 3)]);
        let ext = extended_system(&s, 4);
        assert!(ext.holds());
        assert_eq!(&ext.samples[4..], &s.samples[..]);
    }

    #[test]
    fn polynomials() {
        let s = RecurrenceSystem::new(ints(&[1, 1]), ints(&[2, 1, 3, 4, 7, 11, 18, 29]), 0);
        let (f, q) = char_poly(&s);
        assert_eq!(f, RatPolynomial::new(ints(&[-1, -1, 1])));
        assert_eq!(q, RatPolynomial::new(ints(&[1, -1, -1])));
        let p0 = numerator_poly(&s, 0).unwrap();
        assert_eq!(p0, RatPolynomial::new(ints(&[2, -1])));
        assert!(verify_numerator(&s, 0).unwrap());
        // X p_{t+1} = p_t - c_t q
        for t in 0..4 {
            let lhs = numerator_poly(&s, t + 1).unwrap().shift(1);
            let rhs = &numerator_poly(&s, t).unwrap() - &q.scale(s.sample(t).unwrap());
            assert_eq!(lhs, rhs);
        }
        let g = RecurrenceSystem::new(ints(&[3]), ints(&[1, 3, 9, 27]), 0);
        let (f, q) = char_poly(&g);
        assert_eq!((f, q.clone()), (RatPolynomial::new(ints(&[-3, 1])), RatPolynomial::new(ints(&[1, -3]))));
        assert_eq!(numerator_poly(&g, 0).unwrap(), RatPolynomial::one());
        assert!(numerator_poly(&g, 7).is_err());
    }

    proptest! {
        #[test]
        fn forward_backward_round_trip(
            r in proptest::collection::vec(-5i64..6, 1..4),
            init in proptest::collection::vec(-9i64..10, 4),
            back in 1usize..6,
        ) {
            prop_assume!(*r.last().unwrap() != 0);
            let m = r.len();
            let sys = RecurrenceSystem::new(ints(&r), ints(&init[..m]), 0);
            let mut samples = sys.samples.clone();
            samples.extend(sys.extend_forward(2 * m + 4));
            let full = RecurrenceSystem::new(ints(&r), samples.clone(), 0);
            let ext = extended_system(&full, back);
            prop_assert!(ext.holds());
            // stepping forward from the extended front regenerates the originals
            let front = RecurrenceSystem::new(ints(&r), ext.samples[..m].to_vec(), -(back as i64));
            let regen = front.extend_forward(back + samples.len() - m);
            prop_assert_eq!(&regen[back..], &samples[m..]);
        }
    }
}
