//! Boyd's integer recursion `a_{n+1} = [a_n^2 / a_{n-1}] + f(n)` and the
//! real numbers `alpha` it pins down, with `|a_n - lambda alpha^n|` certified
//! against `(A-1)^-1 (alpha-1)^-1`.

use crate::numeric::ball::Ball;
use crate::numeric::modone::certified_nearest;
use crate::numeric::rational::{self, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BoydError {
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),
    #[error("EmptyRange: no integer a1 in the admissible interval")]
    EmptyRange,
    #[error("a1 = {a1} lies outside the admissible range [{lo}, {hi}]")]
    A1OutOfRange { a1: BigInt, lo: BigInt, hi: BigInt },
    #[error("DegenerateSequence: a_n - delta <= 0")]
    DegenerateSequence,
    #[error("sequence needs at least 3 terms")]
    TooShort,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoydParams {
    pub a: Rational,
    pub b: Rational,
    pub a0: BigInt,
    /// `f(1), f(2), ...`; values past the end are 0.
    pub f: Vec<u8>,
    /// Index of the last term.
    pub n: usize,
}

impl BoydParams {
    pub fn validate(&self) -> Result<(), BoydError> {
        check_hypotheses(&self.a, &self.b, &self.a0)?;
        if self.f.iter().any(|&x| x > 1) {
            return Err(BoydError::InvalidParams("f takes values in {0, 1}"));
        }
        if self.n < 2 {
            return Err(BoydError::InvalidParams("need N >= 2"));
        }
        Ok(())
    }

    fn f_at(&self, n: usize) -> u8 {
        self.f.get(n - 1).copied().unwrap_or(0)
    }
}

fn check_hypotheses(a: &Rational, b: &Rational, a0: &BigInt) -> Result<(), BoydError> {
    let three = rational::int(3);
    if !(*a > three && a < b) {
        return Err(BoydError::InvalidParams("need 3 < A < B"));
    }
    let one = Rational::one();
    let min_a0 = (a + &one) / ((a - &one) * (b - a));
    if Rational::from_integer(a0.clone()) <= min_a0 {
        return Err(BoydError::InvalidParams("need a0 > (A+1)/((A-1)(B-A))"));
    }
    Ok(())
}

/// Integers strictly inside `(a0 A + 1/(A-1), a0 B - 1/(A-1))`.
pub fn boyd_a1_range(a: &Rational, b: &Rational, a0: &BigInt) -> Result<(BigInt, BigInt), BoydError> {
    check_hypotheses(a, b, a0)?;
    let e = Rational::one() / (a - Rational::one());
    let a0q = Rational::from_integer(a0.clone());
    let lo = rational::floor(&(&a0q * a + &e)) + 1;
    let hi = rational::ceil(&(&a0q * b - &e)) - 1;
    if lo > hi {
        return Err(BoydError::EmptyRange);
    }
    Ok((lo, hi))
}

/// `a_0 .. a_N`.
pub fn boyd_sequence(params: &BoydParams, a1: &BigInt) -> Result<Vec<BigInt>, BoydError> {
    params.validate()?;
    let (lo, hi) = boyd_a1_range(&params.a, &params.b, &params.a0)?;
    if *a1 < lo || *a1 > hi {
        return Err(BoydError::A1OutOfRange {
            a1: a1.clone(),
            lo,
            hi,
        });
    }
    Ok(extend(params, a1, params.n))
}

fn extend(params: &BoydParams, a1: &BigInt, last: usize) -> Vec<BigInt> {
    let mut a = vec![params.a0.clone(), a1.clone()];
    for n in 1..last {
        let next = (&a[n] * &a[n]).div_floor(&a[n - 1]) + BigInt::from(params.f_at(n));
        a.push(next);
    }
    a
}

fn bits(x: &BigInt) -> u32 {
    x.bits() as u32
}

/// Enclosures of `alpha = lim a_{n+1}/a_n` and `lambda = lim a_n alpha^-n`,
/// derived from the last two terms with `delta = (A-1)^-2` (from `alpha >= A`).
pub fn boyd_limits(seq: &[BigInt], a: &Rational) -> Result<(Ball, Ball), BoydError> {
    if seq.len() < 3 {
        return Err(BoydError::TooShort);
    }
    let one = Rational::one();
    let delta = &one / ((a - &one) * (a - &one));
    let n = seq.len() - 2;
    let an = Rational::from_integer(seq[n].clone());
    let an1 = Rational::from_integer(seq[n + 1].clone());
    if &an - &delta <= Rational::zero() {
        return Err(BoydError::DegenerateSequence);
    }
    let prec = 64 + 2 * bits(&seq[n + 1]);
    let lo = (&an1 - &delta) / (&an + &delta);
    let hi = (&an1 + &delta) / (&an - &delta);
    let alpha = Ball::from_rational_endpoints(&lo, &hi, prec);
    let last = n + 1;
    let pow = alpha.pow(last as u64);
    let a_last = Rational::from_integer(seq[last].clone());
    let l_lo = Ball::from_rational(&(&a_last - &delta), prec).div(&pow);
    let l_hi = Ball::from_rational(&(&a_last + &delta), prec).div(&pow);
    let (Some(l_lo), Some(l_hi)) = (l_lo, l_hi) else {
        return Err(BoydError::DegenerateSequence);
    };
    let lambda = l_lo.hull(&l_hi);
    Ok((alpha, lambda))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    Violated,
    Undecided,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundCheck {
    pub n: usize,
    /// Enclosure of `|a_n - lambda alpha^n|`.
    pub error: Ball,
    pub verdict: Verdict,
}

/// `(A-1)^-1 (alpha-1)^-1` as a ball.
pub fn delta_bound(alpha: &Ball, a: &Rational) -> Ball {
    let p = alpha.prec();
    let am1 = alpha - &Ball::from_int(1, p);
    let big_a = Ball::from_rational(&(a - Rational::one()), p);
    Ball::from_int(1, p)
        .div(&(&am1 * &big_a))
        .expect("alpha > 1")
}

/// Checks `|a_n - lambda alpha^n| <= (A-1)^-1 (alpha-1)^-1` for every term.
pub fn verify_boyd_bound(seq: &[BigInt], alpha: &Ball, lambda: &Ball, a: &Rational) -> Vec<BoundCheck> {
    let delta = delta_bound(alpha, a);
    let p = alpha.prec();
    let mut power = Ball::from_int(1, p);
    seq.iter()
        .enumerate()
        .map(|(n, an)| {
            if n > 0 {
                power = &power * alpha;
            }
            let error = (&Ball::from_bigint(an, p) - &(lambda * &power)).abs();
            let verdict = if error.hi() <= delta.lo() {
                Verdict::Certified
            } else if error.lo() > delta.hi() {
                Verdict::Violated
            } else {
                Verdict::Undecided
            };
            BoundCheck { n, error, verdict }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoydResult {
    pub a: Vec<BigInt>,
    pub alpha: Ball,
    pub lambda: Ball,
    pub delta_bound: Ball,
    pub checks: Vec<BoundCheck>,
    /// `E(lambda)` when decided.
    pub nearest_lambda: Option<BigInt>,
    /// Extra terms used beyond `N` to tighten the limit enclosures.
    pub guard: usize,
}

impl BoydResult {
    pub fn all_certified(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Certified)
    }
}

/// Full run: the sequence to `N`, limits from `N + guard` terms, and the
/// bound checked for `n <= N`.
pub fn run_boyd(params: &BoydParams, a1: &BigInt, guard: usize) -> Result<BoydResult, BoydError> {
    let head = boyd_sequence(params, a1)?;
    let long = extend(params, a1, params.n + guard);
    let (alpha, lambda) = boyd_limits(&long, &params.a)?;
    let checks = verify_boyd_bound(&head, &alpha, &lambda, &params.a);
    let delta = delta_bound(&alpha, &params.a);
    let nearest_lambda = certified_nearest(&lambda);
    Ok(BoydResult {
        a: head,
        alpha,
        lambda,
        delta_bound: delta,
        checks,
        nearest_lambda,
        guard,
    })
}

/// Default number of guard terms for [`run_boyd`].
pub const DEFAULT_GUARD: usize = 16;

/// `true` when the enclosures are pairwise disjoint.
pub fn pairwise_disjoint(balls: &[Ball]) -> bool {
    let mut v: Vec<&Ball> = balls.iter().collect();
    v.sort_by(|x, y| x.lo().cmp(&y.lo()));
    v.windows(2).all(|w| w[0].hi() < w[1].lo())
}
