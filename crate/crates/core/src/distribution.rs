//! Finite-sample statistics for distribution modulo one: interval frequencies
//! with half weight on boundary hits, Weyl sums and the star discrepancy.

use crate::numeric::ball::Ball;
use crate::numeric::complex::ComplexBall;
use crate::numeric::dyadic::Dyadic;
use crate::numeric::modone::certified_floor;
use crate::numeric::rational::{self, Rational};
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DistributionError {
    #[error("IntervalInvalid: need s < t < s + 1")]
    IntervalInvalid,
    #[error("BoundaryUndecidable: sample {index} straddles an interval end or an integer")]
    BoundaryUndecidable { index: usize },
    #[error("empty sample sequence")]
    Empty,
    #[error("Weyl frequency h must be nonzero")]
    ZeroFrequency,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Sample {
    Exact(Rational),
    Enclosed(Ball),
}

impl Sample {
    fn exact_value(&self) -> Option<Rational> {
        match self {
            Sample::Exact(q) => Some(q.clone()),
            Sample::Enclosed(b) if b.is_exact() => Some(b.mid().to_rational()),
            Sample::Enclosed(_) => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SampleSequence {
    pub values: Vec<Sample>,
}

impl SampleSequence {
    pub fn from_rationals(v: impl IntoIterator<Item = Rational>) -> Self {
        SampleSequence {
            values: v.into_iter().map(Sample::Exact).collect(),
        }
    }

    pub fn from_balls(v: impl IntoIterator<Item = Ball>) -> Self {
        SampleSequence {
            values: v.into_iter().map(Sample::Enclosed).collect(),
        }
    }

    /// `n x` for `n = 1..=count`.
    pub fn multiples(x: &Ball, count: usize) -> Self {
        Self::from_balls((1..=count).map(|n| x.mul_rational(&rational::int(n as i64))))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn rationals(&self) -> Option<Vec<Rational>> {
        self.values.iter().map(Sample::exact_value).collect()
    }
}

/// `chi_{s,t}(x)`: 1 inside, 1/2 on either end (mod 1), 0 outside.
fn chi_exact(x: &Rational, s: &Rational, len: &Rational) -> Rational {
    let u = rational::frac(&(x - s));
    if u.is_zero() || u == *len {
        rational::rat(1, 2)
    } else if u < *len {
        Rational::one()
    } else {
        Rational::zero()
    }
}

fn chi_ball(x: &Ball, s: &Rational, len: &Rational) -> Option<Rational> {
    let v = x - &Ball::from_rational(s, x.prec().max(64));
    let k = certified_floor(&v)?;
    let kq = Rational::from_integer(k);
    let lo = v.lo().to_rational() - &kq;
    let hi = v.hi().to_rational() - &kq;
    if lo.is_zero() {
        return None;
    }
    if hi < *len {
        Some(Rational::one())
    } else if lo > *len {
        Some(Rational::zero())
    } else {
        None
    }
}

/// `(1/N) sum chi_{s,t}(x_n)`.
pub fn interval_count(seq: &SampleSequence, s: &Rational, t: &Rational) -> Result<Rational, DistributionError> {
    if !(s < t && *t < s + Rational::one()) {
        return Err(DistributionError::IntervalInvalid);
    }
    if seq.is_empty() {
        return Err(DistributionError::Empty);
    }
    let len = t - s;
    let weights: Result<Vec<Rational>, DistributionError> = seq
        .values
        .par_iter()
        .enumerate()
        .map(|(index, x)| match x.exact_value() {
            Some(q) => Ok(chi_exact(&q, s, &len)),
            None => match x {
                Sample::Enclosed(b) => chi_ball(b, s, &len).ok_or(DistributionError::BoundaryUndecidable { index }),
                Sample::Exact(_) => unreachable!(),
            },
        })
        .collect();
    let total: Rational = weights?.into_iter().fold(Rational::zero(), |a, w| a + w);
    Ok(total / rational::int(seq.len() as i64))
}

/// `exp(2 pi i x)` with a shared enclosure of `pi`.
fn unit(x: &Ball, two_pi: &Ball) -> ComplexBall {
    let (c, s) = (x * two_pi).cos_sin();
    ComplexBall::new(c, s)
}

/// Reduces `h x` to a small representative mod 1 before the trig evaluation.
fn reduced(x: &Sample, h: i64, prec: u32) -> Ball {
    match x.exact_value() {
        Some(q) => Ball::from_rational(&rational::frac(&(q * rational::int(h))), prec),
        None => {
            let Sample::Enclosed(b) = x else { unreachable!() };
            let hx = b.with_prec(prec).mul_rational(&rational::int(h));
            let k = hx.mid().floor();
            &hx - &Ball::from_bigint(&k, prec)
        }
    }
}

/// Encloses `(1/N) sum_n exp(2 pi i h x_n)`.
pub fn weyl_sum(seq: &SampleSequence, h: i64, prec: u32) -> Result<ComplexBall, DistributionError> {
    if h == 0 {
        return Err(DistributionError::ZeroFrequency);
    }
    if seq.is_empty() {
        return Err(DistributionError::Empty);
    }
    let prec = prec.max(64);
    let two_pi = Ball::pi(prec + 8).mul_pow2(1);
    let terms: Vec<ComplexBall> = seq
        .values
        .par_iter()
        .map(|x| unit(&reduced(x, h, prec), &two_pi))
        .collect();
    let zero = ComplexBall::real(Ball::zero(prec));
    let sum = terms.iter().fold(zero, |acc, z| &acc + z);
    let n = seq.len() as u64;
    Ok(ComplexBall::new(sum.re.div_int(n), sum.im.div_int(n)))
}

/// `D*_N` of exact samples.
pub fn star_discrepancy(values: &[Rational]) -> Rational {
    let mut y: Vec<Rational> = values.iter().map(rational::frac).collect();
    y.sort();
    star_of_sorted(&y)
}

fn star_of_sorted(y: &[Rational]) -> Rational {
    let n = rational::int(y.len() as i64);
    y.iter()
        .enumerate()
        .map(|(i, yi)| {
            let above = rational::int(i as i64 + 1) / &n - yi;
            let below = yi - rational::int(i as i64) / &n;
            above.max(below)
        })
        .max()
        .unwrap_or_else(Rational::zero)
}

/// `D*_N` for enclosed samples: moving every point by at most `r` moves the
/// star discrepancy by at most `r`, so the midpoint value widened by the
/// largest radius is an enclosure.
pub fn star_discrepancy_enclosure(seq: &SampleSequence) -> Result<Ball, DistributionError> {
    if seq.is_empty() {
        return Err(DistributionError::Empty);
    }
    let mut mids = Vec::with_capacity(seq.len());
    let mut radius = Dyadic::zero();
    for (index, x) in seq.values.iter().enumerate() {
        match x.exact_value() {
            Some(q) => mids.push(rational::frac(&q)),
            None => {
                let Sample::Enclosed(b) = x else { unreachable!() };
                let k = certified_floor(b).ok_or(DistributionError::BoundaryUndecidable { index })?;
                mids.push(b.mid().to_rational() - Rational::from_integer(k));
                radius = radius.max(b.rad().clone());
            }
        }
    }
    mids.sort();
    let d = star_of_sorted(&mids);
    let r = radius.to_rational();
    Ok(Ball::from_rational_endpoints(&(&d - &r), &(&d + &r), 64))
}

#[derive(Clone, Debug, PartialEq)]
pub struct UDReport {
    pub n: usize,
    pub interval_frequencies: Vec<(Rational, Rational, Rational)>,
    pub weyl_sums: Vec<(i64, ComplexBall)>,
    pub star_discrepancy: Ball,
}

pub fn ud_report(
    seq: &SampleSequence,
    intervals: &[(Rational, Rational)],
    hs: &[i64],
    prec: u32,
) -> Result<UDReport, DistributionError> {
    let interval_frequencies = intervals
        .iter()
        .map(|(s, t)| Ok((s.clone(), t.clone(), interval_count(seq, s, t)?)))
        .collect::<Result<Vec<_>, DistributionError>>()?;
    let weyl_sums = hs
        .iter()
        .map(|&h| Ok((h, weyl_sum(seq, h, prec)?)))
        .collect::<Result<Vec<_>, DistributionError>>()?;
    let star_discrepancy = match seq.rationals() {
        Some(v) => {
            let d = star_discrepancy(&v);
            Ball::from_rational_endpoints(&d, &d, prec.max(64))
        }
        None => star_discrepancy_enclosure(seq)?,
    };
    Ok(UDReport {
        n: seq.len(),
        interval_frequencies,
        weyl_sums,
        star_discrepancy,
    })
}
