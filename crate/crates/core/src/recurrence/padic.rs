//! p-adic valuations, integrality of recurrence coefficients, Newton
//! polygons and a growth diagnostic.

use super::{RecurrenceError, RecurrenceSystem};
use crate::numeric::rational::{self, Rational};
use crate::poly::RatPolynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicContext {
    pub p: BigInt,
}

fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

impl PadicContext {
    pub fn new(p: impl Into<BigInt>) -> Result<Self, RecurrenceError> {
        let p = p.into();
        if !is_prime(&p) {
            return Err(RecurrenceError::NotPrime(p.to_string()));
        }
        Ok(PadicContext { p })
    }

    fn int_valuation(&self, n: &BigInt) -> i64 {
        let mut n = n.abs();
        let mut v = 0;
        loop {
            let (q, r) = n.div_rem(&self.p);
            if !r.is_zero() {
                return v;
            }
            n = q;
            v += 1;
        }
    }

    /// `v_p(x)`; `None` for zero.
    pub fn valuation(&self, x: &Rational) -> Option<i64> {
        (!x.is_zero()).then(|| self.int_valuation(x.numer()) - self.int_valuation(x.denom()))
    }

    /// `p^v` as an exact rational.
    pub fn power(&self, v: i64) -> Rational {
        let m = num_traits::pow(self.p.clone(), v.unsigned_abs() as usize);
        if v >= 0 {
            Rational::from_integer(m)
        } else {
            Rational::new(BigInt::one(), m)
        }
    }

    /// `|x|_p = p^{-v_p(x)}`, with `|0|_p = 0`.
    pub fn abs(&self, x: &Rational) -> Rational {
        self.valuation(x).map_or_else(Rational::zero, |v| self.power(-v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegralityVerdict {
    Certified,
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityReport {
    pub p: BigInt,
    /// `max_n |c_n|_p` over the window.
    pub sample_bound: Rational,
    /// Multiplier `b` making every `b c_n` a p-adic integer.
    pub scaling: Rational,
    pub coefficient_valuations: Vec<Option<i64>>,
    pub verdict: IntegralityVerdict,
}

/// Bounded samples force `|r_i|_p <= 1`; checked on the exact coefficients.
pub fn integrality_check(sys: &RecurrenceSystem, ctx: &PadicContext) -> IntegralityReport {
    let min_v = sys.samples.iter().filter_map(|c| ctx.valuation(c)).min();
    let sample_bound = min_v.map_or_else(Rational::zero, |v| ctx.power(-v));
    let scaling = ctx.power(min_v.map_or(0, |v| (-v).max(0)));
    let coefficient_valuations: Vec<Option<i64>> = sys.coefficients.iter().map(|r| ctx.valuation(r)).collect();
    let ok = coefficient_valuations.iter().all(|v| v.map_or(true, |v| v >= 0));
    IntegralityReport {
        p: ctx.p.clone(),
        sample_bound,
        scaling,
        coefficient_valuations,
        verdict: if ok {
            IntegralityVerdict::Certified
        } else {
            IntegralityVerdict::Violated
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalReport {
    pub certified: bool,
    /// Primes dividing some coefficient denominator.
    pub bad_primes: Vec<BigInt>,
}

/// Integer coefficients, or the primes that prevent it.
pub fn global_integrality(sys: &RecurrenceSystem) -> GlobalReport {
    let mut primes: Vec<BigInt> = sys.coefficients.iter().flat_map(|r| prime_factors(r.denom())).collect();
    primes.sort();
    primes.dedup();
    GlobalReport {
        certified: primes.is_empty(),
        bad_primes: primes,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonSegment {
    pub slope: Rational,
    pub length: usize,
    /// `v_p` of each root on this segment (the negated slope).
    pub root_valuation: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NewtonPolygon {
    pub p: BigInt,
    /// Roots at zero, excluded from the polygon.
    pub zero_roots: usize,
    pub vertices: Vec<(usize, i64)>,
    pub segments: Vec<NewtonSegment>,
    /// Smallest root valuation; `max |alpha|_p = p^{-v}`.
    pub min_root_valuation: Option<Rational>,
    pub max_abs: Option<f64>,
    /// `p`-exponent of `prod max(1, |alpha_l|_p)^{d_l}`.
    pub root_side_exponent: Rational,
    /// `p`-exponent of `max_l |r_l|_p` for the monic polynomial (with `r_0 = 1`).
    pub coefficient_side_exponent: i64,
    pub identity_holds: bool,
}

/// Lower convex hull of `(i, v_p(a_i))` for `f`; segment slopes give the root valuations.
pub fn root_valuations(f: &RatPolynomial, ctx: &PadicContext) -> Result<NewtonPolygon, RecurrenceError> {
    if f.is_zero() {
        return Err(RecurrenceError::ZeroPolynomial);
    }
    let f = f.monic();
    let low = f.low_order();
    let pts: Vec<(usize, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| ctx.valuation(c).map(|v| (i, v)))
        .collect();
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b when it lies on or above the chord a -> pt
            let cross = (b.0 as i128 - a.0 as i128) * (pt.1 as i128 - a.1 as i128)
                - (b.1 as i128 - a.1 as i128) * (pt.0 as i128 - a.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments: Vec<NewtonSegment> = hull
        .windows(2)
        .map(|w| {
            let slope = Rational::new((w[1].1 - w[0].1).into(), ((w[1].0 - w[0].0) as i64).into());
            NewtonSegment {
                root_valuation: -slope.clone(),
                slope,
                length: w[1].0 - w[0].0,
            }
        })
        .collect();
    let min_root_valuation = segments.iter().map(|s| s.root_valuation.clone()).min();
    let p = ctx.p.to_f64().unwrap_or(f64::INFINITY);
    let max_abs = segments
        .iter()
        .map(|s| p.powf(-rational::to_f64(&s.root_valuation)))
        .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
    let root_side_exponent = segments.iter().fold(Rational::zero(), |acc, s| {
        let neg = -s.root_valuation.clone();
        if neg.is_positive() {
            acc + neg * Rational::from_integer(s.length.into())
        } else {
            acc
        }
    });
    let min_coeff_v = pts.iter().map(|&(_, v)| v).min().unwrap_or(0).min(0);
    let coefficient_side_exponent = -min_coeff_v;
    Ok(NewtonPolygon {
        p: ctx.p.clone(),
        zero_roots: low,
        vertices: hull,
        segments,
        min_root_valuation,
        max_abs,
        identity_holds: root_side_exponent == Rational::from_integer(coefficient_side_exponent.into()),
        root_side_exponent,
        coefficient_side_exponent,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthVerdict {
    Bounded,
    SubexponentialSuspect,
    ExponentialGrowth,
}

/// A heuristic on a finite window, not a proof.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub valuations: Vec<Option<i64>>,
    /// Change per index of the running minimum valuation over the second half.
    pub tail_slope: Rational,
    /// Indices in the second half where `|S_n|_p` exceeds every earlier value.
    pub tail_records: usize,
    pub verdict: GrowthVerdict,
    pub diagnostic: bool,
}

/// Classifies the growth of `|S_n|_p` along the samples (at least 8).
pub fn growth_check(samples: &[Rational], ctx: &PadicContext) -> Result<GrowthReport, RecurrenceError> {
    if samples.len() < 8 {
        return Err(RecurrenceError::TooFewSamples { need: 8, got: samples.len() });
    }
    let valuations: Vec<Option<i64>> = samples.iter().map(|s| ctx.valuation(s)).collect();
    let mut running: Vec<Option<i64>> = Vec::with_capacity(samples.len());
    let mut records = vec![false; samples.len()];
    let mut cur: Option<i64> = None;
    for (i, v) in valuations.iter().enumerate() {
        if let Some(v) = *v {
            if cur.map_or(true, |c| v < c) {
                records[i] = cur.is_some();
                cur = Some(v);
            }
        }
        running.push(cur);
    }
    let mid = samples.len() / 2;
    let last = samples.len() - 1;
    let tail_records = records[mid + 1..].iter().filter(|&&r| r).count();
    let tail_slope = match (running[mid], running[last]) {
        (Some(a), Some(b)) => Rational::new((b - a).into(), ((last - mid) as i64).into()),
        _ => Rational::zero(),
    };
    let verdict = if tail_records == 0 {
        GrowthVerdict::Bounded
    } else if tail_slope.is_negative() && 4 * tail_records >= last - mid {
        GrowthVerdict::ExponentialGrowth
    } else {
        GrowthVerdict::SubexponentialSuspect
    };
    Ok(GrowthReport {
        valuations,
        tail_slope,
        tail_records,
        verdict,
        diagnostic: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, pow, rat};
    use crate::recurrence::recover_recurrence;

    #[test]
    fn valuations() {
        let c = PadicContext::new(3).unwrap();
        assert_eq!(c.valuation(&rat(18, 5)), Some(2));
        assert_eq!(c.valuation(&rat(5, 27)), Some(-3));
        assert_eq!(c.valuation(&int(0)), None);
        assert_eq!(c.abs(&rat(5, 27)), int(27));
        assert_eq!(c.abs(&int(9)), rat(1, 9));
        assert!(PadicContext::new(15).is_err());
        assert_eq!(prime_factors(&BigInt::from(360)), vec![2.into(), 3.into(), 5.into()]);
    }

    #[test]
    fn integrality() {
        let two = PadicContext::new(2).unwrap();
        let lucas: Vec<Rational> = [2, 1, 3, 4, 7, 11, 18, 29].iter().map(|&x| int(x)).collect();
        let s = recover_recurrence(&lucas, 3).unwrap();
        assert_eq!(integrality_check(&s, &two).verdict, IntegralityVerdict::Certified);
        assert!(global_integrality(&s).certified);

        let geo: Vec<Rational> = (0..6).map(|n| pow(&rat(3, 2), n)).collect();
        let s = recover_recurrence(&geo, 2).unwrap();
        let rep = integrality_check(&s, &two);
        assert_eq!(rep.verdict, IntegralityVerdict::Violated);
        assert_eq!(rep.sample_bound, int(32));
        let g = global_integrality(&s);
        assert_eq!((g.certified, g.bad_primes), (false, vec![BigInt::from(2)]));
    }

    #[test]
    fn newton_polygons() {
        let two = PadicContext::new(2).unwrap();
        let np = root_valuations(&RatPolynomial::new(vec![rat(-3, 2), int(1)]), &two).unwrap();
        assert_eq!(np.segments[0].slope, int(1));
        assert_eq!(np.segments[0].root_valuation, int(-1));
        assert_eq!(np.max_abs, Some(2.0));
        assert!(np.identity_holds);

        // X^2 - p^2 has both roots of valuation 1
        let p = PadicContext::new(5).unwrap();
        let np = root_valuations(&RatPolynomial::new(vec![int(-25), int(0), int(1)]), &p).unwrap();
        assert_eq!(np.segments.len(), 1);
        assert_eq!((np.segments[0].root_valuation.clone(), np.segments[0].length), (int(1), 2));
        assert_eq!(np.max_abs, Some(0.2));

        // (X - 1/4)(X - 2)(X - 3) at p = 2: valuations -2, 1, 0
        let f = &(&RatPolynomial::linear_root(rat(1, 4)) * &RatPolynomial::linear_root(int(2)))
            * &RatPolynomial::linear_root(int(3));
        let np = root_valuations(&f, &two).unwrap();
        let mut vals: Vec<Rational> = np
            .segments
            .iter()
            .flat_map(|s| std::iter::repeat(s.root_valuation.clone()).take(s.length))
            .collect();
        vals.sort();
        assert_eq!(vals, vec![int(-2), int(0), int(1)]);
        assert!(np.identity_holds);

        // fractional slope: X^2 - 2 has two roots of valuation 1/2
        let np = root_valuations(&RatPolynomial::new(vec![int(-2), int(0), int(1)]), &two).unwrap();
        assert_eq!(np.segments[0].root_valuation, rat(1, 2));

        let np = root_valuations(&RatPolynomial::new(vec![int(0), int(0), rat(-9, 8), int(1)]), &two).unwrap();
        assert_eq!(np.zero_roots, 2);
        assert!(np.identity_holds);
    }

    #[test]
    fn growth() {
        let two = PadicContext::new(2).unwrap();
        let three_pow: Vec<Rational> = (0..20).map(|n| pow(&int(3), n)).collect();
        assert_eq!(growth_check(&three_pow, &two).unwrap().verdict, GrowthVerdict::Bounded);
        let g: Vec<Rational> = (0..20).map(|n| pow(&rat(3, 2), n)).collect();
        let r = growth_check(&g, &two).unwrap();
        assert_eq!(r.verdict, GrowthVerdict::ExponentialGrowth);
        assert_eq!(r.tail_slope, int(-1));
        assert!(r.diagnostic);
        // denominators 2^{floor(log2 n)}: slow growth
        let slow: Vec<Rational> = (1..40u32).map(|n| Rational::new(1.into(), BigInt::from(1u64 << (31 - n.leading_zeros())))).collect();
        assert_eq!(growth_check(&slow, &two).unwrap().verdict, GrowthVerdict::SubexponentialSuspect);
        assert!(growth_check(&g[..5], &two).is_err());
    }
}
