//! P.V. / Salem classification of monic irreducible integer polynomials.
//!
//! Roots on the unit circle are never decided numerically. A root `z` with
//! `|z| = 1` satisfies `1/z = conj(z)`, so it is a common root of `p` and its
//! reciprocal; the gcd is self-reciprocal and `y = X + 1/X` turns its circle
//! roots into real roots in `(-2, 2)`, which Sturm sequences count exactly.

use super::roots::{isolate_roots, power_sum_ball, power_sums, RootProfile, ROOT_PRECISION_CAP};
use super::AlgebraicError;
use crate::numeric::ball::Ball;
use crate::numeric::dyadic::Dyadic;
use crate::numeric::modone::distance_range;
use crate::numeric::precision::PrecisionPolicy;
use crate::numeric::rational::{self, Rational};
use crate::poly::{IntPolynomial, RatPolynomial};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    PV,
    Salem,
    Neither,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::PV => "PV",
            Kind::Salem => "Salem",
            Kind::Neither => "Neither",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub kind: Kind,
    pub witness: RootProfile,
    /// Roots on `|z| = 1`, counted exactly.
    pub boundary_roots: usize,
    /// Roots certified strictly outside the closed unit disc.
    pub outside_roots: usize,
    /// `gcd(p, X^deg p(1/X))`, primitive with positive leading coefficient.
    pub reciprocal_gcd: IntPolynomial,
}

fn sign_of(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn sturm_chain(h: &RatPolynomial) -> Vec<RatPolynomial> {
    let mut chain = vec![h.clone(), h.derivative()];
    while chain.last().is_some_and(|p| !p.is_zero()) {
        let n = chain.len();
        let r = chain[n - 2].div_rem(&chain[n - 1]).1;
        chain.push(-&r);
    }
    chain.pop();
    chain
}

fn sign_changes(chain: &[RatPolynomial], x: &Rational) -> usize {
    let signs: Vec<i32> = chain.iter().map(|p| sign_of(&p.eval(x))).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct real roots of `h` in the half-open interval `(a, b]`.
pub fn sturm_count(h: &RatPolynomial, a: &Rational, b: &Rational) -> usize {
    if h.deg() == 0 {
        return 0;
    }
    let chain = sturm_chain(h);
    sign_changes(&chain, a) - sign_changes(&chain, b)
}

/// `gcd(p, reciprocal(p))` over the rationals, as a primitive integer polynomial.
pub fn reciprocal_gcd(p: &IntPolynomial) -> IntPolynomial {
    let r = p.to_rational();
    let g = r.gcd(&r.reciprocal());
    g.to_primitive_int()
}

/// Roots of a square-free polynomial on the unit circle.
fn circle_roots_squarefree(g: &RatPolynomial) -> usize {
    let mut g = g.clone();
    let mut count = 0;
    for root in [1i64, -1] {
        let lin = RatPolynomial::linear_root(rational::int(root));
        if let Some(q) = g.exact_div(&lin) {
            g = q;
            count += 1;
        }
    }
    if g.deg() == 0 {
        return count;
    }
    // What is left is palindromic of even degree 2m: X^-m g = c_m + sum c_{m+k} D_k(y).
    let m = g.deg() / 2;
    let c = g.coeffs().to_vec();
    let y = RatPolynomial::linear_root(Rational::zero());
    let mut d_prev = RatPolynomial::constant(rational::int(2));
    let mut d_cur = y.clone();
    let mut h = RatPolynomial::constant(c[m].clone());
    for k in 1..=m {
        h = &h + &d_cur.scale(&c[m + k]);
        let next = &(&y * &d_cur) - &d_prev;
        d_prev = d_cur;
        d_cur = next;
    }
    let two = rational::int(2);
    let mut inside = sturm_count(&h, &-two.clone(), &two);
    if h.eval(&two).is_zero() {
        inside -= 1;
    }
    count + 2 * inside
}

/// Number of roots of `p` on the unit circle, with multiplicity.
pub fn unit_circle_roots(p: &IntPolynomial) -> usize {
    p.to_rational()
        .squarefree_factors()
        .into_iter()
        .map(|(k, f)| {
            let g = f.gcd(&f.reciprocal());
            k * circle_roots_squarefree(&g)
        })
        .sum()
}

/// A nontrivial factor of a monic square-free `p`, found from products of
/// conjugation-closed root subsets.
fn find_factor(p: &IntPolynomial) -> Result<Option<IntPolynomial>, AlgebraicError> {
    let d = p.deg();
    let rat = p.to_rational();
    for (_, f) in rat.squarefree_factors() {
        if f.deg() < d {
            return Ok(Some(f.to_primitive_int()));
        }
    }
    // rational roots are integers dividing p(0)
    if p.coeff(0).is_zero() {
        return Ok(Some(IntPolynomial::from_i64s(&[0, 1])));
    }
    let mut prec = 128 + 8 * d as u32;
    loop {
        let prof = isolate_roots(p, prec)?;
        // units: a real root or a conjugate pair, as a real monic factor
        let mut units: Vec<Vec<Ball>> = Vec::new();
        let mut i = 0;
        while i < prof.roots.len() {
            let r = &prof.roots[i];
            if r.is_real {
                units.push(vec![-&r.value.re, Ball::from_int(1, prec)]);
                i += 1;
            } else {
                let re = &r.value.re;
                let n = r.value.norm_sqr();
                units.push(vec![n, -&re.mul_pow2(1), Ball::from_int(1, prec)]);
                i += 2;
            }
        }
        if units.len() > 24 {
            return Err(AlgebraicError::PrecisionExhausted { cap: prec });
        }
        let mut wide = false;
        for mask in 1u32..(1 << units.len()) - 1 {
            let deg: usize = (0..units.len())
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| units[k].len() - 1)
                .sum();
            if deg > d / 2 {
                continue;
            }
            let mut prod = vec![Ball::from_int(1, prec)];
            for (k, u) in units.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    prod = ball_poly_mul(&prod, u, prec);
                }
            }
            match integer_candidate(&prod) {
                Candidate::None => {}
                Candidate::Wide => wide = true,
                Candidate::Poly(c) => {
                    if rat.exact_div(&c.to_rational()).is_some() {
                        return Ok(Some(c));
                    }
                }
            }
        }
        if !wide {
            return Ok(None);
        }
        if prec >= ROOT_PRECISION_CAP {
            return Err(AlgebraicError::PrecisionExhausted { cap: ROOT_PRECISION_CAP });
        }
        prec *= 2;
    }
}

enum Candidate {
    None,
    Wide,
    Poly(IntPolynomial),
}

fn ball_poly_mul(a: &[Ball], b: &[Ball], prec: u32) -> Vec<Ball> {
    let mut out = vec![Ball::zero(prec); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn integer_candidate(coeffs: &[Ball]) -> Candidate {
    let mut ints = Vec::with_capacity(coeffs.len());
    let mut wide = false;
    for c in coeffs {
        let lo = c.lo().ceil();
        let hi = c.hi().floor();
        if lo > hi {
            return Candidate::None;
        }
        if lo != hi {
            wide = true;
        }
        ints.push(lo);
    }
    if wide {
        Candidate::Wide
    } else {
        Candidate::Poly(IntPolynomial::new(ints))
    }
}

fn check_minimal(p: &IntPolynomial) -> Result<(), AlgebraicError> {
    if p.is_zero() {
        return Err(AlgebraicError::ZeroPolynomial);
    }
    if p.deg() == 0 {
        return Err(AlgebraicError::ConstantPolynomial);
    }
    if !p.is_monic() {
        return Err(AlgebraicError::NotMonic);
    }
    if let Some(f) = find_factor(p)? {
        return Err(AlgebraicError::Reducible { factor: f });
    }
    Ok(())
}

/// Classifies the dominant root of a monic irreducible integer polynomial.
pub fn classify(poly: &IntPolynomial) -> Result<Classification, AlgebraicError> {
    classify_with(poly, &PrecisionPolicy::new(64, ROOT_PRECISION_CAP))
}

/// [`classify`] with root isolation escalating along `policy`.
pub fn classify_with(poly: &IntPolynomial, policy: &PrecisionPolicy) -> Result<Classification, AlgebraicError> {
    check_minimal(poly)?;
    let boundary = unit_circle_roots(poly);
    let one = Dyadic::one();
    let cap = policy.max_bits.min(ROOT_PRECISION_CAP);
    let mut prec = policy.initial_bits.min(cap);
    loop {
        let prof = isolate_roots(poly, prec)?;
        let mut outside = 0;
        let mut undecided = 0;
        for r in &prof.roots {
            let m = r.modulus();
            if m.lo() > one {
                outside += r.multiplicity;
            } else if !(m.hi() < one) {
                undecided += r.multiplicity;
            }
        }
        // exactly `boundary` roots sit on the circle; the rest must separate
        if undecided == boundary {
            let dominant_real = prof.dominant_root().is_some();
            let kind = if outside == 1 && dominant_real && boundary == 0 {
                Kind::PV
            } else if outside == 1 && dominant_real && boundary >= 1 {
                Kind::Salem
            } else {
                Kind::Neither
            };
            return Ok(Classification {
                kind,
                witness: prof,
                boundary_roots: boundary,
                outside_roots: outside,
                reciprocal_gcd: reciprocal_gcd(poly),
            });
        }
        if prec >= cap {
            return Err(AlgebraicError::PrecisionExhausted { cap });
        }
        prec = (prec * 2).min(cap);
    }
}

/// `alpha^n` split as `s_n + offset` with `s_n` the exact trace.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerResidue {
    pub n: usize,
    pub trace: BigInt,
    /// `alpha^n - s_n = -(sum of conjugates^n)`.
    pub offset: Ball,
    /// `||alpha^n||`.
    pub distance: Ball,
    /// `E(alpha^n) = s_n` is certified.
    pub nearest_is_trace: bool,
}

/// `alpha^n - s_n` for the dominant root of a classified polynomial, `n = 0..=n_max`.
pub fn power_offsets(
    poly: &IntPolynomial,
    class: &Classification,
    n_max: usize,
    prec: u32,
) -> Vec<PowerResidue> {
    let traces = power_sums(poly, n_max);
    let conj = class.witness.conjugates();
    let half = rational::rat(1, 2);
    traces
        .into_iter()
        .enumerate()
        .map(|(n, trace)| {
            if n == 0 {
                return PowerResidue {
                    n,
                    trace,
                    offset: Ball::zero(prec),
                    distance: Ball::zero(prec),
                    nearest_is_trace: true,
                };
            }
            let s = power_sum_ball(&conj, n as u64, prec);
            let offset = -&s.re;
            let (lo, hi) = (offset.lo().to_rational(), offset.hi().to_rational());
            let nearest_is_trace = lo >= -half.clone() && hi < half;
            let distance = if nearest_is_trace {
                offset.abs()
            } else {
                let (a, b) = distance_range(&lo, &hi);
                Ball::from_rational_endpoints(&a, &b, prec)
            };
            PowerResidue {
                n,
                trace,
                offset,
                distance,
                nearest_is_trace,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct PvResidues {
    pub classification: Classification,
    pub entries: Vec<PowerResidue>,
    /// Rational upper bound on the largest conjugate modulus.
    pub rho: Rational,
    /// Least `n` with `(deg - 1) rho^n < 1/2`; from there on `E(alpha^n) = s_n`.
    pub threshold: usize,
}

/// `||alpha^n||` for a P.V. number, certified through the exact traces.
pub fn pv_power_residues(
    poly: &IntPolynomial,
    n_max: usize,
    prec: u32,
) -> Result<PvResidues, AlgebraicError> {
    let class = classify(poly)?;
    if class.kind != Kind::PV {
        return Err(AlgebraicError::NotPV(class.kind));
    }
    let prec = prec.max(64);
    let rho = class
        .witness
        .max_other_modulus
        .as_ref()
        .map(|m| m.hi().to_rational())
        .unwrap_or_else(Rational::zero);
    let threshold = pv_threshold(poly.deg(), &rho);
    let entries = power_offsets(poly, &class, n_max, prec + 2 * bits(n_max));
    Ok(PvResidues {
        classification: class,
        entries,
        rho,
        threshold,
    })
}

fn bits(n: usize) -> u32 {
    usize::BITS - n.leading_zeros()
}

fn pv_threshold(deg: usize, rho: &Rational) -> usize {
    let c = rational::int(deg as i64 - 1);
    let half = rational::rat(1, 2);
    let mut n = 0usize;
    let mut t = c;
    while t >= half {
        t *= rho;
        n += 1;
        assert!(n < 1 << 20, "conjugate modulus bound must be below one");
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, rat};

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn classification_examples() {
        let c = classify(&poly(&[-1, -1, 1])).unwrap();
        assert_eq!(c.kind, Kind::PV);
        assert_eq!(c.boundary_roots, 0);
        let m = c.witness.max_other_modulus.clone().unwrap();
        assert!(m.lo().to_rational() > rat(618, 1000) && m.hi().to_rational() < rat(619, 1000));

        let c = classify(&poly(&[-1, -1, 0, 1])).unwrap();
        assert_eq!(c.kind, Kind::PV);

        let salem = poly(&[1, -1, -1, -1, 1]);
        let c = classify(&salem).unwrap();
        assert_eq!(c.kind, Kind::Salem);
        assert_eq!(c.boundary_roots, 2);
        assert_eq!(c.outside_roots, 1);
        assert_eq!(c.reciprocal_gcd, salem);
        let dom = c.witness.dominant_root().unwrap();
        assert!(dom.value.re.lo().to_rational() > rat(1722, 1000));
        assert!(dom.value.re.hi().to_rational() < rat(1723, 1000));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(classify(&poly(&[-1, -1, 2])), Err(AlgebraicError::NotMonic));
        assert!(matches!(classify(&poly(&[4, -4, 1])), Err(AlgebraicError::Reducible { .. })));
        // (X^2 - X - 1)(X^2 + 1)
        let p = &poly(&[-1, -1, 1]) * &poly(&[1, 0, 1]);
        match classify(&p) {
            Err(AlgebraicError::Reducible { factor }) => {
                assert!(p.to_rational().exact_div(&factor.to_rational()).is_some());
                assert!(factor.deg() == 2);
            }
            other => panic!("{other:?}"),
        }
        // (X - 2)(X^2 + X + 1), no rational shortcut beyond the root 2
        let p = &poly(&[-2, 1]) * &poly(&[1, 1, 1]);
        assert!(matches!(classify(&p), Err(AlgebraicError::Reducible { .. })));
        assert_eq!(classify(&poly(&[5])), Err(AlgebraicError::ConstantPolynomial));
    }

    #[test]
    fn other_kinds() {
        // X^2 + 1 is irreducible; both roots on the circle and nothing outside
        let c = classify(&poly(&[1, 0, 1])).unwrap();
        assert_eq!(c.kind, Kind::Neither);
        assert_eq!(c.boundary_roots, 2);
        // X^2 - 2: conjugate -sqrt 2 is outside
        assert_eq!(classify(&poly(&[-2, 0, 1])).unwrap().kind, Kind::Neither);
        // rational integers above one
        assert_eq!(classify(&poly(&[-3, 1])).unwrap().kind, Kind::PV);
        assert_eq!(classify(&poly(&[-1, 1])).unwrap().kind, Kind::Neither);
        // X^2 - 3X + 1: 1/alpha inside, PV
        assert_eq!(classify(&poly(&[1, -3, 1])).unwrap().kind, Kind::PV);
    }

    #[test]
    fn circle_counts() {
        assert_eq!(unit_circle_roots(&poly(&[1, 0, 1])), 2);
        assert_eq!(unit_circle_roots(&poly(&[-1, 1])), 1);
        assert_eq!(unit_circle_roots(&poly(&[1, 1, 1]).pow(2)), 4);
        assert_eq!(unit_circle_roots(&poly(&[-1, -1, 1])), 0);
        // X^2 - 3X + 1 is reciprocal but its roots are real and off the circle
        assert_eq!(unit_circle_roots(&poly(&[1, -3, 1])), 0);
        assert_eq!(reciprocal_gcd(&poly(&[-1, -1, 1])).deg(), 0);
    }

    #[test]
    fn sturm_counts() {
        let h = poly(&[-2, 0, 1]).to_rational();
        assert_eq!(sturm_count(&h, &int(-2), &int(2)), 2);
        assert_eq!(sturm_count(&h, &int(0), &int(2)), 1);
    }

    #[test]
    fn golden_power_residues() {
        let res = pv_power_residues(&poly(&[-1, -1, 1]), 10, 128).unwrap();
        let e = &res.entries[10];
        assert_eq!(e.trace, BigInt::from(123));
        // ||phi^10|| = phi^-10 = 1/(L_10 + ... ) ~ 0.0081306
        assert!(e.distance.lo().to_rational() > rat(81306, 10_000_000));
        assert!(e.distance.hi().to_rational() < rat(81307, 10_000_000));
        assert_eq!(res.entries[0].distance, Ball::zero(res.entries[0].distance.prec()));
        assert_eq!(res.entries[0].trace, BigInt::from(2));
        assert!(res.threshold <= 2);
        assert!(matches!(
            pv_power_residues(&poly(&[1, -1, -1, -1, 1]), 5, 64),
            Err(AlgebraicError::NotPV(Kind::Salem))
        ));
    }
}
