//! Certified isolation of the complex roots of an integer polynomial.
//!
//! Approximations come from Durand-Kerner iterations in dyadic arithmetic.
//! They are certified with the Weierstrass corrections `W_i`: if the disks
//! `D(z_i, d |W_i|)` are pairwise disjoint, each holds exactly one root.

use super::AlgebraicError;
use crate::numeric::ball::Ball;
use crate::numeric::complex::ComplexBall;
use crate::numeric::dyadic::{Dyadic, Round};
use crate::poly::{IntPolynomial, RatPolynomial};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

/// Precision ceiling for root refinement.
pub const ROOT_PRECISION_CAP: u32 = 1 << 14;

#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub value: ComplexBall,
    pub multiplicity: usize,
    /// Certified to lie on the real axis.
    pub is_real: bool,
}

impl Root {
    pub fn modulus(&self) -> Ball {
        if self.is_real {
            self.value.re.abs()
        } else {
            self.value.abs()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootProfile {
    /// Real roots first (descending), then the complex ones.
    pub roots: Vec<Root>,
    /// Index of the real root greater than 1 that strictly dominates every
    /// other root in modulus.
    pub dominant: Option<usize>,
    /// Hull of the moduli of the non-dominant roots.
    pub max_other_modulus: Option<Ball>,
    pub precision_bits: u32,
}

impl RootProfile {
    pub fn degree(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn dominant_root(&self) -> Option<&Root> {
        self.dominant.map(|i| &self.roots[i])
    }

    /// Every root other than the dominant one, repeated by multiplicity.
    pub fn conjugates(&self) -> Vec<&Root> {
        self.roots
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != self.dominant)
            .flat_map(|(_, r)| std::iter::repeat_n(r, r.multiplicity))
            .collect()
    }
}

/// Exact dyadic complex number used for the iteration.
#[derive(Clone, Debug)]
struct Cx {
    re: Dyadic,
    im: Dyadic,
}

impl Cx {
    fn zero() -> Self {
        Cx {
            re: Dyadic::zero(),
            im: Dyadic::zero(),
        }
    }

    fn round(&self, p: u32) -> Self {
        Cx {
            re: self.re.round(p, Round::Floor),
            im: self.im.round(p, Round::Floor),
        }
    }


    fn sub(&self, o: &Cx) -> Cx {
        Cx {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &Cx, p: u32) -> Cx {
        Cx {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
        .round(p)
    }

    fn div(&self, o: &Cx, p: u32) -> Option<Cx> {
        let den = &(&o.re * &o.re) + &(&o.im * &o.im);
        if den.is_zero() {
            return None;
        }
        let re = &(&self.re * &o.re) + &(&self.im * &o.im);
        let im = &(&self.im * &o.re) - &(&self.re * &o.im);
        Some(Cx {
            re: re.div(&den, p, Round::Floor),
            im: im.div(&den, p, Round::Floor),
        })
    }

    fn norm_sqr(&self) -> Dyadic {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    fn ball(&self, p: u32) -> ComplexBall {
        ComplexBall::new(Ball::exact(self.re.clone(), p), Ball::exact(self.im.clone(), p))
    }
}

fn from_f64(x: f64) -> Dyadic {
    Dyadic::new(BigInt::from((x * (1u64 << 40) as f64) as i64), -40)
}

/// A certified disk `D(z, r)` with exactly one root.
#[derive(Clone, Debug)]
struct Disk {
    z: Cx,
    r: Dyadic,
    real: bool,
}

fn disjoint(a: &Cx, ra: &Dyadic, b: &Cx, rb: &Dyadic) -> bool {
    let s = ra + rb;
    a.sub(b).norm_sqr() > &s * &s
}

fn eval_cx(coeffs: &[Dyadic], z: &Cx, p: u32) -> Cx {
    let mut acc = Cx::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, p);
        acc.re = &acc.re + c;
    }
    acc
}

fn eval_ball(coeffs: &[BigInt], z: &ComplexBall, p: u32) -> ComplexBall {
    let mut acc = ComplexBall::real(Ball::zero(p));
    for c in coeffs.iter().rev() {
        acc = &(&acc * z) + &ComplexBall::real(Ball::from_bigint(c, p));
    }
    acc
}

/// Cauchy bound on the root moduli.
fn cauchy_bound(coeffs: &[BigInt]) -> f64 {
    let lead = coeffs.last().expect("nonzero polynomial").abs();
    let big = coeffs[..coeffs.len() - 1].iter().map(|c| c.abs()).max().unwrap_or_default();
    let ratio = crate::numeric::rational::to_f64(&crate::numeric::rational::Rational::new(big, lead));
    1.0 + ratio.min(1e300)
}

/// Durand-Kerner iterations; returns updated approximations.
fn durand_kerner(coeffs: &[BigInt], start: Vec<Cx>, p: u32, max_iter: usize) -> Vec<Cx> {
    let lead = Dyadic::from_bigint(coeffs.last().unwrap().clone());
    let dy: Vec<Dyadic> = coeffs.iter().map(|c| Dyadic::from_bigint(c.clone())).collect();
    let mut z = start;
    let tol = Dyadic::pow2(-(p as i64) + 8);
    for _ in 0..max_iter {
        let mut biggest = Dyadic::zero();
        for i in 0..z.len() {
            let num = eval_cx(&dy, &z[i], p);
            let mut den = Cx {
                re: lead.clone(),
                im: Dyadic::zero(),
            };
            for (j, zj) in z.iter().enumerate() {
                if i != j {
                    den = den.mul(&z[i].sub(zj), p);
                }
            }
            let step = match num.div(&den, p) {
                Some(s) => s,
                None => Cx {
                    re: Dyadic::pow2(-20),
                    im: Dyadic::pow2(-21),
                },
            };
            let scale = z[i].norm_sqr().max(Dyadic::one());
            let rel = step.norm_sqr().div(&scale, 32, Round::Ceil);
            biggest = biggest.max(rel);
            z[i] = z[i].sub(&step).round(p);
        }
        if biggest <= &tol * &tol {
            break;
        }
    }
    z
}

fn initial_points(coeffs: &[BigInt]) -> Vec<Cx> {
    let d = coeffs.len() - 1;
    let r = cauchy_bound(coeffs);
    (0..d)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            Cx {
                re: from_f64(r * t.cos()),
                im: from_f64(r * t.sin()),
            }
        })
        .collect()
}

/// Certifies approximations of a squarefree polynomial's roots.
fn certify(coeffs: &[BigInt], z: &[Cx], p: u32) -> Option<Vec<Disk>> {
    let d = z.len();
    let lead = ComplexBall::real(Ball::from_bigint(coeffs.last().unwrap(), p));
    let mut radii = Vec::with_capacity(d);
    for i in 0..d {
        let zi = z[i].ball(p);
        let num = eval_ball(coeffs, &zi, p);
        let mut den = lead.clone();
        for (j, zj) in z.iter().enumerate() {
            if i != j {
                den = &den * &(&zi - &zj.ball(p));
            }
        }
        let w = &num * &den.recip()?;
        let r = &w.abs_hi() * &Dyadic::from_int(d as i64);
        radii.push(r.round(30, Round::Ceil));
    }
    for i in 0..d {
        for j in i + 1..d {
            if !disjoint(&z[i], &radii[i], &z[j], &radii[j]) {
                return None;
            }
        }
    }
    // real snapping: a disk symmetric about the axis that still avoids every
    // other disk holds a root equal to its own conjugate
    let mut disks = Vec::with_capacity(d);
    for i in 0..d {
        let im_abs = z[i].im.abs();
        let real = if im_abs <= radii[i] {
            let c = Cx {
                re: z[i].re.clone(),
                im: Dyadic::zero(),
            };
            let r = &radii[i] + &im_abs;
            let ok = (0..d).all(|j| j == i || disjoint(&c, &r, &z[j], &radii[j]));
            if !ok {
                return None;
            }
            Some((c, r))
        } else {
            None
        };
        disks.push(match real {
            Some((c, r)) => Disk { z: c, r, real: true },
            None => Disk {
                z: z[i].clone(),
                r: radii[i].clone(),
                real: false,
            },
        });
    }
    // conjugate pairing: the lower root of each pair takes the mirrored disk
    for i in 0..d {
        if disks[i].real || disks[i].z.im.is_negative() {
            continue;
        }
        let mirror = Cx {
            re: disks[i].z.re.clone(),
            im: -&disks[i].z.im,
        };
        let hits: Vec<usize> = (0..d)
            .filter(|&j| !disjoint(&mirror, &disks[i].r, &disks[j].z, &disks[j].r))
            .collect();
        if hits.len() != 1 || disks[hits[0]].real || hits[0] == i {
            return None;
        }
        let j = hits[0];
        disks[j] = Disk {
            z: mirror,
            r: disks[i].r.clone(),
            real: false,
        };
    }
    Some(disks)
}

fn disk_to_ball(disk: &Disk, p: u32) -> ComplexBall {
    let re = Ball::new(disk.z.re.clone(), disk.r.clone(), p);
    let im = if disk.real {
        Ball::zero(p)
    } else {
        Ball::new(disk.z.im.clone(), disk.r.clone(), p)
    };
    ComplexBall::new(re, im)
}

/// Isolates the roots of a squarefree integer polynomial with radii below
/// `2^-precision` (relative to `max(1, |z|)`).
fn isolate_squarefree(g: &IntPolynomial, precision: u32) -> Result<(Vec<Disk>, u32), AlgebraicError> {
    let coeffs = g.coeffs().to_vec();
    let d = g.deg();
    if d == 1 {
        let q = crate::numeric::rational::Rational::new(-coeffs[0].clone(), coeffs[1].clone());
        let b = Ball::from_rational(&q, precision + 8);
        let r = &b.rad().clone() + &Dyadic::zero();
        return Ok((
            vec![Disk {
                z: Cx {
                    re: b.mid().clone(),
                    im: Dyadic::zero(),
                },
                r,
                real: true,
            }],
            precision + 8,
        ));
    }
    let mut p = 64.max(precision + 16);
    let mut z = durand_kerner(&coeffs, initial_points(&coeffs), 64, 2000);
    loop {
        z = durand_kerner(&coeffs, z, p, 200);
        if let Some(disks) = certify(&coeffs, &z, p) {
            let tight = disks.iter().all(|k| {
                let scale = k.z.norm_sqr().max(Dyadic::one());
                let lim = Dyadic::pow2(-2 * precision as i64);
                &k.r * &k.r <= &lim * &scale
            });
            if tight {
                return Ok((disks, p));
            }
        }
        if p >= ROOT_PRECISION_CAP {
            return Err(AlgebraicError::PrecisionExhausted {
                cap: ROOT_PRECISION_CAP,
            });
        }
        p = (p * 2).min(ROOT_PRECISION_CAP);
    }
}

fn order(a: &Root, b: &Root) -> Ordering {
    match (a.is_real, b.is_real) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => b
            .value
            .re
            .mid()
            .cmp(a.value.re.mid())
            .then_with(|| b.value.im.mid().cmp(a.value.im.mid())),
    }
}

/// Certified, pairwise-disjoint root enclosures with multiplicities.
pub fn isolate_roots(poly: &IntPolynomial, precision: u32) -> Result<RootProfile, AlgebraicError> {
    if poly.is_zero() {
        return Err(AlgebraicError::ZeroPolynomial);
    }
    let precision = precision.max(32);
    let mut roots = Vec::new();
    let mut used = precision;
    let rat: RatPolynomial = poly.to_rational();
    // zero roots are split off first; the rest go through square-free factorization
    let zeros = poly.low_order();
    if zeros > 0 {
        roots.push(Root {
            value: ComplexBall::real(Ball::zero(precision)),
            multiplicity: zeros,
            is_real: true,
        });
    }
    let shifted = RatPolynomial::new(rat.coeffs()[zeros..].to_vec());
    let mut all_disks: Vec<Disk> = Vec::new();
    for (k, f) in shifted.squarefree_factors() {
        let g = f.to_primitive_int();
        let (disks, p) = isolate_squarefree(&g, precision)?;
        used = used.max(p);
        for disk in disks {
            if all_disks.iter().any(|o| !disjoint(&o.z, &o.r, &disk.z, &disk.r)) {
                // factors are coprime, so overlaps only reflect loose radii
                return isolate_roots(poly, precision * 2);
            }
            roots.push(Root {
                value: disk_to_ball(&disk, used),
                multiplicity: k,
                is_real: disk.real,
            });
            all_disks.push(disk);
        }
    }
    roots.sort_by(order);
    let dominant = find_dominant(&roots);
    let max_other_modulus = roots
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != dominant)
        .map(|(_, r)| r.modulus())
        .reduce(|a, b| {
            let lo = a.lo().max(b.lo());
            let hi = a.hi().max(b.hi());
            Ball::from_endpoints(&lo, &hi, a.prec().max(b.prec()))
        });
    Ok(RootProfile {
        roots,
        dominant,
        max_other_modulus,
        precision_bits: used,
    })
}

fn find_dominant(roots: &[Root]) -> Option<usize> {
    let one = Dyadic::one();
    let cands: Vec<usize> = roots
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_real && r.value.re.lo() > one && r.multiplicity == 1)
        .map(|(i, _)| i)
        .collect();
    let &[i] = cands.as_slice() else {
        return None;
    };
    let a = roots[i].value.re.lo();
    roots
        .iter()
        .enumerate()
        .all(|(j, r)| j == i || r.modulus().hi() < a)
        .then_some(i)
}

/// `sum_i gamma_i^n` over the given roots (with multiplicity), as a complex ball.
pub fn power_sum_ball(roots: &[&Root], n: u64, prec: u32) -> ComplexBall {
    roots.iter().fold(ComplexBall::real(Ball::zero(prec)), |acc, r| {
        let v = if r.is_real {
            ComplexBall::real(r.value.re.with_prec(prec).pow(n))
        } else {
            r.value.with_prec(prec).pow(n)
        };
        &acc + &v
    })
}

/// Exact power sums `s_n = sum alpha_i^n` of a monic integer polynomial, `n = 0..=n_max`,
/// from the Newton identities.
pub fn power_sums(poly: &IntPolynomial, n_max: usize) -> Vec<BigInt> {
    assert!(poly.is_monic(), "power sums need a monic polynomial");
    let d = poly.deg();
    // X^d + e_1 X^{d-1} + ... with e_i = coeff(d - i)
    let e = |i: usize| poly.coeff(d - i);
    let mut s: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    s.push(BigInt::from(d));
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        for i in 1..=n.min(d) {
            if i < n {
                acc -= e(i) * &s[n - i];
            } else {
                acc -= e(i) * BigInt::from(n);
            }
        }
        s.push(acc);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, rat};

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn golden_ratio_roots() {
        let prof = isolate_roots(&poly(&[-1, -1, 1]), 64).unwrap();
        assert_eq!(prof.roots.len(), 2);
        assert!(prof.roots.iter().all(|r| r.is_real));
        let phi = &prof.roots[0].value.re;
        // sign oracle: p(1.618) < 0 < p(1.6181)
        assert!(phi.lo().to_rational() > rat(1618, 1000) && phi.hi().to_rational() < rat(16181, 10000));
        let psi = &prof.roots[1].value.re;
        assert!(psi.lo().to_rational() > rat(-6181, 10000) && psi.hi().to_rational() < rat(-618, 1000));
        assert_eq!(prof.dominant, Some(0));
        assert!(prof.max_other_modulus.unwrap().hi().to_rational() < int(1));
    }

    #[test]
    fn imaginary_unit() {
        let prof = isolate_roots(&poly(&[1, 0, 1]), 64).unwrap();
        assert_eq!(prof.roots.len(), 2);
        for r in &prof.roots {
            assert!(!r.is_real);
            assert!(r.value.re.contains_rational(&int(0)));
            assert!(r.modulus().contains_rational(&int(1)));
        }
        assert_eq!(prof.roots[0].value, prof.roots[1].value.conj());
        assert_eq!(prof.dominant, None);
    }

    #[test]
    fn repeated_root() {
        let prof = isolate_roots(&poly(&[4, -4, 1]), 64).unwrap();
        assert_eq!(prof.roots.len(), 1);
        assert_eq!(prof.roots[0].multiplicity, 2);
        assert!(prof.roots[0].value.re.contains_rational(&int(2)));
        assert_eq!(prof.degree(), 2);
        // a double root never counts as dominant
        assert_eq!(prof.dominant, None);
    }

    #[test]
    fn zero_roots_and_mixed_factors() {
        // X^2 (X - 3)^3 (X^2 + X + 1)
        let p = &(&poly(&[0, 0, 1]) * &poly(&[-3, 1]).pow(3)) * &poly(&[1, 1, 1]);
        let prof = isolate_roots(&p, 80).unwrap();
        assert_eq!(prof.degree(), 7);
        assert_eq!(prof.roots.len(), 4);
    }

    #[test]
    fn plastic_number() {
        let prof = isolate_roots(&poly(&[-1, -1, 0, 1]), 128).unwrap();
        let dom = prof.dominant_root().unwrap();
        let x = &dom.value.re;
        assert!(x.lo().to_rational() > rat(13247179572, 10_000_000_000));
        assert!(x.hi().to_rational() < rat(13247179573, 10_000_000_000));
        let m = prof.max_other_modulus.unwrap();
        assert!(m.lo().to_rational() > rat(8688, 10000) && m.hi().to_rational() < rat(8690, 10000));
    }

    #[test]
    fn high_precision_radii() {
        let prof = isolate_roots(&poly(&[-1, -1, 1]), 300).unwrap();
        for r in &prof.roots {
            assert!(r.value.re.rad().msb() < -290);
        }
    }

    #[test]
    fn lucas_power_sums() {
        let s = power_sums(&poly(&[-1, -1, 1]), 10);
        let lucas: Vec<i64> = vec![2, 1, 3, 4, 7, 11, 18, 29, 47, 76, 123];
        assert_eq!(s, lucas.into_iter().map(BigInt::from).collect::<Vec<_>>());
        // X^3 - X - 1: s_0..s_5 = 3, 0, 2, 3, 2, 5
        let s = power_sums(&poly(&[-1, -1, 0, 1]), 5);
        assert_eq!(s, [3, 0, 2, 3, 2, 5].map(BigInt::from).to_vec());
    }
}
