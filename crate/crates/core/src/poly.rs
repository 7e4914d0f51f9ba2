//! Dense univariate polynomials, constant term first.

use crate::numeric::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt::{self, Debug};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Coefficient ring for [`Poly`].
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

/// Coefficients with exact division by nonzero elements.
pub trait FieldCoeff: Coeff + Div<Output = Self> {}

impl Coeff for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl Coeff for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl FieldCoeff for Rational {}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPolynomial = Poly<BigInt>;
pub type RatPolynomial = Poly<Rational>;

impl<T: Coeff> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * X^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `X - r`.
    pub fn linear_root(r: T) -> Self {
        Self::new(vec![-r, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![T::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    /// `X^m p(1/X)`; requires `m >= deg p`.
    pub fn reversed(&self, m: usize) -> Self {
        assert!(self.is_zero() || self.deg() <= m);
        let mut v = vec![T::zero(); m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[m - i] = c.clone();
        }
        Self::new(v)
    }

    /// `X^deg p(1/X)`.
    pub fn reciprocal(&self) -> Self {
        self.reversed(self.deg())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// Truncation to terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Number of leading zero coefficients from the constant term.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }
}

impl<T: FieldCoeff> Poly<T> {
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg();
        let lead_inv = T::one() / d.lead();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![T::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone() * lead_inv.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = r[i + j].clone() - c.clone() * dc.clone();
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = T::one() / self.lead();
        self.scale(&inv)
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Quotient when `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Square-free decomposition `self = c * prod f_k^k` (Yun); returns `(k, f_k)`
    /// for nonconstant monic factors.
    pub fn squarefree_factors(&self) -> Vec<(usize, Self)> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut k = 1;
        while b.deg() > 0 {
            let a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((k, a.clone()));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
            k += 1;
        }
        out
    }

    /// Product of the distinct monic irreducible-over-squarefree parts.
    pub fn squarefree_part(&self) -> Self {
        if self.deg() == 0 {
            return Self::one();
        }
        let f = self.monic();
        f.div_rem(&f.gcd(&f.derivative())).0
    }

    /// Power series `self / q` up to (excluding) degree `n`; requires `q(0) != 0`.
    pub fn series_div(&self, q: &Self, n: usize) -> Vec<T> {
        let q0 = q.coeff(0);
        assert!(!q0.is_zero(), "series division needs a unit constant term");
        let inv = T::one() / q0;
        let mut out: Vec<T> = Vec::with_capacity(n);
        for k in 0..n {
            let mut s = self.coeff(k);
            for j in 1..=k.min(q.deg()) {
                s = s - q.coeff(j) * out[k - j].clone();
            }
            out.push(s * inv.clone());
        }
        out
    }
}

impl IntPolynomial {
    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Parses comma-separated integer coefficients, constant term first.
    pub fn parse(s: &str) -> Option<Self> {
        let v: Option<Vec<BigInt>> = s
            .split(',')
            .map(|t| t.trim().parse::<BigInt>().ok())
            .collect();
        let p = Self::new(v?);
        (!p.is_zero()).then_some(p)
    }

    /// Gcd of the coefficients (positive, zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn to_rational(&self) -> RatPolynomial {
        self.map(|c| Rational::from_integer(c.clone()))
    }

    pub fn to_list(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl RatPolynomial {
    /// Primitive integer polynomial with the same roots (positive leading coefficient).
    pub fn to_primitive_int(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        IntPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }

    /// Integer coefficients, if all coefficients are integers.
    pub fn to_int(&self) -> Option<IntPolynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPolynomial::new)
    }
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})X")?,
                _ => write!(f, "({c})X^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: Debug> Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, rat};

    fn rp(c: &[i64]) -> RatPolynomial {
        IntPolynomial::from_i64s(c).to_rational()
    }

    #[test]
    fn division_and_gcd() {
        // (X-1)(X-2) and (X-1)(X+3)
        let a = rp(&[2, -3, 1]);
        let b = rp(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), rp(&[-1, 1]));
        let (q, r) = a.div_rem(&rp(&[-1, 1]));
        assert_eq!(q, rp(&[-2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn yun_multiplicities() {
        // (X-2)^2 (X+1)
        let p = &rp(&[-2, 1]).pow(2) * &rp(&[1, 1]);
        let f = p.squarefree_factors();
        assert_eq!(f, vec![(1, rp(&[1, 1])), (2, rp(&[-2, 1]))]);
        assert_eq!(p.squarefree_part(), &rp(&[-2, 1]) * &rp(&[1, 1]));
    }

    #[test]
    fn reciprocal_and_series() {
        let f = rp(&[-1, -1, 1]);
        assert_eq!(f.reciprocal(), rp(&[1, -1, -1]));
        // (2 - X) / (1 - X - X^2) = Lucas numbers
        let s = rp(&[2, -1]).series_div(&rp(&[1, -1, -1]), 7);
        let want: Vec<_> = [2, 1, 3, 4, 7, 11, 18].iter().map(|&x| int(x)).collect();
        assert_eq!(s, want);
    }

    #[test]
    fn integer_helpers() {
        let p = IntPolynomial::from_i64s(&[-4, 6, -2]);
        assert_eq!(p.content(), BigInt::from(2));
        assert_eq!(p.primitive_part(), IntPolynomial::from_i64s(&[2, -3, 1]));
        assert_eq!(IntPolynomial::parse("1, -1,-1"), Some(IntPolynomial::from_i64s(&[1, -1, -1])));
        assert_eq!(IntPolynomial::parse("0,0"), None);
        let q = RatPolynomial::new(vec![rat(1, 2), rat(-1, 3)]);
        assert_eq!(q.to_primitive_int(), IntPolynomial::from_i64s(&[-3, 2]));
    }
}
