//! Exact dyadic rationals `m * 2^e` with directed rounding.

use super::rational::Rational;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Floor,
    Ceil,
}

/// `mant * 2^exp`, normalized so that `mant` is odd (or zero with `exp == 0`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic {
            mant: mant >> tz as usize,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::new(n, 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: e,
        }
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Exponent of the leading bit: `2^msb <= |self| < 2^(msb+1)`.
    pub fn msb(&self) -> i64 {
        if self.is_zero() {
            i64::MIN / 4
        } else {
            self.exp + self.mant.bits() as i64 - 1
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as usize)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Rounds to at most `prec` significant bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = (bits - prec as u64) as usize;
        let q = match dir {
            Round::Floor => floor_shr(&self.mant, shift),
            Round::Ceil => ceil_shr(&self.mant, shift),
        };
        Self::new(q, self.exp + shift as i64)
    }

    /// Rounds onto the grid `2^e * Z`.
    pub fn round_to_exp(&self, e: i64, dir: Round) -> Self {
        if self.exp >= e {
            return self.clone();
        }
        let shift = (e - self.exp) as usize;
        let q = match dir {
            Round::Floor => floor_shr(&self.mant, shift),
            Round::Ceil => ceil_shr(&self.mant, shift),
        };
        Self::new(q, e)
    }

    /// `floor(self)` as an integer.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            floor_shr(&self.mant, (-self.exp) as usize)
        }
    }

    pub fn ceil(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            ceil_shr(&self.mant, (-self.exp) as usize)
        }
    }

    /// Rational `q` rounded onto the grid `2^-k * Z`.
    pub fn from_rational(q: &Rational, k: i64, dir: Round) -> Self {
        let (n, d) = if k >= 0 {
            (q.numer() << k as usize, q.denom().clone())
        } else {
            (q.numer().clone(), q.denom() << (-k) as usize)
        };
        let m = match dir {
            Round::Floor => n.div_floor(&d),
            Round::Ceil => -((-n).div_floor(&d)),
        };
        Self::new(m, -k)
    }

    /// Rational rounded to `prec` significant bits.
    pub fn from_rational_prec(q: &Rational, prec: u32, dir: Round) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let k = prec as i64 - rational_msb(q) + 1;
        Self::from_rational(q, k, dir)
    }

    /// Quotient rounded to `prec` significant bits.
    pub fn div(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        // Scale so the integer quotient carries at least prec + 1 bits.
        let s = (prec as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let num = &self.mant << s as usize;
        let (mut q, r) = num.div_mod_floor(&other.mant);
        if dir == Round::Ceil && !r.is_zero() {
            q += 1;
        }
        Self::new(q, self.exp - other.exp - s).round(prec, dir)
    }

    /// `n`-th root of a nonnegative value, rounded to `prec` bits.
    pub fn root(&self, n: u32, prec: u32, dir: Round) -> Self {
        assert!(!self.is_negative(), "root of negative dyadic");
        assert!(n >= 1);
        if self.is_zero() || n == 1 {
            return self.round(prec, dir);
        }
        let r = root_bits(&self.to_rational(), n, prec, dir);
        r.round(prec, dir)
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(60, Round::Floor);
        let m = i64::try_from(&r.mant).unwrap_or(0) as f64;
        m * 2f64.powi(r.exp.clamp(-2000, 2000) as i32)
    }
}

/// `floor(log2|q|)` for nonzero `q`.
pub fn rational_msb(q: &Rational) -> i64 {
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let e = nb - db;
    // |q| in [2^(e-1), 2^(e+1)); pick the right one exactly.
    let probe = if e >= 0 {
        Rational::from_integer(BigInt::one() << e as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    };
    if q.abs() >= probe {
        e
    } else {
        e - 1
    }
}

/// `q^(1/n)` (q >= 0) rounded to the grid so the result has about `prec` bits.
pub fn root_bits(q: &Rational, n: u32, prec: u32, dir: Round) -> Dyadic {
    assert!(!q.is_negative());
    if q.is_zero() {
        return Dyadic::zero();
    }
    let lg = rational_msb(q);
    // exponent of the result ~ lg / n; choose grid 2^-k.
    let k = prec as i64 + 2 - Integer::div_floor(&lg, &(n as i64));
    let shifted = if k >= 0 {
        q * Rational::from_integer(BigInt::one() << (n as i64 * k) as usize)
    } else {
        q / Rational::from_integer(BigInt::one() << (-(n as i64) * k) as usize)
    };
    let fl = shifted.numer().div_floor(shifted.denom());
    let r = fl.nth_root(n);
    let exact = shifted.denom().is_one() && num_traits::pow(r.clone(), n as usize) == fl;
    let m = match dir {
        Round::Floor => r,
        Round::Ceil if exact => r,
        Round::Ceil => r + 1,
    };
    Dyadic::new(m, -k)
}

fn floor_shr(m: &BigInt, s: usize) -> BigInt {
    // BigInt >> rounds toward -inf for negatives.
    m >> s
}

fn ceil_shr(m: &BigInt, s: usize) -> BigInt {
    -((-m) >> s)
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.sign(), other.sign()) {
            (a, b) if a != b => return sign_rank(a).cmp(&sign_rank(b)),
            (Sign::NoSign, _) => return Ordering::Equal,
            _ => {}
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        a.cmp(&b)
    }
}

fn sign_rank(s: Sign) -> i8 {
    match s {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &rhs.mant << (rhs.exp - e) as usize;
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &rhs.mant, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::rational::fmt_rational(&self.to_rational()))
    }
}
