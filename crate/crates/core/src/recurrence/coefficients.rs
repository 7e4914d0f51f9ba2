//! Exact recovery of `lambda_i(n)` in `S_n = sum_i lambda_i(n) alpha_i^n`
//! when the roots lie in `Q` or one real or imaginary quadratic field.

use super::RecurrenceError;
use crate::linalg::{solve, Matrix};
use crate::numeric::rational::Rational;
use crate::poly::{Poly, RatPolynomial};
use crate::quadratic::QuadraticElement;
use num_traits::{One, Zero};

/// Number of terms past the samples on which a recovered model is checked.
pub const EXTRA_CHECKS: usize = 5;

#[derive(Clone, Debug)]
pub struct PowerSumModel {
    /// `(alpha_i, d_i)`.
    pub roots: Vec<(QuadraticElement, usize)>,
    /// Coefficients of `lambda_i(X)`, lowest degree first, length `d_i`.
    pub lambdas: Vec<Vec<QuadraticElement>>,
    /// Radicand of the field, `None` over `Q`.
    pub field: Option<i64>,
}

fn qpow(x: &QuadraticElement, n: usize) -> QuadraticElement {
    let mut r = QuadraticElement::one();
    for _ in 0..n {
        r = r * x.clone();
    }
    r
}

fn qint(n: usize) -> QuadraticElement {
    QuadraticElement::rational(Rational::from_integer(n.into()))
}

impl PowerSumModel {
    /// `S_n`, exactly.
    pub fn term(&self, n: usize) -> QuadraticElement {
        let mut s = QuadraticElement::zero();
        for ((a, _), lam) in self.roots.iter().zip(&self.lambdas) {
            let mut poly = QuadraticElement::zero();
            let mut nj = QuadraticElement::one();
            for c in lam {
                poly = poly + c.clone() * nj.clone();
                nj = nj * qint(n);
            }
            s = s + poly * qpow(a, n);
        }
        s
    }

    /// `prod (X - alpha_i)^{d_i}` over `Q`.
    pub fn char_poly(&self) -> Result<RatPolynomial, RecurrenceError> {
        model_polynomial(&self.roots)
    }
}

/// `prod (X - alpha_i)^{d_i}`; the roots must be closed under conjugation.
pub fn model_polynomial(roots: &[(QuadraticElement, usize)]) -> Result<RatPolynomial, RecurrenceError> {
    let mut f: Poly<QuadraticElement> = Poly::one();
    for (a, d) in roots {
        let lin = Poly::new(vec![-a.clone(), QuadraticElement::one()]);
        for _ in 0..*d {
            f = &f * &lin;
        }
    }
    f.coeffs()
        .iter()
        .map(|c| c.is_rational().then(|| c.a.clone()))
        .collect::<Option<Vec<_>>>()
        .map(RatPolynomial::new)
        .ok_or(RecurrenceError::InvalidModel("roots not closed under conjugation"))
}

fn validate(roots: &[(QuadraticElement, usize)]) -> Result<Option<i64>, RecurrenceError> {
    if roots.is_empty() || roots.iter().any(|(_, d)| *d == 0) {
        return Err(RecurrenceError::InvalidModel("empty model or zero multiplicity"));
    }
    let mut field = None;
    for (a, _) in roots {
        if a.is_zero() {
            return Err(RecurrenceError::SingularSystem);
        }
        if !a.is_rational() {
            match field {
                None => field = Some(a.d),
                Some(d) if d != a.d => return Err(RecurrenceError::FieldUnsupported("roots span more than one quadratic field")),
                _ => {}
            }
        }
    }
    for (i, (a, _)) in roots.iter().enumerate() {
        if roots[..i].iter().any(|(b, _)| b == a) {
            return Err(RecurrenceError::SingularSystem);
        }
    }
    for (a, d) in roots {
        if !a.is_rational() && !roots.iter().any(|(b, e)| *b == a.conj() && e == d) {
            return Err(RecurrenceError::InvalidModel("conjugate root missing or with another multiplicity"));
        }
    }
    Ok(field)
}

/// Solves the generalized Vandermonde system on the first `m d` samples
/// (`d = max d_i`), then checks every sample and five further terms of the
/// recurrence with characteristic polynomial `prod (X - alpha_i)^{d_i}`.
pub fn recover_coefficients(
    roots: &[(QuadraticElement, usize)],
    samples: &[Rational],
) -> Result<PowerSumModel, RecurrenceError> {
    let field = validate(roots)?;
    let d = roots.iter().map(|(_, d)| *d).max().unwrap();
    let size = roots.len() * d;
    if samples.len() < size {
        return Err(RecurrenceError::TooFewSamples { need: size, got: samples.len() });
    }
    // columns: block i, power j; entries n^j alpha_i^n with 0^0 = 1
    let mut a: Matrix<QuadraticElement> = Vec::with_capacity(size);
    for n in 0..size {
        let mut row = Vec::with_capacity(size);
        for (alpha, _) in roots {
            let an = qpow(alpha, n);
            let mut nj = QuadraticElement::one();
            for _ in 0..d {
                row.push(nj.clone() * an.clone());
                nj = nj * qint(n);
            }
        }
        a.push(row);
    }
    let rhs: Vec<QuadraticElement> = samples[..size].iter().map(|s| QuadraticElement::rational(s.clone())).collect();
    let x = solve(&a, &rhs).ok_or(RecurrenceError::SingularSystem)?;
    let mut lambdas = Vec::with_capacity(roots.len());
    for (i, (_, di)) in roots.iter().enumerate() {
        let block = &x[i * d..(i + 1) * d];
        if block[*di..].iter().any(|c| !c.is_zero()) {
            return Err(RecurrenceError::InvalidModel("samples need higher multiplicities"));
        }
        lambdas.push(block[..*di].to_vec());
    }
    let model = PowerSumModel {
        roots: roots.to_vec(),
        lambdas,
        field,
    };
    for (n, s) in samples.iter().enumerate() {
        if model.term(n) != QuadraticElement::rational(s.clone()) {
            return Err(RecurrenceError::ReconstructionFailed { n });
        }
    }
    let f = model.char_poly()?;
    let m = f.deg();
    let mut ext = samples.to_vec();
    let mut n = samples.len();
    while ext.len() < samples.len() + EXTRA_CHECKS {
        // c_n = -sum_{k<m} f_k c_{n-m+k} once n >= m; otherwise take the model value
        let next = if n >= m {
            (0..m).fold(Rational::zero(), |acc, k| acc - f.coeff(k) * &ext[n - m + k])
        } else {
            model.term(n).a
        };
        let t = model.term(n);
        if !t.is_rational() || t.a != next {
            return Err(RecurrenceError::ReconstructionFailed { n });
        }
        ext.push(next);
        n += 1;
    }
    Ok(model)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SwapVerdict {
    Certified,
    Violated { index: usize },
}

/// `lambda_i` conjugates to the `lambda` of the conjugate root.
pub fn galois_swap_check(model: &PowerSumModel) -> (SwapVerdict, Vec<usize>) {
    let mut perm = Vec::with_capacity(model.roots.len());
    for (i, (a, _)) in model.roots.iter().enumerate() {
        let j = model.roots.iter().position(|(b, _)| *b == a.conj()).unwrap_or(i);
        perm.push(j);
        let conj: Vec<QuadraticElement> = model.lambdas[i].iter().map(QuadraticElement::conj).collect();
        if conj != model.lambdas[j] {
            return (SwapVerdict::Violated { index: i }, perm);
        }
    }
    (SwapVerdict::Certified, perm)
}

/// Whether `Q(lambda_i) = Q(alpha_i)`, read off from which of the two is rational.
pub fn lambda_field_matches(model: &PowerSumModel, i: usize) -> bool {
    let lam_rational = model.lambdas[i].iter().all(QuadraticElement::is_rational);
    lam_rational == model.roots[i].0.is_rational()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, rat};

    fn q(a: Rational, b: Rational, d: i64) -> QuadraticElement {
        QuadraticElement::new(a, b, d)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rational_examples() {
        let one = QuadraticElement::one();
        let two = QuadraticElement::rational(int(2));
        // 2^n + 1
        let m = recover_coefficients(&[(two.clone(), 1), (one.clone(), 1)], &ints(&[2, 3, 5, 9])).unwrap();
        assert_eq!(m.lambdas, vec![vec![one.clone()], vec![one.clone()]]);
        // n 2^n
        let m = recover_coefficients(&[(two.clone(), 2)], &ints(&[0, 2, 8, 24])).unwrap();
        assert_eq!(m.lambdas, vec![vec![QuadraticElement::zero(), one.clone()]]);
        assert_eq!(m.field, None);
    }

    #[test]
    fn fibonacci_lambdas() {
        let phi = q(rat(1, 2), rat(1, 2), 5);
        let fib = ints(&[0, 1, 1, 2, 3, 5, 8, 13]);
        let m = recover_coefficients(&[(phi.clone(), 1), (phi.conj(), 1)], &fib).unwrap();
        assert_eq!(m.lambdas[0], vec![q(int(0), rat(1, 5), 5)]);
        assert_eq!(m.lambdas[1], vec![q(int(0), rat(-1, 5), 5)]);
        assert_eq!(galois_swap_check(&m), (SwapVerdict::Certified, vec![1, 0]));
        assert!(lambda_field_matches(&m, 0));

        let lucas = ints(&[2, 1, 3, 4, 7, 11]);
        let m = recover_coefficients(&[(phi.clone(), 1), (phi.conj(), 1)], &lucas).unwrap();
        assert_eq!(m.lambdas, vec![vec![QuadraticElement::one()], vec![QuadraticElement::one()]]);
        assert!(!lambda_field_matches(&m, 0));
    }

    #[test]
    fn imaginary_field() {
        // i^n + (-i)^n = 2, 0, -2, 0, ...
        let i = QuadraticElement::sqrt(-1);
        let s = ints(&[2, 0, -2, 0, 2, 0]);
        let m = recover_coefficients(&[(i.clone(), 1), (i.conj(), 1)], &s).unwrap();
        assert_eq!(m.field, Some(-1));
        assert_eq!(galois_swap_check(&m).0, SwapVerdict::Certified);
    }

    #[test]
    fn errors() {
        let two = QuadraticElement::rational(int(2));
        let s = ints(&[1, 2, 4, 8]);
        assert_eq!(
            recover_coefficients(&[(two.clone(), 1), (two.clone(), 1)], &s).unwrap_err(),
            RecurrenceError::SingularSystem
        );
        let r2 = QuadraticElement::sqrt(2);
        let r3 = QuadraticElement::sqrt(3);
        assert!(matches!(
            recover_coefficients(&[(r2.clone(), 1), (r2.conj(), 1), (r3.clone(), 1), (r3.conj(), 1)], &s),
            Err(RecurrenceError::FieldUnsupported(_))
        ));
        assert!(matches!(
            recover_coefficients(&[(r2.clone(), 1)], &s),
            Err(RecurrenceError::InvalidModel(_))
        ));
        // n 2^n does not fit a simple root at 2
        assert_eq!(
            recover_coefficients(&[(two.clone(), 1)], &ints(&[0, 2, 8, 24])).unwrap_err(),
            RecurrenceError::ReconstructionFailed { n: 1 }
        );
        assert_eq!(
            recover_coefficients(&[(QuadraticElement::zero(), 1)], &s).unwrap_err(),
            RecurrenceError::SingularSystem
        );
    }
}
