//! Exact dense linear algebra over a field.

use crate::poly::{FieldCoeff, Poly};

pub type Matrix<T> = Vec<Vec<T>>;

/// Determinant by Gaussian elimination.
pub fn determinant<T: FieldCoeff>(m: &Matrix<T>) -> T {
    let n = m.len();
    let mut a = m.clone();
    let mut det = T::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return T::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = det * p.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() / p.clone();
            for c in col..n {
                a[r][c] = a[r][c].clone() - f.clone() * a[col][c].clone();
            }
        }
    }
    det
}

/// Unique solution of `m x = b`, or `None` if `m` is singular.
pub fn solve<T: FieldCoeff>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let n = m.len();
    assert_eq!(b.len(), n);
    let mut a: Matrix<T> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        for c in col..=n {
            a[col][c] = a[col][c].clone() / p.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..=n {
                a[r][c] = a[r][c].clone() - f.clone() * a[col][c].clone();
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Square Hankel matrix `H[i][j] = seq[start + i + j]`.
pub fn hankel<T: Clone>(seq: &[T], start: usize, size: usize) -> Matrix<T> {
    (0..size)
        .map(|i| (0..size).map(|j| seq[start + i + j].clone()).collect())
        .collect()
}

/// Resultant via the Sylvester determinant.
pub fn resultant<T: FieldCoeff>(p: &Poly<T>, q: &Poly<T>) -> T {
    if p.is_zero() || q.is_zero() {
        return T::zero();
    }
    let (m, n) = (p.deg(), q.deg());
    if m + n == 0 {
        return T::one();
    }
    let size = m + n;
    let mut s = vec![vec![T::zero(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            s[i][i + j] = p.coeff(m - j);
        }
    }
    for i in 0..m {
        for j in 0..=n {
            s[n + i][i + j] = q.coeff(n - j);
        }
    }
    determinant(&s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, Rational};
    use crate::poly::IntPolynomial;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn det_and_solve() {
        let a = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(determinant(&a), int(5));
        assert_eq!(solve(&a, &[int(3), int(4)]), Some(vec![int(1), int(1)]));
        assert_eq!(solve(&m(&[&[1, 2], &[2, 4]]), &[int(1), int(1)]), None);
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), int(-1));
    }

    #[test]
    fn resultant_detects_common_roots() {
        let a = IntPolynomial::from_i64s(&[2, -3, 1]).to_rational();
        let b = IntPolynomial::from_i64s(&[-3, 2, 1]).to_rational();
        assert_eq!(resultant(&a, &b), int(0));
        let c = IntPolynomial::from_i64s(&[1, 1]).to_rational();
        // res((X-1)(X-2), X+1) = (-1-1)(-1-2) = 6
        assert_eq!(resultant(&a, &c), int(6));
    }
}
