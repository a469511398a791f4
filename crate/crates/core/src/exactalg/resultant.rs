//! Sylvester matrices, resultants and discriminants.
//!
//! Two independent routes are provided: the determinant of the Sylvester
//! matrix by fraction-free (Bareiss) elimination, and the Euclidean
//! remainder sequence over the rationals. They must agree on every input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::poly::UniPoly;
use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("operation requires degree >= {required}, got {actual:?}")]
    DegreeTooLow { required: usize, actual: Option<usize> },
    #[error("matrix is not square")]
    NotSquare,
}

/// Sylvester layout for coefficient lists given highest power first:
/// `deg(b)` shifted rows of `a`, then `deg(a)` shifted rows of `b`.
pub fn sylvester_layout<T: Clone>(a_high_first: &[T], b_high_first: &[T], zero: &T) -> Vec<Vec<T>> {
    let m = a_high_first.len() - 1;
    let n = b_high_first.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![zero.clone(); size];
        row[shift..shift + m + 1].clone_from_slice(a_high_first);
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![zero.clone(); size];
        row[shift..shift + n + 1].clone_from_slice(b_high_first);
        rows.push(row);
    }
    rows
}

fn require_degree(p: &UniPoly, required: usize) -> Result<usize, AlgebraError> {
    match p.degree() {
        None => Err(AlgebraError::ZeroPolynomial),
        Some(d) if d < required => Err(AlgebraError::DegreeTooLow {
            required,
            actual: Some(d),
        }),
        Some(d) => Ok(d),
    }
}

/// The `(m+n) x (m+n)` Sylvester matrix of `a` (degree m) and `b` (degree n).
pub fn sylvester_matrix(a: &UniPoly, b: &UniPoly) -> Result<Vec<Vec<Rational>>, AlgebraError> {
    require_degree(a, 1)?;
    require_degree(b, 1)?;
    let ah: Vec<Rational> = a.coeffs().iter().rev().cloned().collect();
    let bh: Vec<Rational> = b.coeffs().iter().rev().cloned().collect();
    Ok(sylvester_layout(&ah, &bh, &Rational::zero()))
}

/// Exact determinant. Rows are scaled to integers, then eliminated with
/// Bareiss' fraction-free scheme so every intermediate stays a (bounded)
/// integer.
pub fn determinant(matrix: &[Vec<Rational>]) -> Result<Rational, AlgebraError> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::NotSquare);
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
            let ints = row.iter().map(|c| c.numer() * (&l / c.denom())).collect();
            scale *= l;
            ints
        })
        .collect();
    let det = bareiss(&mut m);
    Ok(Rational::new(det, scale))
}

/// Bareiss elimination in place; returns the determinant.
pub fn bareiss(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// `Res(a, b)` as the determinant of the Sylvester matrix.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> Result<Rational, AlgebraError> {
    determinant(&sylvester_matrix(a, b)?)
}

/// `Res(a, b)` from the Euclidean remainder sequence over the rationals,
/// using `Res(a, b) = (-1)^(mn) lc(b)^(m - deg r) Res(b, r)` with
/// `r = a mod b`.
pub fn resultant_prs(a: &UniPoly, b: &UniPoly) -> Result<Rational, AlgebraError> {
    require_degree(a, 1)?;
    require_degree(b, 1)?;
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = Rational::one();
    loop {
        let m = a.degree().expect("nonzero");
        let n = match b.degree() {
            None => return Ok(Rational::zero()),
            Some(n) => n,
        };
        if n == 0 {
            return Ok(acc * num_traits::pow(b.coeff(0), m));
        }
        let r = a.rem(&b);
        let dr = match r.degree() {
            None => return Ok(Rational::zero()),
            Some(d) => d,
        };
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(b.leading_coeff().expect("nonzero").clone(), m - dr);
        a = b;
        b = r;
    }
}

fn discriminant_sign_and_lc(p: &UniPoly) -> Result<(Rational, Rational), AlgebraError> {
    let n = require_degree(p, 2)?;
    let sign = if (n * (n - 1) / 2) % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    Ok((sign, p.leading_coeff().expect("nonzero").clone()))
}

/// `(-1)^(n(n-1)/2) Res(p, p') / lc(p)` via the Sylvester determinant.
pub fn discriminant(p: &UniPoly) -> Result<Rational, AlgebraError> {
    let (sign, lc) = discriminant_sign_and_lc(p)?;
    Ok(sign * resultant(p, &p.derivative())? / lc)
}

/// Same quantity as [`discriminant`] through the remainder sequence.
pub fn discriminant_prs(p: &UniPoly) -> Result<Rational, AlgebraError> {
    let (sign, lc) = discriminant_sign_and_lc(p)?;
    Ok(sign * resultant_prs(p, &p.derivative())? / lc)
}

/// Sign of a rational as -1, 0 or +1.
pub fn signum(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
