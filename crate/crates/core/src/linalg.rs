//! Exact integer linear algebra: fraction-free determinants, rank and the
//! sub-determinant parameters Δ_k and Δ.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

fn to_big(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..a.rows()).map(|i| a.row(i).iter().map(|&v| BigInt::from(v)).collect()).collect()
}

/// Determinant of a square matrix by Bareiss elimination with row pivoting.
pub fn determinant(a: &IntMatrix) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut m = to_big(a);
    let mut sign = false;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Rank by fraction-free elimination; no division is ever inexact.
pub fn rank(a: &IntMatrix) -> usize {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = to_big(a);
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[i][j] * &m[r][c] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Δ_k(A): the largest |det| over all k×k submatrices.
pub fn delta_k(a: &IntMatrix, k: usize) -> Result<BigInt> {
    let max = a.rows().min(a.cols());
    if k == 0 || k > max {
        return Err(Error::OrderOutOfRange { k, max });
    }
    if k == 1 {
        return Ok(BigInt::from(a.max_abs()));
    }
    let mut best = BigInt::zero();
    for rows in (0..a.rows()).combinations(k) {
        for cols in (0..a.cols()).combinations(k) {
            let d = determinant(&a.select(&rows, &cols)).abs();
            if d > best {
                best = d;
            }
        }
    }
    Ok(best)
}

/// Δ(A) = Δ_rank(A)(A).
pub fn delta(a: &IntMatrix) -> Result<BigInt> {
    if a.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    delta_k(a, rank(a))
}
