//! Problem instances and their validation.
//!
//! Instances are immutable once built; constructors run [`KnapsackInstance::check`]
//! or [`StandardFormInstance::check`] and refuse data with any violation.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::IntMatrix;

/// One violated instance invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyDimension,
    DimensionMismatch { field: &'static str, expected: usize, found: usize },
    /// `index` is row-major for `A`.
    Negative { field: &'static str, index: usize },
    RankDeficient { rank: usize, m: usize },
    BoundsInverted { index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyDimension => write!(f, "m >= 1 and n >= 1"),
            Violation::DimensionMismatch { field, expected, found } => {
                write!(f, "{field} has length {found}, expected {expected}")
            }
            Violation::Negative { field, index } => {
                write!(f, "{field} nonnegative (entry {index})")
            }
            Violation::RankDeficient { rank, m } => write!(f, "rank(A) = m (rank {rank}, m {m})"),
            Violation::BoundsInverted { index } => write!(f, "lo <= up (variable {index})"),
        }
    }
}

fn check_len(out: &mut Vec<Violation>, field: &'static str, v: &[i64], expected: usize) -> bool {
    if v.len() != expected {
        out.push(Violation::DimensionMismatch { field, expected, found: v.len() });
        false
    } else {
        true
    }
}

fn check_nonneg(out: &mut Vec<Violation>, field: &'static str, v: &[i64]) {
    for (index, &x) in v.iter().enumerate() {
        if x < 0 {
            out.push(Violation::Negative { field, index });
        }
    }
}

/// Bounded m-dimensional knapsack: max c·x s.t. Ax <= b, 0 <= x <= u, x integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackInstance {
    a: IntMatrix,
    b: Vec<i64>,
    c: Vec<i64>,
    u: Vec<i64>,
}

impl KnapsackInstance {
    pub fn new(a: IntMatrix, b: Vec<i64>, c: Vec<i64>, u: Vec<i64>) -> Result<Self> {
        let v = Self::check(&a, &b, &c, &u);
        if !v.is_empty() {
            return Err(Error::Invalid(v));
        }
        Ok(KnapsackInstance { a, b, c, u })
    }

    pub fn from_rows<R: AsRef<[i64]>>(a: &[R], b: &[i64], c: &[i64], u: &[i64]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(a), b.to_vec(), c.to_vec(), u.to_vec())
    }

    /// Every violated invariant of the raw data; empty means valid.
    pub fn check(a: &IntMatrix, b: &[i64], c: &[i64], u: &[i64]) -> Vec<Violation> {
        let mut out = Vec::new();
        let (m, n) = (a.rows(), a.cols());
        if m == 0 || n == 0 {
            out.push(Violation::EmptyDimension);
        }
        if check_len(&mut out, "b", b, m) {
            check_nonneg(&mut out, "b", b);
        }
        if check_len(&mut out, "c", c, n) {
            check_nonneg(&mut out, "c", c);
        }
        if check_len(&mut out, "u", u, n) {
            check_nonneg(&mut out, "u", u);
        }
        for i in 0..m {
            for j in 0..n {
                if a.get(i, j) < 0 {
                    out.push(Violation::Negative { field: "A", index: i * n + j });
                }
            }
        }
        out
    }

    /// Always empty for a constructed instance.
    pub fn validate(&self) -> Vec<Violation> {
        Self::check(&self.a, &self.b, &self.c, &self.u)
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }
    pub fn n(&self) -> usize {
        self.a.cols()
    }
    pub fn a(&self) -> &IntMatrix {
        &self.a
    }
    pub fn b(&self) -> &[i64] {
        &self.b
    }
    pub fn c(&self) -> &[i64] {
        &self.c
    }
    pub fn u(&self) -> &[i64] {
        &self.u
    }

    /// Same instance with another upper-bound vector.
    pub fn with_upper(&self, u: Vec<i64>) -> Result<Self> {
        Self::new(self.a.clone(), self.b.clone(), self.c.clone(), u)
    }

    /// Same instance with another right-hand side.
    pub fn with_rhs(&self, b: Vec<i64>) -> Result<Self> {
        Self::new(self.a.clone(), b, self.c.clone(), self.u.clone())
    }

    /// Sub-instance on the given columns and right-hand side.
    pub fn restrict(&self, cols: &[usize], b: Vec<i64>) -> Result<Self> {
        Self::new(
            self.a.select_cols(cols),
            b,
            cols.iter().map(|&j| self.c[j]).collect(),
            cols.iter().map(|&j| self.u[j]).collect(),
        )
    }

    /// `0 <= x <= u` and `Ax <= b`, evaluated exactly.
    pub fn is_feasible(&self, x: &[i64]) -> bool {
        x.len() == self.n()
            && x.iter().zip(&self.u).all(|(&v, &u)| 0 <= v && v <= u)
            && self.a.mul_vec_wide(x).iter().zip(&self.b).all(|(&l, &r)| l <= r as i128)
    }

    pub fn objective(&self, x: &[i64]) -> i128 {
        dot_wide(&self.c, x)
    }
}

/// Bounded ILP in standard form: max c·x s.t. Ax = b, lo <= x <= up, x integer, rank(A) = m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardFormInstance {
    a: IntMatrix,
    b: Vec<i64>,
    c: Vec<i64>,
    lo: Vec<i64>,
    up: Vec<i64>,
}

impl StandardFormInstance {
    pub fn new(a: IntMatrix, b: Vec<i64>, c: Vec<i64>, lo: Vec<i64>, up: Vec<i64>) -> Result<Self> {
        let v = Self::check(&a, &b, &c, &lo, &up);
        if !v.is_empty() {
            return Err(Error::Invalid(v));
        }
        Ok(StandardFormInstance { a, b, c, lo, up })
    }

    pub fn from_rows<R: AsRef<[i64]>>(
        a: &[R],
        b: &[i64],
        c: &[i64],
        lo: &[i64],
        up: &[i64],
    ) -> Result<Self> {
        Self::new(IntMatrix::from_rows(a), b.to_vec(), c.to_vec(), lo.to_vec(), up.to_vec())
    }

    pub fn check(a: &IntMatrix, b: &[i64], c: &[i64], lo: &[i64], up: &[i64]) -> Vec<Violation> {
        let mut out = Vec::new();
        let (m, n) = (a.rows(), a.cols());
        if m == 0 || n == 0 {
            out.push(Violation::EmptyDimension);
        }
        check_len(&mut out, "b", b, m);
        check_len(&mut out, "c", c, n);
        let lo_ok = check_len(&mut out, "lo", lo, n);
        let up_ok = check_len(&mut out, "up", up, n);
        if lo_ok && up_ok {
            for (index, (l, u)) in lo.iter().zip(up).enumerate() {
                if l > u {
                    out.push(Violation::BoundsInverted { index });
                }
            }
        }
        if m > 0 && n > 0 {
            let rank = linalg::rank(a);
            if rank != m {
                out.push(Violation::RankDeficient { rank, m });
            }
        }
        out
    }

    pub fn validate(&self) -> Vec<Violation> {
        Self::check(&self.a, &self.b, &self.c, &self.lo, &self.up)
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }
    pub fn n(&self) -> usize {
        self.a.cols()
    }
    pub fn a(&self) -> &IntMatrix {
        &self.a
    }
    pub fn b(&self) -> &[i64] {
        &self.b
    }
    pub fn c(&self) -> &[i64] {
        &self.c
    }
    pub fn lo(&self) -> &[i64] {
        &self.lo
    }
    pub fn up(&self) -> &[i64] {
        &self.up
    }

    pub fn is_feasible(&self, x: &[i64]) -> bool {
        x.len() == self.n()
            && x.iter().zip(self.lo.iter().zip(&self.up)).all(|(&v, (&l, &u))| l <= v && v <= u)
            && self.a.mul_vec_wide(x).iter().zip(&self.b).all(|(&l, &r)| l == r as i128)
    }

    pub fn objective(&self, x: &[i64]) -> i128 {
        dot_wide(&self.c, x)
    }
}

/// Either kind of instance, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Knapsack(KnapsackInstance),
    Standard(StandardFormInstance),
}

impl Instance {
    pub fn a(&self) -> &IntMatrix {
        match self {
            Instance::Knapsack(k) => k.a(),
            Instance::Standard(s) => s.a(),
        }
    }

    pub fn is_feasible(&self, x: &[i64]) -> bool {
        match self {
            Instance::Knapsack(k) => k.is_feasible(x),
            Instance::Standard(s) => s.is_feasible(x),
        }
    }

    pub fn objective(&self, x: &[i64]) -> i128 {
        match self {
            Instance::Knapsack(k) => k.objective(x),
            Instance::Standard(s) => s.objective(x),
        }
    }
}

impl From<KnapsackInstance> for Instance {
    fn from(k: KnapsackInstance) -> Self {
        Instance::Knapsack(k)
    }
}

impl From<StandardFormInstance> for Instance {
    fn from(s: StandardFormInstance) -> Self {
        Instance::Standard(s)
    }
}

pub(crate) fn dot_wide(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_knapsack_is_valid() {
        let k = KnapsackInstance::from_rows(&[[1]], &[0], &[1], &[1]).unwrap();
        assert!(k.validate().is_empty());
    }

    #[test]
    fn negative_rhs_is_reported() {
        let v = KnapsackInstance::check(&IntMatrix::from_rows(&[[1]]), &[-1], &[1], &[1]);
        assert_eq!(v, vec![Violation::Negative { field: "b", index: 0 }]);
        assert_eq!(v[0].to_string(), "b nonnegative (entry 0)");
    }

    #[test]
    fn all_violations_are_collected() {
        let a = IntMatrix::from_rows(&[[1, -2]]);
        let v = KnapsackInstance::check(&a, &[1, 2], &[-1, 0], &[0]);
        assert!(v.contains(&Violation::Negative { field: "A", index: 1 }));
        assert!(v.contains(&Violation::Negative { field: "c", index: 0 }));
        assert!(v.contains(&Violation::DimensionMismatch { field: "b", expected: 1, found: 2 }));
        assert!(v.contains(&Violation::DimensionMismatch { field: "u", expected: 2, found: 1 }));
    }

    #[test]
    fn proportional_rows_fail_rank_check() {
        let r = StandardFormInstance::from_rows(&[[1, 2], [2, 4]], &[0, 0], &[0, 0], &[0, 0], &[1, 1]);
        match r {
            Err(Error::Invalid(v)) => assert_eq!(v, vec![Violation::RankDeficient { rank: 1, m: 2 }]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inverted_bounds() {
        let v = StandardFormInstance::check(&IntMatrix::from_rows(&[[1]]), &[0], &[0], &[2], &[1]);
        assert_eq!(v, vec![Violation::BoundsInverted { index: 0 }]);
    }

    #[test]
    fn feasibility_is_exact() {
        let k = KnapsackInstance::from_rows(&[[2, 3]], &[4], &[2, 3], &[1, 1]).unwrap();
        assert!(k.is_feasible(&[0, 1]));
        assert!(!k.is_feasible(&[1, 1]));
        assert!(!k.is_feasible(&[2, 0]));
        assert_eq!(k.objective(&[1, 0]), 2);
    }
}
