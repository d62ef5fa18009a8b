//! Exhaustive enumeration: ground truth for every solver.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::instance::{KnapsackInstance, StandardFormInstance};
use crate::matrix::IntMatrix;
use crate::report::{Mode, SolveReport, Status};

pub const DEFAULT_CAP: u128 = 10_000_000;

/// Direction in which the box is walked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    /// Lexicographic ascending; the first maximizer found is the lexicographically smallest.
    Forward,
    /// Each coordinate from its upper bound down.
    Backward,
}

fn box_volume(lo: &[i64], up: &[i64]) -> u128 {
    lo.iter()
        .zip(up)
        .map(|(&l, &u)| (u - l + 1).max(0) as u128)
        .try_fold(1u128, |acc, w| acc.checked_mul(w))
        .unwrap_or(u128::MAX)
}

fn check_cap(lo: &[i64], up: &[i64], cap: u128) -> Result<()> {
    let size = box_volume(lo, up);
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    Ok(())
}

fn to_i64(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow("objective exceeds i64"))
}

/// max c·x over the knapsack box, pruning prefixes whose load already exceeds b.
pub fn brute_force_knapsack(inst: &KnapsackInstance, cap: u128) -> Result<SolveReport> {
    brute_force_knapsack_ordered(inst, cap, Order::Forward)
}

pub fn brute_force_knapsack_ordered(inst: &KnapsackInstance, cap: u128, order: Order) -> Result<SolveReport> {
    let n = inst.n();
    check_cap(&vec![0; n], inst.u(), cap)?;
    let mut search = KnapsackSearch {
        inst,
        order,
        x: vec![0; n],
        load: vec![0i128; inst.m()],
        best: None,
        visited: 0,
    };
    search.descend(0, 0);
    let (value, witness) = search.best.expect("x = 0 is feasible");
    Ok(SolveReport::solution(Mode::Oracle, Status::Optimal, to_i64(value)?, witness)
        .with_stat("states", search.visited))
}

struct KnapsackSearch<'a> {
    inst: &'a KnapsackInstance,
    order: Order,
    x: Vec<i64>,
    load: Vec<i128>,
    best: Option<(i128, Vec<i64>)>,
    visited: u64,
}

impl KnapsackSearch<'_> {
    fn descend(&mut self, k: usize, value: i128) {
        self.visited += 1;
        if k == self.inst.n() {
            if self.best.as_ref().is_none_or(|(b, _)| value > *b) {
                self.best = Some((value, self.x.clone()));
            }
            return;
        }
        let col = self.inst.a().col(k);
        let u = self.inst.u()[k];
        let values: Box<dyn Iterator<Item = i64>> = match self.order {
            Order::Forward => Box::new(0..=u),
            Order::Backward => Box::new((0..=u).rev()),
        };
        for z in values {
            let fits = col
                .iter()
                .zip(&self.load)
                .zip(self.inst.b())
                .all(|((&a, &l), &b)| l + a as i128 * z as i128 <= b as i128);
            if !fits {
                // A >= 0: larger z only adds load.
                if self.order == Order::Forward {
                    break;
                }
                continue;
            }
            for (l, &a) in self.load.iter_mut().zip(&col) {
                *l += a as i128 * z as i128;
            }
            self.x[k] = z;
            self.descend(k + 1, value + self.inst.c()[k] as i128 * z as i128);
            for (l, &a) in self.load.iter_mut().zip(&col) {
                *l -= a as i128 * z as i128;
            }
        }
        self.x[k] = 0;
    }
}

/// max c·x over {Ax = b, lo <= x <= up}, visiting the whole box.
pub fn brute_force_standard(inst: &StandardFormInstance, cap: u128) -> Result<SolveReport> {
    brute_force_standard_ordered(inst, cap, Order::Forward)
}

pub fn brute_force_standard_ordered(inst: &StandardFormInstance, cap: u128, order: Order) -> Result<SolveReport> {
    check_cap(inst.lo(), inst.up(), cap)?;
    let n = inst.n();
    let mut best: Option<(i128, Vec<i64>)> = None;
    let mut visited = 0u64;
    for_each_point(inst.lo(), inst.up(), order, |x| {
        visited += 1;
        if inst.a().mul_vec_wide(x).iter().zip(inst.b()).all(|(&l, &r)| l == r as i128) {
            let v = inst.objective(x);
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, x.to_vec()));
            }
        }
    });
    debug_assert!(best.as_ref().is_none_or(|(_, w)| w.len() == n));
    Ok(match best {
        Some((v, w)) => SolveReport::solution(Mode::Oracle, Status::Optimal, to_i64(v)?, w),
        None => SolveReport::infeasible(Mode::Oracle),
    }
    .with_stat("states", visited))
}

fn for_each_point(lo: &[i64], up: &[i64], order: Order, mut f: impl FnMut(&[i64])) {
    let n = lo.len();
    if lo.iter().zip(up).any(|(l, u)| l > u) {
        return;
    }
    let (start, end, step): (&[i64], &[i64], i64) = match order {
        Order::Forward => (lo, up, 1),
        Order::Backward => (up, lo, -1),
    };
    let mut x = start.to_vec();
    loop {
        f(&x);
        // Odometer, last coordinate fastest.
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if x[k] != end[k] {
                x[k] += step;
                break;
            }
            x[k] = start[k];
        }
    }
}

/// {Ax : lo <= x <= up, x integer, ‖x‖₁ <= gamma}.
pub fn enumerate_reachable(
    a: &IntMatrix,
    gamma: u64,
    lo: &[i64],
    up: &[i64],
    cap: u128,
) -> Result<HashSet<Vec<i64>>> {
    check_cap(lo, up, cap)?;
    let mut out = HashSet::new();
    for_each_point(lo, up, Order::Forward, |x| {
        let l1: u64 = x.iter().map(|v| v.unsigned_abs()).sum();
        if l1 <= gamma {
            out.insert(a.mul_vec_wide(x).into_iter().map(|v| v as i64).collect());
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::delta;
    use crate::proximity::counting_bound;

    fn three_items() -> KnapsackInstance {
        KnapsackInstance::from_rows(&[[3, 4, 5]], &[10], &[3, 4, 5], &[1, 1, 1]).unwrap()
    }

    #[test]
    fn three_items_optimum() {
        let r = brute_force_knapsack(&three_items(), DEFAULT_CAP).unwrap();
        assert_eq!(r.value, 9);
        assert_eq!(r.witness, vec![0, 1, 1]);
        let back = brute_force_knapsack_ordered(&three_items(), DEFAULT_CAP, Order::Backward).unwrap();
        assert_eq!(back.value, 9);
    }

    #[test]
    fn trivial_knapsacks() {
        let k = KnapsackInstance::from_rows(&[[1]], &[0], &[1], &[1]).unwrap();
        assert_eq!(brute_force_knapsack(&k, DEFAULT_CAP).unwrap().value, 0);
        let k = KnapsackInstance::from_rows(&[[1, 2]], &[5], &[3, 3], &[0, 0]).unwrap();
        let r = brute_force_knapsack(&k, DEFAULT_CAP).unwrap();
        assert_eq!((r.value, r.witness), (0, vec![0, 0]));
    }

    #[test]
    fn cap_is_enforced() {
        let k = KnapsackInstance::from_rows(&[[1, 1, 1]], &[5], &[1, 1, 1], &[9, 9, 9]).unwrap();
        assert_eq!(brute_force_knapsack(&k, 999), Err(Error::CapExceeded { size: 1000, cap: 999 }));
        assert!(brute_force_knapsack(&k, 1000).is_ok());
    }

    #[test]
    fn standard_examples() {
        let s = StandardFormInstance::from_rows(&[[1, 1]], &[3], &[1, 0], &[0, 0], &[2, 2]).unwrap();
        let r = brute_force_standard(&s, DEFAULT_CAP).unwrap();
        assert_eq!((r.value, &r.witness), (2, &vec![2, 1]));
        assert_eq!(r.stat("states"), 9);

        let s = StandardFormInstance::from_rows(&[[2]], &[3], &[1], &[0], &[5]).unwrap();
        assert!(brute_force_standard(&s, DEFAULT_CAP).unwrap().is_infeasible());

        // b = A·lo with a single admissible point.
        let s = StandardFormInstance::from_rows(&[[1, 1]], &[-2], &[5, 1], &[-1, -1], &[2, 2]).unwrap();
        let r = brute_force_standard(&s, DEFAULT_CAP).unwrap();
        assert_eq!(r.witness, vec![-1, -1]);
    }

    #[test]
    fn reachable_sets() {
        let id = IntMatrix::identity(2);
        let r = enumerate_reachable(&id, 1, &[0, 0], &[1, 1], DEFAULT_CAP).unwrap();
        let expected: HashSet<Vec<i64>> = [vec![0, 0], vec![1, 0], vec![0, 1]].into_iter().collect();
        assert_eq!(r, expected);

        let tri = IntMatrix::from_rows(&[[1, 1, 0], [1, 0, 1], [0, 1, 1]]);
        let r = enumerate_reachable(&tri, 2, &[0; 3], &[1; 3], DEFAULT_CAP).unwrap();
        // x with at most two ones: 1 + 3 + 3 points, all images distinct.
        assert_eq!(r.len(), 7);
        assert!(num_bigint::BigInt::from(r.len()) <= counting_bound(3, 2, &delta(&tri).unwrap()));

        let a = IntMatrix::from_rows(&[[3, 1], [2, 2]]);
        let r = enumerate_reachable(&a, 0, &[-2, -2], &[2, 2], DEFAULT_CAP).unwrap();
        assert_eq!(r, [vec![0, 0]].into_iter().collect());
    }
}
