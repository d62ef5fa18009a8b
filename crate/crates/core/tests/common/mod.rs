#![allow(dead_code)]

use deltakp::{KnapsackInstance, StandardFormInstance};
use proptest::prelude::*;

/// Knapsacks with m in 1..=max_m, n in 1..=max_n and small data.
pub fn knapsack(max_m: usize, max_n: usize, max_a: i64, max_u: i64, max_c: i64) -> impl Strategy<Value = KnapsackInstance> {
    (1..=max_m, 1..=max_n)
        .prop_flat_map(move |(m, n)| {
            (
                proptest::collection::vec(proptest::collection::vec(0..=max_a, n), m),
                proptest::collection::vec(0..=max_u, n),
                proptest::collection::vec(0..=max_c, n),
                proptest::collection::vec(0.0f64..=1.0, m),
            )
        })
        .prop_map(|(rows, u, c, frac)| {
            let b: Vec<i64> = rows
                .iter()
                .zip(&frac)
                .map(|(r, f)| {
                    let full: i64 = r.iter().zip(&u).map(|(a, u)| a * u).sum();
                    (full as f64 * f).round() as i64
                })
                .collect();
            KnapsackInstance::from_rows(&rows, &b, &c, &u).unwrap()
        })
}

/// Full-rank signed instances whose right-hand side is A·x0 for a box point x0,
/// or occasionally shifted by one so that infeasible instances also appear.
pub fn standard(max_m: usize, max_n: usize) -> impl Strategy<Value = StandardFormInstance> {
    (1..=max_m, 0..=2usize)
        .prop_flat_map(move |(m, extra)| {
            let n = (m + extra).min(max_n).max(m);
            (
                proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), m),
                proptest::collection::vec(-2i64..=0, n),
                proptest::collection::vec(0i64..=2, n),
                proptest::collection::vec(-4i64..=4, n),
                proptest::collection::vec(0.0f64..=1.0, n),
                0..6u8,
            )
        })
        .prop_filter_map("rank deficient", |(rows, lo, up, c, t, bump)| {
            let x0: Vec<i64> = lo.iter().zip(&up).zip(&t).map(|((l, u), t)| l + ((u - l) as f64 * t).round() as i64).collect();
            let mut b: Vec<i64> = rows.iter().map(|r| r.iter().zip(&x0).map(|(a, x)| a * x).sum()).collect();
            if bump == 0 {
                b[0] += 1;
            }
            StandardFormInstance::from_rows(&rows, &b, &c, &lo, &up).ok()
        })
}

pub fn l1_distance(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum()
}
