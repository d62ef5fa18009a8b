//! LP-rounding greedy with ratio 1/(m+1).
//!
//! Round the LP vertex down, then compare against the best single fractional
//! item. A vertex has at most m fractional coordinates, so the rounded-up
//! vector costs at most m single items more than the rounded-down one.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::instance::KnapsackInstance;
use crate::ratlp::solve_relaxation;
use crate::report::{Mode, SolveReport, Status};

/// Zeroes the upper bound of every item whose column does not fit into b on its own.
pub fn preprocess(inst: &KnapsackInstance) -> KnapsackInstance {
    let u: Vec<i64> = (0..inst.n())
        .map(|j| {
            let fits = (0..inst.m()).all(|i| inst.a().get(i, j) <= inst.b()[i]);
            if fits {
                inst.u()[j]
            } else {
                0
            }
        })
        .collect();
    inst.with_upper(u).expect("shrinking u keeps the instance valid")
}

/// Greedy on an instance that has already gone through [`preprocess`].
pub fn greedy_solve(inst: &KnapsackInstance) -> Result<SolveReport> {
    let start = Instant::now();
    let lp = solve_relaxation(inst);
    let y = lp.floor_x();
    let rounded = inst.objective(&y);
    // Ties go to the rounded vector.
    let single = lp
        .fractional_set
        .iter()
        .map(|&i| (inst.c()[i], i))
        .fold(None, |best: Option<(i64, usize)>, (c, i)| match best {
            Some((bc, _)) if bc >= c => best,
            _ => Some((c, i)),
        });
    let (value, witness) = match single {
        Some((c, i)) if (c as i128) > rounded => {
            let mut e = vec![0; inst.n()];
            e[i] = 1;
            (c as i128, e)
        }
        _ => (rounded, y),
    };
    debug_assert!(inst.is_feasible(&witness), "greedy witness infeasible; was the instance preprocessed?");
    let value = i64::try_from(value).map_err(|_| Error::Overflow("greedy value exceeds i64"))?;
    Ok(SolveReport::solution(Mode::Greedy, Status::Feasible, value, witness)
        .with_stat("lp_pivots", lp.pivots)
        .with_stat("fractional", lp.fractional_set.len() as u64)
        .with_stat("micros", start.elapsed().as_micros() as u64))
}

/// [`preprocess`] followed by [`greedy_solve`].
pub fn greedy(inst: &KnapsackInstance) -> Result<SolveReport> {
    greedy_solve(&preprocess(inst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force_knapsack, DEFAULT_CAP};
    use proptest::prelude::*;

    #[test]
    fn preprocess_examples() {
        let k = KnapsackInstance::from_rows(&[[5]], &[3], &[1], &[2]).unwrap();
        assert_eq!(preprocess(&k).u(), &[0]);
        let k = KnapsackInstance::from_rows(&[[1]], &[3], &[1], &[2]).unwrap();
        assert_eq!(preprocess(&k), k);
        let k = KnapsackInstance::from_rows(&[[1, 4], [4, 1]], &[3, 3], &[1, 1], &[1, 1]).unwrap();
        assert_eq!(preprocess(&k).u(), &[0, 0]);
    }

    #[test]
    fn two_items() {
        let k = KnapsackInstance::from_rows(&[[2, 3]], &[4], &[2, 3], &[1, 1]).unwrap();
        let r = greedy(&k).unwrap();
        assert_eq!(r.value, 3);
        assert!(k.is_feasible(&r.witness));
        let opt = brute_force_knapsack(&k, DEFAULT_CAP).unwrap().value;
        assert_eq!(opt, 3);
        assert!(2 * r.value >= opt);
    }

    #[test]
    fn zero_capacity() {
        let k = KnapsackInstance::from_rows(&[[1]], &[0], &[1], &[1]).unwrap();
        let r = greedy(&k).unwrap();
        assert_eq!((r.value, r.witness), (0, vec![0]));
    }

    #[test]
    fn three_items() {
        let k = KnapsackInstance::from_rows(&[[3, 4, 5]], &[10], &[3, 4, 5], &[1, 1, 1]).unwrap();
        let opt = brute_force_knapsack(&k, DEFAULT_CAP).unwrap().value;
        assert_eq!(opt, 9);
        let r = greedy(&k).unwrap();
        assert!(r.value >= 5 && r.value <= opt);
    }

    #[test]
    fn single_item_candidate_requires_preprocessing() {
        // Item 1 never fits, yet the LP would make it fractional without preprocessing.
        let k = KnapsackInstance::from_rows(&[[1, 10]], &[4], &[1, 100], &[4, 1]).unwrap();
        let r = greedy(&k).unwrap();
        assert!(k.is_feasible(&r.witness));
        assert_eq!(r.value, 4);
    }

    fn instance() -> impl Strategy<Value = KnapsackInstance> {
        (1usize..=3, 1usize..=6).prop_flat_map(|(m, n)| {
            (
                prop::collection::vec(prop::collection::vec(0i64..=4, n), m),
                prop::collection::vec(0i64..=12, m),
                prop::collection::vec(0i64..=5, n),
                prop::collection::vec(0i64..=3, n),
            )
                .prop_map(|(a, b, c, u)| KnapsackInstance::from_rows(&a, &b, &c, &u).unwrap())
        })
    }

    proptest! {
        #[test]
        fn guarantee_against_oracle(k in instance()) {
            let r = greedy(&k).unwrap();
            let opt = brute_force_knapsack(&k, DEFAULT_CAP).unwrap().value;
            prop_assert!(k.is_feasible(&r.witness));
            prop_assert_eq!(k.objective(&r.witness), r.value as i128);
            prop_assert!(r.value <= opt);
            prop_assert!((k.m() as i64 + 1) * r.value >= opt);
            if r.stat("fractional") == 0 {
                prop_assert_eq!(r.value, opt);
            }
        }
    }
}
