mod common;

use deltakp::linalg::delta;
use deltakp::oracle::{
    brute_force_knapsack_ordered, brute_force_standard_ordered, enumerate_reachable, Order, DEFAULT_CAP,
};
use deltakp::proximity::counting_bound;
use deltakp::IntMatrix;
use num_bigint::BigInt;
use proptest::prelude::*;

fn matrix(max_m: usize, max_n: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_m, 1..=max_n)
        .prop_flat_map(|(m, n)| proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), m))
        .prop_map(|rows| IntMatrix::from_rows(&rows))
        .prop_filter("zero matrix", |a| !a.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reachable_set_within_counting_bound(a in matrix(3, 5), gamma in 0u64..=4, width in 0i64..=2) {
        let n = a.cols();
        let lo = vec![-width; n];
        let up = vec![width; n];
        let set = enumerate_reachable(&a, gamma, &lo, &up, DEFAULT_CAP).unwrap();
        let bound = counting_bound(a.rows(), gamma, &delta(&a).unwrap());
        prop_assert!(BigInt::from(set.len()) <= bound, "{} > {}", set.len(), bound);
        if gamma == 0 {
            prop_assert_eq!(set.len(), 1);
        }
    }

    #[test]
    fn knapsack_oracle_order_independent(inst in common::knapsack(3, 5, 4, 3, 5)) {
        let f = brute_force_knapsack_ordered(&inst, DEFAULT_CAP, Order::Forward).unwrap();
        let b = brute_force_knapsack_ordered(&inst, DEFAULT_CAP, Order::Backward).unwrap();
        prop_assert_eq!(f.value, b.value);
        prop_assert!(inst.is_feasible(&b.witness));
    }

    #[test]
    fn standard_oracle_order_independent(inst in common::standard(3, 5)) {
        let f = brute_force_standard_ordered(&inst, DEFAULT_CAP, Order::Forward).unwrap();
        let b = brute_force_standard_ordered(&inst, DEFAULT_CAP, Order::Backward).unwrap();
        prop_assert_eq!(f.is_infeasible(), b.is_infeasible());
        prop_assert_eq!(f.value, b.value);
    }
}
