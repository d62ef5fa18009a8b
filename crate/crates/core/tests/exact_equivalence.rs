mod common;

use deltakp::exactdp::{shift, solve_exact, solve_levels, solve_paths, to_standard_form, ExactOptions, Variant};
use deltakp::oracle::{brute_force_knapsack, brute_force_standard, DEFAULT_CAP};
use deltakp::proximity::counting_bound;
use deltakp::{Instance, Status};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

const VARIANTS: [Variant; 3] = [Variant::Levels { binarized: false }, Variant::Levels { binarized: true }, Variant::Paths];

fn verified() -> ExactOptions {
    ExactOptions { verify_recurrence: true, ..ExactOptions::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn knapsack_variants_match_oracle(inst in common::knapsack(3, 6, 4, 3, 5)) {
        let want = brute_force_knapsack(&inst, DEFAULT_CAP).unwrap();
        let wrapped = Instance::from(inst.clone());
        for v in VARIANTS {
            let got = solve_exact(&wrapped, v, verified()).unwrap();
            prop_assert_eq!(got.status, Status::Optimal);
            prop_assert_eq!(got.value, want.value, "{:?}", v);
            prop_assert!(inst.is_feasible(&got.witness));
            prop_assert_eq!(inst.objective(&got.witness), want.value as i128);
            prop_assert_eq!(got.stat("recurrence_mismatches"), 0);
        }
    }

    #[test]
    fn standard_variants_match_oracle(inst in common::standard(3, 5)) {
        let want = brute_force_standard(&inst, DEFAULT_CAP).unwrap();
        let wrapped = Instance::from(inst.clone());
        for v in VARIANTS {
            let got = solve_exact(&wrapped, v, verified()).unwrap();
            prop_assert_eq!(got.is_infeasible(), want.is_infeasible(), "{:?}", v);
            if !want.is_infeasible() {
                prop_assert_eq!(got.value, want.value, "{:?}", v);
                prop_assert!(inst.is_feasible(&got.witness));
                prop_assert_eq!(got.stat("recurrence_mismatches"), 0);
            }
        }
    }

    #[test]
    fn witnesses_stay_within_the_proximity_radius(inst in common::knapsack(3, 6, 4, 3, 5)) {
        let sh = shift(&to_standard_form(&inst), None).unwrap();
        for r in [solve_levels(&sh, false).unwrap(), solve_levels(&sh, true).unwrap(), solve_paths(&sh, false).unwrap()] {
            let d = common::l1_distance(&r.witness, &sh.floor_x);
            prop_assert!(BigInt::from(d) <= sh.default_radius(), "distance {} radius {}", d, sh.default_radius());
        }
    }

    #[test]
    fn level_sizes_respect_counting_bound(inst in common::standard(2, 4)) {
        let Ok(sh) = shift(&inst, None) else { return Ok(()) };
        let bound = counting_bound(sh.m(), sh.radius as u64, &sh.delta);
        for r in [solve_levels(&sh, false).unwrap(), solve_paths(&sh, false).unwrap()] {
            prop_assert!(BigInt::from(r.stat("max_level_states")) <= bound);
        }
        prop_assert!(bound.to_u128().is_some());
    }
}
