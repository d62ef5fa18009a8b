//! Exact dynamic programs for bounded standard-form ILPs.
//!
//! Both variants shift coordinates to `x - ⌊x*⌋` around an LP vertex optimum
//! `x*`, so that some integer optimum lies within l1 distance
//! `m(2m+1)^m·Δ + m` of the origin, and then walk the columns left to right
//! over partial sums `h = A_[1..k]·x`.
//!
//! * [`solve_levels`] keeps the consumed l1 budget in the state `(k, h, l)`;
//!   optionally each column's multiplicity range is split into binary steps.
//! * [`solve_paths`] keeps only `(k, h)` and evaluates each column with a
//!   sliding-window maximum along chains `h, h + A_k, h + 2A_k, ...`.

mod binarize;
mod levels;
mod maxqueue;
mod paths;

pub use binarize::{binarize_range, BinarySplit};
pub use levels::solve_levels;
pub use maxqueue::MaxQueue;
pub use paths::{chain_decomposition, solve_paths};

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::instance::{Instance, KnapsackInstance, StandardFormInstance};
use crate::linalg::delta;
use crate::matrix::IntMatrix;
use crate::proximity::proximity_bound;
use crate::ratlp::{solve_relaxation_standard, LpVertexSolution};
use crate::report::{Mode, SolveReport};

/// Ax <= b becomes [A | I]·(x, s) = b with 0 <= s <= b and zero slack cost.
pub fn to_standard_form(inst: &KnapsackInstance) -> StandardFormInstance {
    let (m, n) = (inst.m(), inst.n());
    let a = inst.a().hstack(&IntMatrix::identity(m));
    let mut c = inst.c().to_vec();
    c.extend(std::iter::repeat_n(0, m));
    let lo = vec![0; n + m];
    let mut up = inst.u().to_vec();
    up.extend_from_slice(inst.b());
    StandardFormInstance::new(a, inst.b().to_vec(), c, lo, up).expect("slack identity has rank m")
}

/// A standard-form instance re-centred on `⌊x*⌋`.
#[derive(Debug, Clone)]
pub struct ShiftedInstance {
    pub base: StandardFormInstance,
    pub lp: LpVertexSolution,
    pub floor_x: Vec<i64>,
    /// `lo - ⌊x*⌋`, never positive.
    pub lo: Vec<i64>,
    /// `up - ⌊x*⌋`, never negative.
    pub up: Vec<i64>,
    /// `b - A⌊x*⌋`.
    pub rhs: Vec<i64>,
    /// `c·⌊x*⌋`, added back to shifted objective values.
    pub offset: i64,
    pub delta: BigInt,
    /// l1 budget on the shifted solution.
    pub radius: i64,
}

impl ShiftedInstance {
    pub fn m(&self) -> usize {
        self.base.m()
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// Original coordinates of a shifted point.
    pub fn unshift(&self, z: &[i64]) -> Vec<i64> {
        z.iter().zip(&self.floor_x).map(|(z, f)| z + f).collect()
    }

    /// proximity_bound(m, Δ) + m.
    pub fn default_radius(&self) -> BigInt {
        proximity_bound(self.m(), &self.delta) + BigInt::from(self.m())
    }
}

/// Solves the LP relaxation and moves the origin to its rounded-down vertex.
pub fn shift(inst: &StandardFormInstance, radius_override: Option<i64>) -> Result<ShiftedInstance> {
    let lp = solve_relaxation_standard(inst);
    if !lp.is_optimal() {
        return Err(Error::LpInfeasible);
    }
    let floor_x = lp.floor_x();
    let lo: Vec<i64> = inst.lo().iter().zip(&floor_x).map(|(l, f)| l - f).collect();
    let up: Vec<i64> = inst.up().iter().zip(&floor_x).map(|(u, f)| u - f).collect();
    let rhs: Vec<i64> = inst
        .a()
        .mul_vec_wide(&floor_x)
        .iter()
        .zip(inst.b())
        .map(|(ax, &b)| i64::try_from(b as i128 - ax).map_err(|_| Error::Overflow("shifted rhs")))
        .collect::<Result<_>>()?;
    let offset = i64::try_from(inst.objective(&floor_x)).map_err(|_| Error::Overflow("objective offset"))?;
    let delta = delta(inst.a())?;
    let radius = match radius_override {
        Some(r) => r.max(0),
        None => (proximity_bound(inst.m(), &delta) + BigInt::from(inst.m()))
            .to_i64()
            .ok_or(Error::Overflow("proximity radius exceeds i64"))?,
    };
    Ok(ShiftedInstance { base: inst.clone(), lp, floor_x, lo, up, rhs, offset, delta, radius })
}

/// Per-column data shared by both dynamic programs.
pub(crate) struct Frame {
    pub m: usize,
    pub n: usize,
    pub cols: Vec<Vec<i64>>,
    pub cost: Vec<i64>,
    /// Admissible shifted values per column: [lo, up] ∩ [-radius, radius].
    pub zlo: Vec<i64>,
    pub zhi: Vec<i64>,
    /// Row-wise range of what columns k.. can still contribute.
    suffix_lo: Vec<Vec<i64>>,
    suffix_hi: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
    pub radius: i64,
}

impl Frame {
    pub fn new(sh: &ShiftedInstance) -> Result<Self> {
        let (m, n) = (sh.m(), sh.n());
        let a = sh.base.a();
        let cols: Vec<Vec<i64>> = (0..n).map(|j| a.col(j)).collect();
        let zlo: Vec<i64> = sh.lo.iter().map(|&l| l.max(-sh.radius)).collect();
        let zhi: Vec<i64> = sh.up.iter().map(|&u| u.min(sh.radius)).collect();

        // Every partial sum and objective value must stay far from i64 limits.
        let limit = (i64::MAX / 4) as i128;
        let reach = |j: usize| (zlo[j] as i128).abs().max((zhi[j] as i128).abs());
        let mut value_span = (sh.offset as i128).abs();
        for j in 0..n {
            value_span += (sh.base.c()[j] as i128).abs() * reach(j);
        }
        let mut h_span = 0i128;
        for i in 0..m {
            let row: i128 = (0..n).map(|j| (cols[j][i] as i128).abs() * reach(j)).sum();
            h_span = h_span.max(row + (sh.rhs[i] as i128).abs());
        }
        if value_span > limit || h_span > limit {
            return Err(Error::Overflow("dynamic program range exceeds i64"));
        }

        let mut suffix_lo = vec![vec![0; m]; n + 1];
        let mut suffix_hi = vec![vec![0; m]; n + 1];
        for k in (0..n).rev() {
            for i in 0..m {
                let (p, q) = (cols[k][i] * zlo[k], cols[k][i] * zhi[k]);
                suffix_lo[k][i] = suffix_lo[k + 1][i] + p.min(q);
                suffix_hi[k][i] = suffix_hi[k + 1][i] + p.max(q);
            }
        }
        Ok(Frame {
            m,
            n,
            cols,
            cost: sh.base.c().to_vec(),
            zlo,
            zhi,
            suffix_lo,
            suffix_hi,
            rhs: sh.rhs.clone(),
            radius: sh.radius,
        })
    }

    /// Whether columns k.. can still complete `h` to the right-hand side.
    pub fn completable(&self, k: usize, h: &[i64]) -> bool {
        (0..self.m).all(|i| {
            let need = self.rhs[i] - h[i];
            self.suffix_lo[k][i] <= need && need <= self.suffix_hi[k][i]
        })
    }

    /// Values t with `base + t·A_k` completable by columns k+1.., intersected
    /// with `[lo, hi]`. Empty ranges come back with lo > hi.
    pub fn completable_span(&self, k: usize, base: &[i64], lo: i64, hi: i64) -> (i64, i64) {
        let (mut lo, mut hi) = (lo, hi);
        let col = &self.cols[k];
        for i in 0..self.m {
            let need_lo = self.rhs[i] - self.suffix_hi[k + 1][i] - base[i];
            let need_hi = self.rhs[i] - self.suffix_lo[k + 1][i] - base[i];
            let a = col[i];
            if a == 0 {
                if need_lo > 0 || need_hi < 0 {
                    return (1, 0);
                }
            } else if a > 0 {
                lo = lo.max(Integer::div_ceil(&need_lo, &a));
                hi = hi.min(Integer::div_floor(&need_hi, &a));
            } else {
                lo = lo.max(Integer::div_ceil(&need_hi, &a));
                hi = hi.min(Integer::div_floor(&need_lo, &a));
            }
        }
        (lo, hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Levels { binarized: bool },
    Paths,
}

impl Variant {
    pub fn mode(self) -> Mode {
        match self {
            Variant::Levels { .. } => Mode::ExactLevels,
            Variant::Paths => Mode::ExactPaths,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ExactOptions {
    pub radius_override: Option<i64>,
    /// Check every sliding-window value against the recurrence by direct maximization.
    pub verify_recurrence: bool,
}

/// Converts (for knapsacks), shifts and runs the chosen dynamic program.
/// Knapsack witnesses are reported without slack coordinates.
pub fn solve_exact(inst: &Instance, variant: Variant, opts: ExactOptions) -> Result<SolveReport> {
    let start = Instant::now();
    let (standard, keep) = match inst {
        Instance::Knapsack(k) => (to_standard_form(k), k.n()),
        Instance::Standard(s) => (s.clone(), s.n()),
    };
    let shifted = match shift(&standard, opts.radius_override) {
        Ok(s) => s,
        Err(Error::LpInfeasible) => {
            return Ok(SolveReport::infeasible(variant.mode()).with_stat("lp_infeasible", 1));
        }
        Err(e) => return Err(e),
    };
    let mut report = match variant {
        Variant::Levels { binarized } => solve_levels(&shifted, binarized)?,
        Variant::Paths => solve_paths(&shifted, opts.verify_recurrence)?,
    };
    report.witness.truncate(if report.is_infeasible() { 0 } else { keep });
    report.stats.insert("lp_pivots", shifted.lp.pivots);
    report.stats.insert("micros", start.elapsed().as_micros() as u64);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force_knapsack, brute_force_standard, DEFAULT_CAP};
    use crate::report::Status;

    fn three_items() -> KnapsackInstance {
        KnapsackInstance::from_rows(&[[3, 4, 5]], &[10], &[3, 4, 5], &[1, 1, 1]).unwrap()
    }

    const ALL: [Variant; 3] = [Variant::Levels { binarized: false }, Variant::Levels { binarized: true }, Variant::Paths];

    #[test]
    fn standard_form_of_three_items() {
        let s = to_standard_form(&three_items());
        assert_eq!(s.a().to_rows(), vec![vec![3, 4, 5, 1]]);
        assert_eq!(s.b(), &[10]);
        assert_eq!(s.c(), &[3, 4, 5, 0]);
        assert_eq!(s.up()[3], 10);
        assert_eq!(brute_force_standard(&s, DEFAULT_CAP).unwrap().value, 9);
        assert_eq!(brute_force_knapsack(&three_items(), DEFAULT_CAP).unwrap().value, 9);
    }

    #[test]
    fn two_rows_get_identity_slacks() {
        let k = KnapsackInstance::from_rows(&[[1, 2], [3, 4]], &[5, 6], &[1, 1], &[1, 1]).unwrap();
        let s = to_standard_form(&k);
        assert_eq!(s.a().select_cols(&[2, 3]), IntMatrix::identity(2));
        assert_eq!(&s.up()[2..], &[5, 6]);
    }

    #[test]
    fn shift_around_integral_vertex() {
        let s = StandardFormInstance::from_rows(&[[1, 1]], &[3], &[1, 0], &[0, 0], &[2, 2]).unwrap();
        let sh = shift(&s, None).unwrap();
        assert_eq!(sh.floor_x, vec![2, 1]);
        assert_eq!(sh.rhs, vec![0]);
        assert_eq!(sh.lo, vec![-2, -1]);
        assert_eq!(sh.up, vec![0, 1]);
        // Δ = 1, m = 1: 1·3·1 + 1
        assert_eq!(sh.radius, 4);
        for v in ALL {
            let r = solve_exact(&s.clone().into(), v, ExactOptions::default()).unwrap();
            assert_eq!((r.value, &r.witness), (2, &vec![2, 1]));
        }
    }

    #[test]
    fn shift_preserves_objective() {
        let s = to_standard_form(&three_items());
        let sh = shift(&s, None).unwrap();
        let z: Vec<i64> = [0, 1, 1, 1].iter().zip(&sh.floor_x).map(|(x, f)| x - f).collect();
        assert_eq!(sh.unshift(&z), vec![0, 1, 1, 1]);
        let shifted_value: i64 = z.iter().zip(s.c()).map(|(z, c)| z * c).sum();
        assert_eq!(shifted_value + sh.offset, 9);
    }

    #[test]
    fn lp_infeasible_shift() {
        let s = StandardFormInstance::from_rows(&[[1]], &[7], &[0], &[0], &[3]).unwrap();
        assert!(matches!(shift(&s, None), Err(Error::LpInfeasible)));
        for v in ALL {
            assert!(solve_exact(&s.clone().into(), v, ExactOptions::default()).unwrap().is_infeasible());
        }
    }

    #[test]
    fn three_items_all_variants() {
        let s = to_standard_form(&three_items());
        let sh = shift(&s, None).unwrap();
        for binarized in [false, true] {
            let r = solve_levels(&sh, binarized).unwrap();
            assert_eq!((r.value, &r.witness), (9, &vec![0, 1, 1, 1]));
        }
        let r = solve_paths(&sh, true).unwrap();
        assert_eq!((r.value, &r.witness), (9, &vec![0, 1, 1, 1]));
        assert_eq!(r.stat("recurrence_mismatches"), 0);
        for v in ALL {
            let r = solve_exact(&three_items().into(), v, ExactOptions::default()).unwrap();
            assert_eq!((r.value, &r.witness, r.status), (9, &vec![0, 1, 1], Status::Optimal));
        }
    }

    #[test]
    fn zero_rhs_nonpositive_costs() {
        let s = StandardFormInstance::from_rows(&[[1, 2, -1]], &[0], &[-1, 0, -2], &[0, 0, 0], &[2, 2, 2]).unwrap();
        for v in ALL {
            let r = solve_exact(&s.clone().into(), v, ExactOptions::default()).unwrap();
            assert_eq!(r.value, 0);
            assert_eq!(brute_force_standard(&s, DEFAULT_CAP).unwrap().value, 0);
        }
    }

    #[test]
    fn single_item_chain() {
        let s = StandardFormInstance::from_rows(&[[1, 1]], &[2], &[1, 0], &[0, 0], &[3, 2]).unwrap();
        for v in ALL {
            assert_eq!(solve_exact(&s.clone().into(), v, ExactOptions::default()).unwrap().value, 2);
        }
    }

    #[test]
    fn trivial_knapsack() {
        let k = KnapsackInstance::from_rows(&[[1]], &[0], &[1], &[1]).unwrap();
        for v in ALL {
            assert_eq!(solve_exact(&k.clone().into(), v, ExactOptions::default()).unwrap().value, 0);
        }
    }

    #[test]
    fn integer_infeasible() {
        let s = StandardFormInstance::from_rows(&[[2]], &[3], &[1], &[0], &[5]).unwrap();
        for v in ALL {
            assert!(solve_exact(&s.clone().into(), v, ExactOptions::default()).unwrap().is_infeasible());
        }
    }

    #[test]
    fn completable_span_matches_pointwise_check() {
        let s = StandardFormInstance::from_rows(&[[2, -1, 3], [1, 1, -2]], &[4, 1], &[1, 1, 1], &[-2, -2, -2], &[3, 3, 3]).unwrap();
        let sh = shift(&s, None).unwrap();
        let f = Frame::new(&sh).unwrap();
        for k in 0..3 {
            for b0 in -6..=6 {
                for b1 in -6..=6 {
                    let base = [b0, b1];
                    let (lo, hi) = f.completable_span(k, &base, -10, 10);
                    for t in -10..=10 {
                        let h: Vec<i64> = base.iter().zip(&f.cols[k]).map(|(b, a)| b + t * a).collect();
                        assert_eq!(lo <= t && t <= hi, f.completable(k + 1, &h), "k={k} base={base:?} t={t}");
                    }
                }
            }
        }
    }
}
