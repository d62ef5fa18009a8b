//! FPTAS for the bounded multidimensional knapsack with a Δ-modular matrix.
//!
//! Items are split by profit into heavy and light ones relative to the
//! greedy value. Heavy items are enumerated by a dynamic program over scaled
//! costs `w = ⌊c/s⌋` whose cells hold every reachable partial load `y`;
//! light items fill the residual capacity `b - y` greedily.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::greedy::{greedy_solve, preprocess};
use crate::instance::KnapsackInstance;
use crate::matrix::IntMatrix;
use crate::ratlp::{floor, rational, Rational};
use crate::report::{Mode, SolveReport, Status};
use crate::state::StateMap;

/// Parameters derived from ε and the greedy value.
#[derive(Debug, Clone, PartialEq)]
pub struct FptasParams {
    pub epsilon: Rational,
    /// ε / (2(m+1))
    pub alpha: Rational,
    /// α²
    pub beta: Rational,
    /// β · C^gr
    pub scale: Rational,
    /// (m+1)/α, bound on ‖x_H‖₁ for feasible x.
    pub gamma: Rational,
    /// ⌈(m+1)/β⌉, bound on the scaled heavy cost.
    pub cost_ceiling: i64,
    pub greedy_value: i64,
    /// Items with c_i > α·C^gr.
    pub heavy: Vec<usize>,
    pub light: Vec<usize>,
}

impl FptasParams {
    pub fn new(c: &[i64], m: usize, epsilon: &Rational, greedy_value: i64) -> Result<Self> {
        check_epsilon(epsilon)?;
        let m1 = rational(m as i64 + 1);
        let alpha = epsilon / (rational(2) * &m1);
        let beta = &alpha * &alpha;
        let gr = rational(greedy_value);
        let scale = &beta * &gr;
        let gamma = &m1 / &alpha;
        let ceiling = ceil(&(&m1 / &beta));
        let cost_ceiling = ceiling.to_i64().ok_or(Error::Overflow("cost ceiling exceeds i64"))?;
        let threshold = &alpha * &gr;
        let (heavy, light): (Vec<usize>, Vec<usize>) = (0..c.len()).partition(|&i| rational(c[i]) > threshold);
        Ok(FptasParams {
            epsilon: epsilon.clone(),
            alpha,
            beta,
            scale,
            gamma,
            cost_ceiling,
            greedy_value,
            heavy,
            light,
        })
    }

    pub fn gamma_floor(&self) -> i64 {
        floor(&self.gamma).to_i64().expect("gamma fits i64")
    }
}

pub(crate) fn ceil(r: &Rational) -> BigInt {
    r.numer().div_ceil(r.denom())
}

fn check_epsilon(epsilon: &Rational) -> Result<()> {
    if !epsilon.is_positive() || *epsilon >= Rational::one() {
        return Err(Error::EpsilonOutOfRange(epsilon.to_string()));
    }
    Ok(())
}

/// w_i = ⌊c_i / s⌋ for every i in `heavy`.
pub fn scaled_costs(c: &[i64], s: &Rational, heavy: &[usize]) -> Result<Vec<i64>> {
    if !s.is_positive() {
        return Err(Error::ZeroScale);
    }
    heavy
        .iter()
        .map(|&i| floor(&(rational(c[i]) / s)).to_i64().ok_or(Error::Overflow("scaled cost exceeds i64")))
        .collect()
}

/// One stored point of DP(k, c₀).
#[derive(Debug, Clone)]
pub struct CostEntry {
    pub c0: i64,
    pub y: Vec<i64>,
    /// Smallest ‖x‖₁ among prefixes reaching (c₀, y).
    pub l1: i64,
    /// Unscaled cost of the stored witness prefix.
    pub cost: i64,
    parent: usize,
    z: i64,
}

/// The family DP(k, c₀) for k = 0..=|H|, with parent links for witnesses.
#[derive(Debug, Clone)]
pub struct CostLevelTable {
    levels: Vec<Vec<CostEntry>>,
}

impl CostLevelTable {
    /// Number of items processed.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &[CostEntry] {
        &self.levels[k]
    }

    /// DP(k, c₀) as a list of load vectors.
    pub fn cell(&self, k: usize, c0: i64) -> Vec<&[i64]> {
        self.levels[k].iter().filter(|e| e.c0 == c0).map(|e| e.y.as_slice()).collect()
    }

    pub fn total_states(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// max over (k, c₀) of |DP(k, c₀)|.
    pub fn max_cell_size(&self) -> usize {
        self.levels
            .iter()
            .map(|lvl| {
                let mut counts: HashMap<i64, usize> = HashMap::new();
                for e in lvl {
                    *counts.entry(e.c0).or_default() += 1;
                }
                counts.into_values().max().unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    /// Witness over the processed items for entry `idx` of level `k`.
    pub fn reconstruct(&self, k: usize, idx: usize) -> Vec<i64> {
        let mut x = vec![0; k];
        let mut cur = idx;
        for level in (1..=k).rev() {
            let e = &self.levels[level][cur];
            x[level - 1] = e.z;
            cur = e.parent;
        }
        x
    }
}

/// Builds DP(k, c₀) over the columns of `a` with scaled costs `w`.
///
/// `costs` are the unscaled profits, carried along for witness valuation.
/// Transitions use z ∈ [0, min(⌊γ⌋, u_k)] and are kept only when
/// `y + A_k z <= b`, `c₀ <= ceiling` and the prefix l1 norm stays within ⌊γ⌋.
pub fn dp_by_costs(
    a: &IntMatrix,
    b: &[i64],
    u: &[i64],
    w: &[i64],
    costs: &[i64],
    ceiling: i64,
    gamma_floor: i64,
) -> CostLevelTable {
    let m = a.rows();
    let mut levels = vec![vec![CostEntry { c0: 0, y: vec![0; m], l1: 0, cost: 0, parent: 0, z: 0 }]];
    for k in 0..a.cols() {
        let col = a.col(k);
        let zmax = u[k].min(gamma_floor);
        let prev = &levels[k];
        let mut next: Vec<CostEntry> = Vec::new();
        let mut index: StateMap<(i64, Vec<i64>), usize> = StateMap::new();
        for (pi, e) in prev.iter().enumerate() {
            for z in 0..=zmax {
                let c0 = e.c0 + z * w[k];
                let l1 = e.l1 + z;
                if c0 > ceiling || l1 > gamma_floor {
                    break;
                }
                let y: Vec<i64> = e.y.iter().zip(&col).map(|(&y, &a)| y + a * z).collect();
                if y.iter().zip(b).any(|(y, b)| y > b) {
                    break;
                }
                let cost = e.cost + z * costs[k];
                let cand = CostEntry { c0, y, l1, cost, parent: pi, z };
                match index.get(&(c0, cand.y.clone())) {
                    Some(&at) => {
                        let cur = &next[at];
                        if (cand.l1, -cand.cost) < (cur.l1, -cur.cost) {
                            next[at] = cand;
                        }
                    }
                    None => {
                        index.insert((c0, cand.y.clone()), next.len());
                        next.push(cand);
                    }
                }
            }
        }
        levels.push(next);
    }
    CostLevelTable { levels }
}

/// Everything a run produced, for inspection by tests and the harness.
#[derive(Debug, Clone)]
pub struct FptasOutcome {
    pub report: SolveReport,
    /// None when the greedy value is 0 and the run short-circuits.
    pub params: Option<FptasParams>,
    pub table: Option<CostLevelTable>,
}

pub fn fptas_solve(inst: &KnapsackInstance, epsilon: &Rational) -> Result<SolveReport> {
    Ok(fptas_solve_detailed(inst, epsilon)?.report)
}

pub fn fptas_solve_detailed(inst: &KnapsackInstance, epsilon: &Rational) -> Result<FptasOutcome> {
    check_epsilon(epsilon)?;
    let start = Instant::now();
    let n = inst.n();
    let max_cost: i128 = inst.c().iter().zip(inst.u()).map(|(&c, &u)| c as i128 * u as i128).sum();
    if max_cost > i64::MAX as i128 / 2 {
        return Err(Error::Overflow("total profit exceeds i64"));
    }
    let pre = preprocess(inst);
    let gr = greedy_solve(&pre)?;
    if gr.value == 0 {
        // (m+1)·C^gr >= OPT, so OPT = 0.
        let report = SolveReport::solution(Mode::Fptas, Status::Feasible, 0, vec![0; n])
            .with_stat("micros", start.elapsed().as_micros() as u64);
        return Ok(FptasOutcome { report, params: None, table: None });
    }
    let params = FptasParams::new(pre.c(), pre.m(), epsilon, gr.value)?;
    let w = scaled_costs(pre.c(), &params.scale, &params.heavy)?;
    let heavy_u: Vec<i64> = params.heavy.iter().map(|&i| pre.u()[i]).collect();
    let heavy_c: Vec<i64> = params.heavy.iter().map(|&i| pre.c()[i]).collect();
    let table = dp_by_costs(
        &pre.a().select_cols(&params.heavy),
        pre.b(),
        &heavy_u,
        &w,
        &heavy_c,
        params.cost_ceiling,
        params.gamma_floor(),
    );

    let depth = table.depth();
    let finals = table.level(depth);
    let mut order: Vec<usize> = (0..finals.len()).collect();
    order.sort_by_key(|&i| finals[i].c0);

    let mut light_cache: HashMap<Vec<i64>, SolveReport> = HashMap::new();
    let mut lp_pivots = gr.stat("lp_pivots");
    let mut best: Option<(i64, usize)> = None;
    for &idx in &order {
        let e = &finals[idx];
        let q = match light_cache.get(&e.y) {
            Some(r) => r.value,
            None => {
                let r = light_greedy(&pre, &params.light, &e.y)?;
                lp_pivots += r.stat("lp_pivots");
                let v = r.value;
                light_cache.insert(e.y.clone(), r);
                v
            }
        };
        let total = e.cost + q;
        if best.is_none_or(|(b, _)| total > b) {
            best = Some((total, idx));
        }
    }
    let (value, idx) = best.expect("DP(|H|, 0) contains y = 0");
    let mut witness = vec![0; n];
    for (pos, &item) in params.heavy.iter().enumerate() {
        witness[item] = table.reconstruct(depth, idx)[pos];
    }
    let light = &light_cache[&finals[idx].y];
    for (pos, &item) in params.light.iter().enumerate() {
        witness[item] = light.witness[pos];
    }
    debug_assert!(inst.is_feasible(&witness));
    debug_assert_eq!(inst.objective(&witness), value as i128);

    let report = SolveReport::solution(Mode::Fptas, Status::Feasible, value, witness)
        .with_stat("states", table.total_states() as u64)
        .with_stat("max_cell", table.max_cell_size() as u64)
        .with_stat("heavy", params.heavy.len() as u64)
        .with_stat("light", params.light.len() as u64)
        .with_stat("greedy_calls", light_cache.len() as u64)
        .with_stat("lp_pivots", lp_pivots)
        .with_stat("micros", start.elapsed().as_micros() as u64);
    Ok(FptasOutcome { report, params: Some(params), table: Some(table) })
}

/// Greedy on Pr(L, b - y), re-preprocessed for the smaller right-hand side.
fn light_greedy(pre: &KnapsackInstance, light: &[usize], y: &[i64]) -> Result<SolveReport> {
    if light.is_empty() {
        return Ok(SolveReport::solution(Mode::Greedy, Status::Feasible, 0, Vec::new()));
    }
    let rhs: Vec<i64> = pre.b().iter().zip(y).map(|(b, y)| b - y).collect();
    let sub = pre.restrict(light, rhs)?;
    greedy_solve(&preprocess(&sub))
}
