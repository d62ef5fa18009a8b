//! Exact rational LP relaxations.
//!
//! A dense bounded-variable simplex over `BigRational` with Bland's rule.
//! Phase one drives artificial variables to zero; phase two maximizes the
//! objective. Nonbasic variables always sit at one of their bounds, so the
//! result is a vertex with at most `m` coordinates strictly inside their box.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::instance::{KnapsackInstance, StandardFormInstance};

pub type Rational = BigRational;

pub fn rational(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// ⌊r⌋ as an integer.
pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpVertexSolution {
    pub status: LpStatus,
    /// Values of the instance's own variables (no slacks).
    pub x: Vec<Rational>,
    pub objective: Rational,
    /// Indices of non-integral coordinates of `x`, ascending.
    pub fractional_set: Vec<usize>,
    /// Simplex iterations, counting bound flips.
    pub pivots: u64,
}

impl LpVertexSolution {
    fn infeasible(n: usize, pivots: u64) -> Self {
        LpVertexSolution {
            status: LpStatus::Infeasible,
            x: vec![Rational::zero(); n],
            objective: Rational::zero(),
            fractional_set: Vec::new(),
            pivots,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// ⌊x⌋ componentwise, narrowed to i64.
    pub fn floor_x(&self) -> Vec<i64> {
        self.x
            .iter()
            .map(|v| i64::try_from(floor(v)).expect("LP vertex coordinate exceeds i64"))
            .collect()
    }
}

/// max c·x over {Ax <= b, 0 <= x <= u}.
pub fn solve_relaxation(inst: &KnapsackInstance) -> LpVertexSolution {
    let (m, n) = (inst.m(), inst.n());
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut r: Vec<Rational> = inst.a().row(i).iter().map(|&v| rational(v)).collect();
        r.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        rows.push(r);
    }
    let lo = vec![Rational::zero(); n + m];
    let mut up: Vec<Option<Rational>> = inst.u().iter().map(|&v| Some(rational(v))).collect();
    up.extend((0..m).map(|_| None));
    let mut cost: Vec<Rational> = inst.c().iter().map(|&v| rational(v)).collect();
    cost.extend((0..m).map(|_| Rational::zero()));
    let b = inst.b().iter().map(|&v| rational(v)).collect();
    solve(rows, b, cost, lo, up, n)
}

/// max c·x over {Ax = b, lo <= x <= up}.
pub fn solve_relaxation_standard(inst: &StandardFormInstance) -> LpVertexSolution {
    let rows = (0..inst.m()).map(|i| inst.a().row(i).iter().map(|&v| rational(v)).collect()).collect();
    solve(
        rows,
        inst.b().iter().map(|&v| rational(v)).collect(),
        inst.c().iter().map(|&v| rational(v)).collect(),
        inst.lo().iter().map(|&v| rational(v)).collect(),
        inst.up().iter().map(|&v| Some(rational(v))).collect(),
        inst.n(),
    )
}

fn solve(
    rows: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    cost: Vec<Rational>,
    lo: Vec<Rational>,
    up: Vec<Option<Rational>>,
    report_n: usize,
) -> LpVertexSolution {
    let mut s = Tableau::phase_one(rows, b, lo, up);
    let n_real = cost.len();
    let mut aux = vec![Rational::zero(); n_real];
    aux.extend((0..s.m).map(|_| -Rational::one()));
    s.optimize(&aux).expect("phase one is bounded below by zero");
    if s.x[n_real..].iter().any(|v| !v.is_zero()) {
        return LpVertexSolution::infeasible(report_n, s.pivots);
    }
    s.retire_artificials(n_real);
    let mut full_cost = cost;
    full_cost.extend((0..s.m).map(|_| Rational::zero()));
    if s.optimize(&full_cost).is_err() {
        // Only reachable with an infinite upper bound on an unconstrained direction.
        panic!("LP relaxation unbounded despite box constraints");
    }
    let x: Vec<Rational> = s.x[..report_n].to_vec();
    let objective = s.x[..n_real].iter().zip(&full_cost).map(|(a, b)| a * b).fold(Rational::zero(), |a, b| a + b);
    let fractional_set = (0..report_n).filter(|&j| !x[j].is_integer()).collect();
    LpVertexSolution { status: LpStatus::Optimal, x, objective, fractional_set, pivots: s.pivots }
}

#[derive(Debug)]
struct Unbounded;

struct Tableau {
    m: usize,
    /// B⁻¹·[A | artificial], one row per constraint.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    x: Vec<Rational>,
    lo: Vec<Rational>,
    up: Vec<Option<Rational>>,
    pivots: u64,
}

impl Tableau {
    fn phase_one(rows: Vec<Vec<Rational>>, b: Vec<Rational>, mut lo: Vec<Rational>, mut up: Vec<Option<Rational>>) -> Self {
        let m = rows.len();
        let n = lo.len();
        let mut x = lo.clone();
        let mut t = Vec::with_capacity(m);
        for (i, row) in rows.into_iter().enumerate() {
            let activity = row.iter().zip(&x).map(|(a, v)| a * v).fold(Rational::zero(), |a, b| a + b);
            let residual = &b[i] - activity;
            let negate = residual.is_negative();
            let mut r: Vec<Rational> = if negate { row.into_iter().map(|v| -v).collect() } else { row };
            r.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            t.push(r);
            x.push(residual.abs());
        }
        lo.extend((0..m).map(|_| Rational::zero()));
        up.extend((0..m).map(|_| None));
        let basis: Vec<usize> = (n..n + m).collect();
        let mut is_basic = vec![false; n + m];
        for &j in &basis {
            is_basic[j] = true;
        }
        Tableau { m, t, basis, is_basic, x, lo, up, pivots: 0 }
    }

    /// Fixes artificials at zero and pivots basic ones out where possible.
    fn retire_artificials(&mut self, n_real: usize) {
        for j in n_real..self.x.len() {
            self.up[j] = Some(Rational::zero());
        }
        for r in 0..self.m {
            if self.basis[r] < n_real {
                continue;
            }
            if let Some(j) = (0..n_real).find(|&j| !self.is_basic[j] && !self.t[r][j].is_zero()) {
                self.pivot(r, j);
            }
            // Otherwise the row is redundant and its artificial stays basic at 0.
        }
    }

    fn is_fixed(&self, j: usize) -> bool {
        matches!(&self.up[j], Some(u) if *u == self.lo[j])
    }

    fn at_lower(&self, j: usize) -> bool {
        self.x[j] == self.lo[j]
    }

    fn at_upper(&self, j: usize) -> bool {
        matches!(&self.up[j], Some(u) if self.x[j] == *u)
    }

    fn optimize(&mut self, cost: &[Rational]) -> Result<(), Unbounded> {
        loop {
            // Bland: lowest-index improving nonbasic column.
            let mut entering = None;
            for j in 0..self.x.len() {
                if self.is_basic[j] || self.is_fixed(j) {
                    continue;
                }
                let mut d = cost[j].clone();
                for i in 0..self.m {
                    let a = &self.t[i][j];
                    if !a.is_zero() {
                        d -= &cost[self.basis[i]] * a;
                    }
                }
                if d.is_positive() && !self.at_upper(j) {
                    entering = Some((j, true));
                    break;
                }
                if d.is_negative() && !self.at_lower(j) {
                    entering = Some((j, false));
                    break;
                }
            }
            let Some((j, increase)) = entering else {
                return Ok(());
            };
            self.step(j, increase)?;
        }
    }

    fn step(&mut self, j: usize, increase: bool) -> Result<(), Unbounded> {
        // Movement of basic variable i per unit of entering movement.
        let rate = |a: &Rational| if increase { -a.clone() } else { a.clone() };
        let mut best: Option<(Rational, Option<usize>)> =
            self.up[j].as_ref().map(|u| (u - &self.lo[j], None));
        for i in 0..self.m {
            let r = rate(&self.t[i][j]);
            if r.is_zero() {
                continue;
            }
            let bvar = self.basis[i];
            let limit = if r.is_negative() {
                Some((&self.x[bvar] - &self.lo[bvar]) / -&r)
            } else {
                self.up[bvar].as_ref().map(|u| (u - &self.x[bvar]) / &r)
            };
            let Some(limit) = limit else { continue };
            let better = match &best {
                None => true,
                Some((cur, None)) => limit < *cur,
                Some((cur, Some(row))) => limit < *cur || (limit == *cur && bvar < self.basis[*row]),
            };
            if better {
                best = Some((limit, Some(i)));
            }
        }
        let Some((theta, leave)) = best else {
            return Err(Unbounded);
        };
        self.pivots += 1;
        let signed = if increase { theta.clone() } else { -theta.clone() };
        if !theta.is_zero() {
            for i in 0..self.m {
                let a = &self.t[i][j];
                if !a.is_zero() {
                    let delta = a * &signed;
                    let bvar = self.basis[i];
                    self.x[bvar] -= delta;
                }
            }
            self.x[j] += &signed;
        }
        match leave {
            None => {
                // Bound flip; snap to the exact bound.
                self.x[j] = if increase { self.up[j].clone().unwrap() } else { self.lo[j].clone() };
            }
            Some(r) => {
                let bvar = self.basis[r];
                let hit_lower = rate(&self.t[r][j]).is_negative();
                self.x[bvar] = if hit_lower { self.lo[bvar].clone() } else { self.up[bvar].clone().unwrap() };
                self.pivot(r, j);
            }
        }
        Ok(())
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.t[r][j].clone();
        for v in self.t[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.t[r].clone();
        for i in 0..self.m {
            if i == r || self.t[i][j].is_zero() {
                continue;
            }
            let f = self.t[i][j].clone();
            for (v, pr) in self.t[i].iter_mut().zip(&pivot_row) {
                if !pr.is_zero() {
                    *v -= &f * pr;
                }
            }
        }
        self.is_basic[self.basis[r]] = false;
        self.is_basic[j] = true;
        self.basis[r] = j;
    }
}
