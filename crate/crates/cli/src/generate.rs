use std::fmt;
use std::str::FromStr;

use deltakp::linalg::{delta, rank};
use deltakp::oracle::{brute_force_knapsack, brute_force_standard};
use deltakp::{Instance, IntMatrix, KnapsackInstance, StandardFormInstance};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::file::{InstanceFile, Meta};

/// Generated files carry `known_opt` when the box has at most this many points.
pub const KNOWN_OPT_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Knapsack,
    Standard,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Knapsack => "knapsack",
            Kind::Standard => "standard",
        })
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "knapsack" => Ok(Kind::Knapsack),
            "standard" => Ok(Kind::Standard),
            _ => Err(format!("unknown kind `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    pub m: usize,
    pub n: usize,
    pub max_entry: i64,
    pub max_u: i64,
    pub max_c: i64,
    pub count: usize,
    pub kind: Kind,
}

impl GenParams {
    fn describe(&self) -> String {
        format!(
            "{} m={} n={} max_entry={} max_u={} max_c={}",
            self.kind, self.m, self.n, self.max_entry, self.max_u, self.max_c
        )
    }
}

/// `count` named instances, identical for identical parameters.
///
/// Knapsack entries are uniform in [0, max_entry], bounds in [0, max_u],
/// costs in [0, max_c] and each b_i uniform in [0, A_i·u]. Standard-form
/// entries are uniform in [-max_entry, max_entry], redrawn until rank(A) = m;
/// lower bounds lie in [-max_u, 0], upper bounds in [0, max_u], costs in
/// [-max_c, max_c] and b = A·x0 for a uniform box point x0.
pub fn generate(p: &GenParams) -> Vec<(String, InstanceFile)> {
    assert!(p.m > 0 && p.n > 0 && p.max_entry > 0, "generator parameters must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    (0..p.count)
        .map(|i| {
            let instance = match p.kind {
                Kind::Knapsack => Instance::Knapsack(knapsack(&mut rng, p)),
                Kind::Standard => Instance::Standard(standard(&mut rng, p)),
            };
            let meta = Meta {
                seed: Some(p.seed),
                generator: Some(p.describe()),
                known_opt: known_opt(&instance),
                delta: delta(instance.a()).ok().and_then(|d| d.to_u64()),
            };
            (format!("{}-s{}-{:03}", p.kind, p.seed, i), InstanceFile { instance, meta })
        })
        .collect()
}

fn matrix(rng: &mut ChaCha8Rng, m: usize, n: usize, lo: i64, hi: i64) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect()).collect();
    IntMatrix::from_rows(&rows)
}

fn knapsack(rng: &mut ChaCha8Rng, p: &GenParams) -> KnapsackInstance {
    let a = loop {
        let a = matrix(rng, p.m, p.n, 0, p.max_entry);
        if !a.is_zero() {
            break a;
        }
    };
    let u: Vec<i64> = (0..p.n).map(|_| rng.gen_range(0..=p.max_u)).collect();
    let c: Vec<i64> = (0..p.n).map(|_| rng.gen_range(0..=p.max_c)).collect();
    let b: Vec<i64> = (0..p.m)
        .map(|i| {
            let full: i64 = a.row(i).iter().zip(&u).map(|(a, u)| a * u).sum();
            rng.gen_range(0..=full)
        })
        .collect();
    KnapsackInstance::new(a, b, c, u).expect("generated knapsack is valid")
}

fn standard(rng: &mut ChaCha8Rng, p: &GenParams) -> StandardFormInstance {
    assert!(p.n >= p.m, "standard instances need n >= m");
    let a = loop {
        let a = matrix(rng, p.m, p.n, -p.max_entry, p.max_entry);
        if rank(&a) == p.m {
            break a;
        }
    };
    let lo: Vec<i64> = (0..p.n).map(|_| rng.gen_range(-p.max_u..=0)).collect();
    let up: Vec<i64> = (0..p.n).map(|_| rng.gen_range(0..=p.max_u)).collect();
    let c: Vec<i64> = (0..p.n).map(|_| rng.gen_range(-p.max_c..=p.max_c)).collect();
    let x0: Vec<i64> = lo.iter().zip(&up).map(|(&l, &u)| rng.gen_range(l..=u)).collect();
    let b: Vec<i64> = a.mul_vec_wide(&x0).into_iter().map(|v| v as i64).collect();
    StandardFormInstance::new(a, b, c, lo, up).expect("generated standard instance is valid")
}

fn known_opt(inst: &Instance) -> Option<i64> {
    let r = match inst {
        Instance::Knapsack(k) => brute_force_knapsack(k, KNOWN_OPT_CAP),
        Instance::Standard(s) => brute_force_standard(s, KNOWN_OPT_CAP),
    };
    r.ok().filter(|r| !r.is_infeasible()).map(|r| r.value)
}
