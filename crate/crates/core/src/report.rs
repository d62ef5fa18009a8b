use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Greedy,
    Fptas,
    ExactLevels,
    ExactPaths,
    Oracle,
}

impl Mode {
    pub const ALL: [Mode; 5] = [Mode::Greedy, Mode::Fptas, Mode::ExactLevels, Mode::ExactPaths, Mode::Oracle];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Greedy => "greedy",
            Mode::Fptas => "fptas",
            Mode::ExactLevels => "exact-levels",
            Mode::ExactPaths => "exact-paths",
            Mode::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown mode `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    /// A solution without an optimality certificate (greedy, fptas).
    Feasible,
    Infeasible,
}

/// Named counters. Keys are stable: `states`, `arcs`, `lp_pivots`, `micros`, ...
pub type Stats = BTreeMap<&'static str, u64>;

/// Outcome of any solver run. For `Infeasible` the witness is empty and value is 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub mode: Mode,
    pub status: Status,
    pub value: i64,
    pub witness: Vec<i64>,
    pub stats: Stats,
}

impl SolveReport {
    pub fn solution(mode: Mode, status: Status, value: i64, witness: Vec<i64>) -> Self {
        SolveReport { mode, status, value, witness, stats: Stats::new() }
    }

    pub fn infeasible(mode: Mode) -> Self {
        SolveReport { mode, status: Status::Infeasible, value: 0, witness: Vec::new(), stats: Stats::new() }
    }

    pub fn is_infeasible(&self) -> bool {
        self.status == Status::Infeasible
    }

    pub fn stat(&self, key: &str) -> u64 {
        self.stats.get(key).copied().unwrap_or(0)
    }

    pub(crate) fn with_stat(mut self, key: &'static str, v: u64) -> Self {
        self.stats.insert(key, v);
        self
    }
}
