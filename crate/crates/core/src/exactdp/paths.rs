//! Longest path over states (k, h) using sliding-window maxima.
//!
//! For column k with admissible values z ∈ [zlo, zhi], put t = h - zlo·A_k.
//! Then
//!
//! ```text
//! longest(k, h) = c_k·zlo + max_{0 <= j <= W} longest(k-1, t - j·A_k) + c_k·j,   W = zhi - zlo
//! ```
//!
//! The points t lie on lines parallel to A_k. On each line the union of the
//! windows [p, p + W] over predecessor positions p splits into maximal runs of
//! consecutive positions; each run is one path of the graph F_k whose arcs
//! join points differing by A_k, and no window ever crosses from one run to
//! another. Along a run the maximum is maintained with a [`MaxQueue`].

use std::collections::HashMap;

use num_integer::Integer;

use super::{Frame, MaxQueue, ShiftedInstance};
use crate::error::Result;
use crate::report::{Mode, SolveReport, Status};
use crate::state::StateMap;

#[derive(Clone)]
struct Cell {
    h: Vec<i64>,
    value: i64,
    /// Smallest ‖z‖₁ of a prefix reaching h.
    min_l1: i64,
    /// Shifted value of column k on the best path.
    z: i64,
}

#[derive(Default)]
struct Level {
    cells: Vec<Cell>,
    index: StateMap<Vec<i64>, usize>,
}

impl Level {
    fn insert(&mut self, cell: Cell) {
        debug_assert!(!self.index.contains_key(&cell.h));
        self.index.insert(cell.h.clone(), self.cells.len());
        self.cells.push(cell);
    }

    fn get(&self, h: &[i64]) -> Option<&Cell> {
        self.index.get(h).map(|&i| &self.cells[i])
    }
}

/// Points of one line `base + pos·a`, sorted by position.
struct Line {
    base: Vec<i64>,
    /// (position, index into the previous level)
    points: Vec<(i64, usize)>,
}

fn lines_along(points: &[&[i64]], a: &[i64]) -> Vec<Line> {
    let r = a.iter().position(|&v| v != 0).expect("nonzero direction");
    let mut by_base: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut lines: Vec<Line> = Vec::new();
    for (idx, h) in points.iter().enumerate() {
        let pos = Integer::div_floor(&h[r], &a[r]);
        let base: Vec<i64> = h.iter().zip(a).map(|(h, a)| h - pos * a).collect();
        let li = *by_base.entry(base.clone()).or_insert_with(|| {
            lines.push(Line { base, points: Vec::new() });
            lines.len() - 1
        });
        lines[li].points.push((pos, idx));
    }
    for line in &mut lines {
        line.points.sort_unstable();
    }
    lines
}

/// Maximal runs of the union of [p, p + width] over sorted positions p.
fn runs(points: &[(i64, usize)], width: i64) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = Vec::new();
    for &(p, _) in points {
        match out.last_mut() {
            Some(last) if p <= last.1 + 1 => last.1 = last.1.max(p + width),
            _ => out.push((p, p + width)),
        }
    }
    out
}

/// The paths of F_k over `prev + {0..=width}·a`, each listed in order along `a`.
pub fn chain_decomposition(prev: &[Vec<i64>], a: &[i64], width: i64) -> Vec<Vec<Vec<i64>>> {
    let refs: Vec<&[i64]> = prev.iter().map(Vec::as_slice).collect();
    let mut out = Vec::new();
    for line in lines_along(&refs, a) {
        for (s, e) in runs(&line.points, width) {
            out.push((s..=e).map(|p| line.base.iter().zip(a).map(|(b, a)| b + p * a).collect()).collect());
        }
    }
    out
}

struct Counters {
    chains: u64,
    checks: u64,
    mismatches: u64,
}

/// Same optimum as [`super::solve_levels`] under the default radius.
///
/// A state (k, h) is kept when some prefix reaching it has ‖z‖₁ <= radius.
/// With `verify`, every window maximum is recomputed by direct maximization
/// over the run and disagreements are counted in `recurrence_mismatches`.
pub fn solve_paths(sh: &ShiftedInstance, verify: bool) -> Result<SolveReport> {
    let frame = Frame::new(sh)?;
    let mut levels: Vec<Level> = Vec::with_capacity(frame.n + 1);
    let mut root = Level::default();
    root.insert(Cell { h: vec![0; frame.m], value: 0, min_l1: 0, z: 0 });
    levels.push(root);
    let mut counters = Counters { chains: 0, checks: 0, mismatches: 0 };

    for k in 0..frame.n {
        let prev = &levels[k];
        let next = if frame.cols[k].iter().all(|&v| v == 0) {
            zero_column(prev, k, &frame)
        } else {
            column(prev, k, &frame, verify, &mut counters)
        };
        levels.push(next);
    }

    let states: usize = levels.iter().map(|l| l.cells.len()).sum();
    let max_level = levels.iter().map(|l| l.cells.len()).max().unwrap_or(0);
    let report = match levels[frame.n].get(&frame.rhs) {
        None => SolveReport::infeasible(Mode::ExactPaths),
        Some(end) => {
            let mut z = vec![0i64; frame.n];
            let mut h = frame.rhs.clone();
            for k in (0..frame.n).rev() {
                let cell = levels[k + 1].get(&h).expect("predecessor state exists");
                z[k] = cell.z;
                h = h.iter().zip(&frame.cols[k]).map(|(h, a)| h - a * cell.z).collect();
            }
            debug_assert!(h.iter().all(|&v| v == 0));
            SolveReport::solution(Mode::ExactPaths, Status::Optimal, end.value + sh.offset, sh.unshift(&z))
        }
    };
    Ok(report
        .with_stat("states", states as u64)
        .with_stat("max_level_states", max_level as u64)
        .with_stat("chains", counters.chains)
        .with_stat("radius", sh.radius as u64)
        .with_stat("recurrence_checks", counters.checks)
        .with_stat("recurrence_mismatches", counters.mismatches))
}

fn zero_column(prev: &Level, k: usize, frame: &Frame) -> Level {
    let c = frame.cost[k];
    let z = if c > 0 {
        frame.zhi[k]
    } else if c < 0 {
        frame.zlo[k]
    } else {
        0
    };
    let mut next = Level::default();
    for cell in &prev.cells {
        if frame.completable(k + 1, &cell.h) {
            next.insert(Cell { h: cell.h.clone(), value: cell.value + c * z, min_l1: cell.min_l1, z });
        }
    }
    next
}

fn column(prev: &Level, k: usize, frame: &Frame, verify: bool, counters: &mut Counters) -> Level {
    let a = &frame.cols[k];
    let c = frame.cost[k];
    let (zlo, zhi) = (frame.zlo[k], frame.zhi[k]);
    let width = zhi - zlo;
    // Window offsets j = z - zlo with z >= 0, and with z < 0.
    let j0 = (-zlo).max(0);
    let neg_width = (-zlo - 1).min(width);

    let points: Vec<&[i64]> = prev.cells.iter().map(|c| c.h.as_slice()).collect();
    let mut next = Level::default();
    for line in lines_along(&points, a) {
        // Targets h = base + (pos + zlo)·a must be completable by the remaining columns.
        let (flo, fhi) = frame.completable_span(k, &line.base, i64::MIN / 4, i64::MAX / 4);
        let (tlo, thi) = (flo - zlo, fhi - zlo);
        if tlo > thi {
            continue;
        }
        let at: HashMap<i64, &Cell> = line.points.iter().map(|&(p, i)| (p, &prev.cells[i])).collect();
        for (rs, re) in runs(&line.points, width) {
            counters.chains += 1;
            let start = rs.max(tlo - width);
            let end = re.min(thi);
            if start > end {
                continue;
            }
            // Entries are (key, position); the later position wins ties, i.e. the smaller j.
            let mut best: MaxQueue<(Option<i64>, i64)> = MaxQueue::new();
            let mut pos_l1: MaxQueue<(Option<i64>, i64)> = MaxQueue::new();
            let mut neg_l1: MaxQueue<(Option<i64>, i64)> = MaxQueue::new();
            for x in start..=end {
                best.enque((at.get(&x).map(|p| p.value - c * x), x));
                if best.len() as i64 > width + 1 {
                    best.decue();
                }
                let lagged = x - j0;
                if lagged >= start {
                    pos_l1.enque((at.get(&lagged).map(|p| -(p.min_l1 - lagged)), lagged));
                    if pos_l1.len() as i64 > width - j0 + 1 {
                        pos_l1.decue();
                    }
                }
                if neg_width >= 0 {
                    neg_l1.enque((at.get(&x).map(|p| -(p.min_l1 + x)), x));
                    if neg_l1.len() as i64 > neg_width + 1 {
                        neg_l1.decue();
                    }
                }
                if x < tlo {
                    continue;
                }
                let Some(&(Some(key), arg)) = best.get_max() else { continue };
                let window_value = key + c * x;
                let l1_pos = pos_l1.get_max().and_then(|e| e.0).map(|v| -v + zlo + x);
                let l1_neg = neg_l1.get_max().and_then(|e| e.0).map(|v| -v - zlo - x);
                let min_l1 = match (l1_pos, l1_neg) {
                    (Some(p), Some(n)) => p.min(n),
                    (Some(p), None) => p,
                    (None, Some(n)) => n,
                    (None, None) => unreachable!("a reachable window has a finite l1 cost"),
                };
                if verify {
                    counters.checks += 1;
                    let i = x - rs;
                    let naive = (0..=width.min(i)).filter_map(|j| at.get(&(x - j)).map(|p| p.value + c * j)).max();
                    if naive != Some(window_value) {
                        counters.mismatches += 1;
                    }
                }
                if min_l1 > frame.radius {
                    continue;
                }
                let z = zlo + (x - arg);
                let h: Vec<i64> = line.base.iter().zip(a).map(|(b, a)| b + (x + zlo) * a).collect();
                next.insert(Cell { h, value: window_value + c * zlo, min_l1, z });
            }
        }
    }
    next
}
