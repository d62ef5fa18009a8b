//! Longest path over states (k, h, l): column index, partial sum, consumed
//! l1 budget. States are built on the fly; the index is a hash map.

use super::{binarize_range, Frame, ShiftedInstance};
use crate::error::Result;
use crate::report::{Mode, SolveReport, Status};
use crate::state::StateMap;

const ROOT: usize = usize::MAX;

struct Node {
    h: Vec<i64>,
    l: i64,
    value: i64,
    parent: usize,
    /// Column and amount added to its shifted value on the arc into this node.
    item: usize,
    dz: i64,
}

#[derive(Default)]
struct Layer {
    ids: Vec<usize>,
    index: StateMap<(Vec<i64>, i64), usize>,
}

struct Graph {
    nodes: Vec<Node>,
    arcs: u64,
}

impl Graph {
    /// Adds the candidate to `layer`, or improves the node already there.
    fn relax(&mut self, layer: &mut Layer, cand: Node) {
        self.arcs += 1;
        let key = (cand.h.clone(), cand.l);
        match layer.index.get(&key) {
            Some(&pos) => {
                let id = layer.ids[pos];
                if cand.value > self.nodes[id].value {
                    self.nodes[id] = cand;
                }
            }
            None => {
                layer.index.insert(key, layer.ids.len());
                layer.ids.push(self.nodes.len());
                self.nodes.push(cand);
            }
        }
    }

    fn step(&self, from: usize, item: usize, dz: i64, frame: &Frame) -> Node {
        let p = &self.nodes[from];
        Node {
            h: p.h.iter().zip(&frame.cols[item]).map(|(h, a)| h + a * dz).collect(),
            l: p.l + dz.abs(),
            value: p.value + frame.cost[item] * dz,
            parent: from,
            item,
            dz,
        }
    }
}

/// Exact optimum among shifted solutions with ‖z‖₁ <= radius.
///
/// Any terminal state (n, b', l) with l <= radius is accepted. With
/// `binarized`, each column's range is split at the sign: nonnegative values
/// are assembled from binary steps starting at 0, negative ones from -1
/// downward, so the l1 cost of every step is just its size.
pub fn solve_levels(sh: &ShiftedInstance, binarized: bool) -> Result<SolveReport> {
    let frame = Frame::new(sh)?;
    let mut g = Graph { nodes: Vec::new(), arcs: 0 };
    let mut layer = Layer::default();
    let root = Node { h: vec![0; frame.m], l: 0, value: 0, parent: ROOT, item: 0, dz: 0 };
    layer.index.insert((root.h.clone(), 0), 0);
    layer.ids.push(0);
    g.nodes.push(root);
    let mut max_layer_h = 1usize;

    for k in 0..frame.n {
        let next = if binarized { binarized_layer(&mut g, &layer, k, &frame) } else { plain_layer(&mut g, &layer, k, &frame) };
        let distinct_h: std::collections::HashSet<&Vec<i64>> = next.ids.iter().map(|&id| &g.nodes[id].h).collect();
        max_layer_h = max_layer_h.max(distinct_h.len());
        layer = next;
    }

    let states = g.nodes.len() as u64;
    let best = layer
        .ids
        .iter()
        .copied()
        .filter(|&id| g.nodes[id].h == frame.rhs)
        .fold(None, |best: Option<usize>, id| match best {
            Some(b) if g.nodes[b].value >= g.nodes[id].value => Some(b),
            _ => Some(id),
        });
    let report = match best {
        None => SolveReport::infeasible(Mode::ExactLevels),
        Some(id) => {
            let mut z = vec![0i64; frame.n];
            let mut cur = id;
            while cur != ROOT {
                let node = &g.nodes[cur];
                z[node.item] += node.dz;
                cur = node.parent;
            }
            let value = g.nodes[id].value + sh.offset;
            SolveReport::solution(Mode::ExactLevels, Status::Optimal, value, sh.unshift(&z))
        }
    };
    Ok(report
        .with_stat("states", states)
        .with_stat("arcs", g.arcs)
        .with_stat("max_level_states", max_layer_h as u64)
        .with_stat("radius", sh.radius as u64)
        .with_stat("binarized", binarized as u64))
}

fn plain_layer(g: &mut Graph, layer: &Layer, k: usize, frame: &Frame) -> Layer {
    let mut next = Layer::default();
    for &id in &layer.ids {
        let budget = frame.radius - g.nodes[id].l;
        let (lo, hi) = frame.completable_span(k, &g.nodes[id].h, frame.zlo[k].max(-budget), frame.zhi[k].min(budget));
        for z in lo..=hi {
            let cand = g.step(id, k, z, frame);
            g.relax(&mut next, cand);
        }
    }
    next
}

fn binarized_layer(g: &mut Graph, layer: &Layer, k: usize, frame: &Frame) -> Layer {
    let mut finals = Layer::default();
    // Nonnegative branch: z = sum of chosen steps.
    let mut cur = Layer::default();
    for &id in &layer.ids {
        let cand = g.step(id, k, 0, frame);
        g.relax(&mut cur, cand);
    }
    cur = run_steps(g, cur, k, &binarize_range(frame.zhi[k]).steps, 1, frame);
    absorb(g, &mut finals, &cur, k, frame);
    // Negative branch: z = -1 - sum of chosen steps.
    if frame.zlo[k] <= -1 {
        let mut cur = Layer::default();
        for &id in &layer.ids {
            if g.nodes[id].l < frame.radius {
                let cand = g.step(id, k, -1, frame);
                g.relax(&mut cur, cand);
            }
        }
        cur = run_steps(g, cur, k, &binarize_range(-1 - frame.zlo[k]).steps, -1, frame);
        absorb(g, &mut finals, &cur, k, frame);
    }
    finals
}

/// One sub-layer per step: every node either skips the step or takes it.
fn run_steps(g: &mut Graph, mut cur: Layer, k: usize, steps: &[i64], sign: i64, frame: &Frame) -> Layer {
    for &s in steps {
        let mut next = Layer::default();
        for &id in &cur.ids {
            let skip = g.step(id, k, 0, frame);
            g.relax(&mut next, skip);
            if g.nodes[id].l + s <= frame.radius {
                let take = g.step(id, k, sign * s, frame);
                g.relax(&mut next, take);
            }
        }
        cur = next;
    }
    cur
}

fn absorb(g: &mut Graph, finals: &mut Layer, branch: &Layer, k: usize, frame: &Frame) {
    for &id in &branch.ids {
        if frame.completable(k + 1, &g.nodes[id].h) {
            let cand = g.step(id, k, 0, frame);
            g.relax(finals, cand);
        }
    }
}
