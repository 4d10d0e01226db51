//! Uniform line virtual network on a tree physical network.
//!
//! Walking the line across the tree crosses each tree edge an odd number of
//! times if it separates the two end images and an even, nonzero number of
//! times otherwise. The best walk crosses the edges of the end-to-end path
//! `P*` once and every other edge twice, so the optimum is
//! `2 * sum(t) - t(P*)` with `P*` the costliest path that contains every
//! capacity-1 edge.

use crate::error::{unsupported, Result};
use crate::model::{Capacity, Embedding, Instance, Network, NodeId, PhysicalNetwork, Variant};
use crate::paths::tree_path;
use crate::solvers::{Solution, SolveResult};
use crate::topology::{is_uniform, line_order};

const NAME: &str = "line-tree";

/// Costliest path that starts at `from` and never enters `blocked`.
fn max_down(pn: &PhysicalNetwork, from: NodeId, blocked: Option<NodeId>) -> (u64, Vec<NodeId>) {
    let mut best = (0, vec![from]);
    for &(y, e) in pn.neighbors(from) {
        if Some(y) == blocked {
            continue;
        }
        let (c, mut tail) = max_down(pn, y, Some(from));
        let c = c + pn.edge(e).cost;
        if c > best.0 {
            tail.insert(0, from);
            best = (c, tail);
        }
    }
    best
}

/// The path `P*`, or `None` when the capacity-1 edges are not on one path.
fn best_path(pn: &PhysicalNetwork, respect: bool) -> Option<Vec<NodeId>> {
    let tight: Vec<usize> = if respect {
        (0..pn.edge_count())
            .filter(|&e| pn.edge(e).capacity == Capacity::Finite(1))
            .collect()
    } else {
        Vec::new()
    };
    if tight.is_empty() {
        let (_, sweep) = max_down(pn, 0, None);
        let u = *sweep.last().expect("non-empty");
        return Some(max_down(pn, u, None).1);
    }

    let terminals: Vec<NodeId> = tight
        .iter()
        .flat_map(|&e| [pn.edge(e).u, pn.edge(e).v])
        .collect();
    let farthest = |from: NodeId| {
        terminals
            .iter()
            .copied()
            .max_by_key(|&t| {
                (
                    tree_path(pn, from, t).expect("tree").len(),
                    std::cmp::Reverse(t),
                )
            })
            .expect("non-empty")
    };
    let a = farthest(terminals[0]);
    let b = farthest(a);
    let core = tree_path(pn, a, b).expect("tree");
    let on_core = |e: usize| {
        let (u, v) = (pn.edge(e).u, pn.edge(e).v);
        core.windows(2)
            .any(|w| (w[0].min(w[1]), w[0].max(w[1])) == (u, v))
    };
    if !tight.iter().all(|&e| on_core(e)) {
        return None;
    }
    let (_, mut head) = max_down(pn, a, Some(core[1]));
    let (_, tail) = max_down(pn, b, Some(core[core.len() - 2]));
    head.reverse();
    head.pop();
    head.extend(core);
    head.pop();
    head.extend(tail);
    Some(head)
}

/// Depth-first order from one end of `path` to the other, off-path subtrees first.
fn walk_order(pn: &PhysicalNetwork, path: &[NodeId]) -> Vec<NodeId> {
    let n = pn.node_count();
    let mut succ = vec![None; n];
    for w in path.windows(2) {
        succ[w[0]] = Some(w[1]);
    }
    let mut order = Vec::with_capacity(n);
    fn visit(
        pn: &PhysicalNetwork,
        v: NodeId,
        parent: Option<NodeId>,
        succ: &[Option<NodeId>],
        order: &mut Vec<NodeId>,
    ) {
        order.push(v);
        for &(c, _) in pn.neighbors(v) {
            if Some(c) != parent && Some(c) != succ[v] {
                visit(pn, c, Some(v), succ, order);
            }
        }
        if let Some(next) = succ[v] {
            visit(pn, next, Some(v), succ, order);
        }
    }
    visit(pn, path[0], None, &succ, &mut order);
    order
}

pub fn solve_uniform_line_on_tree_wcvne(instance: &Instance) -> Result<SolveResult> {
    let vn = &instance.vn;
    let pn = &instance.pn;
    let line = match line_order(vn) {
        Some(order) if is_uniform(vn) => order,
        _ => return Err(unsupported(NAME, "VN is not a uniform line")),
    };
    if !pn.is_tree() {
        return Err(unsupported(NAME, "PN is not a tree"));
    }
    let n = instance.n();
    let respect = instance.variant.respects_capacities();
    if n > 1 && respect && pn.edges().iter().any(|e| e.capacity == Capacity::Finite(0)) {
        return Ok(SolveResult::Infeasible);
    }
    let Some(star_path) = best_path(pn, respect) else {
        return Ok(SolveResult::Infeasible);
    };

    let total: u64 = pn.edges().iter().map(|e| e.cost).sum();
    let cost = 2 * total - pn.path_cost(&star_path).expect("tree path");
    let order = walk_order(pn, &star_path);
    let mut node_map = vec![0; n];
    for (&v, &p) in line.iter().zip(&order) {
        node_map[v] = p;
    }
    let witness = Embedding::routed(vn, node_map, |a, b| tree_path(pn, a, b).expect("tree"));
    let sol = Solution { cost, witness };
    Ok(match instance.variant {
        Variant::Cvne => SolveResult::Feasible(sol),
        _ => SolveResult::Optimal(sol),
    })
}
