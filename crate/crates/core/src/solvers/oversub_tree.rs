//! Oversubscribed two-tier star on a tree physical network.
//!
//! For a fixed root image `R`, the tree is processed bottom-up. A state
//! `(x, out, in)` of the subtree `T_r` records how many groups have their
//! root inside `T_r` (`x`), how many leaves of those groups still have to be
//! placed outside (`out`), and how many nodes of `T_r` host leaves of groups
//! rooted outside (`in`). The edge above `r` then carries
//! `x * s / o + out + in` units of demand.
//!
//! Children are merged one at a time. When two parts are merged, `k` of the
//! open leaves are paired across the two parts; the pairing is limited to
//! what the parts can actually exchange, which is `min(out1, in2) +
//! min(out2, in1)`.

use std::collections::BTreeMap;

use crate::error::{unsupported, Result};
use crate::model::{Embedding, Instance, Network, NodeId, PhysicalNetwork, Variant};
use crate::paths::tree_path;
use crate::solvers::{Solution, SolveResult};
use crate::topology::{oversub_shape, OversubShape};

const NAME: &str = "oversub-tree";

/// `(groups inside, leaves owed outside, slots taken from outside)`.
type State = (usize, usize, usize);

#[derive(Clone, Copy, Debug)]
struct Step {
    prev: State,
    child: State,
    /// Pairs of (open leaf of the left part, slot in the child).
    a: usize,
    /// Pairs of (open leaf of the child, slot in the left part).
    b: usize,
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    cost: u64,
    step: Option<Step>,
}

type Table = BTreeMap<State, Entry>;

struct RootedDp<'a> {
    pn: &'a PhysicalNetwork,
    root: NodeId,
    g: usize,
    s: usize,
    demand: u64,
    respect: bool,
    children: Vec<Vec<NodeId>>,
    up_edge: Vec<Option<usize>>,
    /// Per node: the base table followed by one table per merged child.
    tables: Vec<Vec<Table>>,
    /// Per node: the last table with the edge above it accounted for.
    finals: Vec<BTreeMap<State, u64>>,
}

impl<'a> RootedDp<'a> {
    fn new(pn: &'a PhysicalNetwork, root: NodeId, shape: &OversubShape, respect: bool) -> Self {
        let n = pn.node_count();
        let mut children = vec![Vec::new(); n];
        let mut up_edge = vec![None; n];
        let mut order = vec![root];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut idx = 0;
        while idx < order.len() {
            let v = order[idx];
            idx += 1;
            for &(c, e) in pn.neighbors(v) {
                if !seen[c] {
                    seen[c] = true;
                    children[v].push(c);
                    up_edge[c] = Some(e);
                    order.push(c);
                }
            }
        }
        let mut dp = RootedDp {
            pn,
            root,
            g: shape.group_count(),
            s: shape.s as usize,
            demand: shape.root_demand,
            respect,
            children,
            up_edge,
            tables: vec![Vec::new(); n],
            finals: vec![BTreeMap::new(); n],
        };
        for &v in order.iter().rev() {
            dp.solve_node(v);
        }
        dp
    }

    fn keep(&self, (x, _, i): State) -> bool {
        x <= self.g && i <= (self.g - x) * self.s
    }

    fn solve_node(&mut self, r: NodeId) {
        let mut table = Table::new();
        let base = |cost| Entry { cost, step: None };
        if r == self.root {
            table.insert((0, 0, 0), base(0));
        } else {
            table.insert((0, 0, 1), base(0));
            if self.g > 0 {
                table.insert((1, self.s, 0), base(0));
            }
        }
        let mut stages = vec![table];
        for &c in &self.children[r] {
            let left = stages.last().expect("base table");
            let mut merged = Table::new();
            for (&prev, left_entry) in left {
                let (x1, o1, i1) = prev;
                for (&child, &child_cost) in &self.finals[c] {
                    let (x2, o2, i2) = child;
                    let ab = o1.min(i2);
                    let ba = o2.min(i1);
                    for k in 0..=ab + ba {
                        let a = k.min(ab);
                        let b = k - a;
                        let state = (x1 + x2, o1 + o2 - k, i1 + i2 - k);
                        if !self.keep(state) {
                            continue;
                        }
                        let cost = left_entry.cost + child_cost;
                        if merged.get(&state).is_none_or(|e| cost < e.cost) {
                            merged.insert(
                                state,
                                Entry {
                                    cost,
                                    step: Some(Step { prev, child, a, b }),
                                },
                            );
                        }
                    }
                }
            }
            stages.push(merged);
        }

        let last = stages.last().expect("base table");
        let final_table = match self.up_edge[r] {
            None => last.iter().map(|(&st, e)| (st, e.cost)).collect(),
            Some(edge) => {
                let e = self.pn.edge(edge);
                last.iter()
                    .filter_map(|(&(x, o, i), entry)| {
                        let b = x as u64 * self.demand + (o + i) as u64;
                        if self.respect && !e.capacity.admits(b) {
                            return None;
                        }
                        Some(((x, o, i), entry.cost + b * e.cost))
                    })
                    .collect()
            }
        };
        self.tables[r] = stages;
        self.finals[r] = final_table;
    }

    fn answer(&self) -> Option<u64> {
        self.finals[self.root].get(&(self.g, 0, 0)).copied()
    }

    /// Replays the choices behind `state` at `r`, returning open leaves (as
    /// group ids) and free slots (as physical nodes).
    fn rebuild(
        &self,
        r: NodeId,
        state: State,
        placement: &mut Placement,
    ) -> (Vec<usize>, Vec<NodeId>) {
        let stages = &self.tables[r];
        let mut steps = Vec::with_capacity(stages.len() - 1);
        let mut cur = state;
        for table in stages[1..].iter().rev() {
            let step = table[&cur].step.expect("merged entry");
            steps.push(step);
            cur = step.prev;
        }
        steps.reverse();

        let (mut outs, mut ins) = match cur {
            (0, 0, 0) => {
                placement.root = r;
                (Vec::new(), Vec::new())
            }
            (0, 0, 1) => (Vec::new(), vec![r]),
            _ => {
                let group = placement.group_hosts.len();
                placement.group_hosts.push(r);
                placement.leaf_hosts.push(Vec::new());
                (vec![group; self.s], Vec::new())
            }
        };
        for (child, step) in self.children[r].iter().zip(steps) {
            let (mut c_outs, mut c_ins) = self.rebuild(*child, step.child, placement);
            for _ in 0..step.a {
                let group = outs.pop().expect("open leaf");
                placement.leaf_hosts[group].push(c_ins.pop().expect("free slot"));
            }
            for _ in 0..step.b {
                let group = c_outs.pop().expect("open leaf");
                placement.leaf_hosts[group].push(ins.pop().expect("free slot"));
            }
            outs.extend(c_outs);
            ins.extend(c_ins);
        }
        (outs, ins)
    }
}

#[derive(Default)]
struct Placement {
    root: NodeId,
    group_hosts: Vec<NodeId>,
    leaf_hosts: Vec<Vec<NodeId>>,
}

pub fn solve_oversub_2star_on_tree_wcvne(instance: &Instance) -> Result<SolveResult> {
    let shape = oversub_shape(&instance.vn)
        .ok_or_else(|| unsupported(NAME, "VN is not an oversubscribed 2-star"))?;
    let pn = &instance.pn;
    if !pn.is_tree() {
        return Err(unsupported(NAME, "PN is not a tree"));
    }
    let respect = instance.variant.respects_capacities();

    let mut best: Option<(u64, RootedDp)> = None;
    for root in 0..instance.n() {
        let dp = RootedDp::new(pn, root, &shape, respect);
        if let Some(cost) = dp.answer() {
            if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                best = Some((cost, dp));
            }
        }
    }
    let Some((cost, dp)) = best else {
        return Ok(SolveResult::Infeasible);
    };

    let mut placement = Placement::default();
    let (outs, ins) = dp.rebuild(dp.root, (dp.g, 0, 0), &mut placement);
    debug_assert!(outs.is_empty() && ins.is_empty());
    let mut node_map = vec![0; instance.n()];
    node_map[shape.root] = placement.root;
    for (group, &host) in placement.group_hosts.iter().enumerate() {
        node_map[shape.group_roots[group]] = host;
        for (&leaf, &slot) in shape.leaves[group].iter().zip(&placement.leaf_hosts[group]) {
            node_map[leaf] = slot;
        }
    }
    let witness = Embedding::routed(&instance.vn, node_map, |a, b| {
        tree_path(pn, a, b).expect("tree")
    });
    let sol = Solution { cost, witness };
    Ok(match instance.variant {
        Variant::Cvne => SolveResult::Feasible(sol),
        _ => SolveResult::Optimal(sol),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{check_capacities, edge_loads, embedding_cost, Capacity, VirtualNetwork};

    fn path_pn(n: usize, cap: Capacity) -> PhysicalNetwork {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i, 1, cap)).collect();
        PhysicalNetwork::from_tuples(n, &e).unwrap()
    }

    fn one_group() -> VirtualNetwork {
        // root 0, group root 1 with demand 2, leaves 2 and 3
        VirtualNetwork::from_tuples(4, &[(0, 1, 2), (1, 2, 1), (1, 3, 1)]).unwrap()
    }

    fn solved(inst: &Instance) -> Option<u64> {
        let res = solve_oversub_2star_on_tree_wcvne(inst).unwrap();
        let sol = res.solution()?;
        assert_eq!(embedding_cost(inst, &sol.witness).unwrap(), sol.cost);
        if inst.variant.respects_capacities() {
            assert!(check_capacities(inst, &sol.witness).unwrap());
        }
        Some(sol.cost)
    }

    #[test]
    fn single_group_on_path() {
        let inst = Instance::new(
            Variant::Wcvne,
            None,
            one_group(),
            path_pn(4, Capacity::Unbounded),
        )
        .unwrap();
        assert_eq!(solved(&inst), Some(5));
    }

    #[test]
    fn single_group_on_tight_path_is_infeasible() {
        let inst = Instance::new(
            Variant::Wcvne,
            None,
            one_group(),
            path_pn(4, Capacity::Finite(1)),
        )
        .unwrap();
        assert_eq!(solved(&inst), None);
    }

    #[test]
    fn uniform_two_star_on_itself() {
        // root 0; groups 1:{2,3} and 4:{5,6}
        let edges = [(0, 1), (1, 2), (1, 3), (0, 4), (4, 5), (4, 6)];
        let vn = VirtualNetwork::from_tuples(7, &edges.map(|(u, v)| (u, v, 1))).unwrap();
        let pn =
            PhysicalNetwork::from_tuples(7, &edges.map(|(u, v)| (u, v, 1, Capacity::Unbounded)))
                .unwrap();
        let inst = Instance::new(Variant::Wcvne, None, vn, pn).unwrap();
        assert_eq!(solved(&inst), Some(6));
    }

    #[test]
    fn witness_loads_respect_bandwidth() {
        let vn = one_group();
        let pn = PhysicalNetwork::from_tuples(
            4,
            &[
                (0, 1, 3, Capacity::Finite(3)),
                (1, 2, 1, Capacity::Finite(2)),
                (1, 3, 2, Capacity::Finite(1)),
            ],
        )
        .unwrap();
        let inst = Instance::new(Variant::Wcvne, None, vn, pn).unwrap();
        let res = solve_oversub_2star_on_tree_wcvne(&inst).unwrap();
        let w = res.witness().unwrap();
        let loads = edge_loads(&inst, w).unwrap();
        for (e, load) in inst.pn.edges().iter().zip(loads) {
            assert!(e.capacity.admits(load));
        }
    }

    #[test]
    fn rejects_plain_line() {
        let inst = Instance::new(
            Variant::Wcvne,
            None,
            VirtualNetwork::uniform_line(4).unwrap(),
            path_pn(4, Capacity::Unbounded),
        )
        .unwrap();
        assert!(solve_oversub_2star_on_tree_wcvne(&inst).is_err());
    }
}
