//! All-pairs cheapest paths and simple-path enumeration on physical networks.

use crate::error::{Result, VneError};
use crate::model::{Network, NodeId, PhysicalNetwork};

/// Distance matrix with deterministic path reconstruction.
///
/// Paths are ordered by `(cost, hop count)` and ties are broken by the
/// lexicographically smallest node sequence. Ranking hop count second keeps
/// reconstruction simple in the presence of zero-cost edges.
#[derive(Clone, Debug)]
pub struct CheapestPaths {
    n: usize,
    dist: Vec<u64>,
    hops: Vec<u32>,
    next: Vec<NodeId>,
}

impl CheapestPaths {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn distance(&self, from: NodeId, to: NodeId) -> u64 {
        self.dist[from * self.n + to]
    }

    pub fn hop_count(&self, from: NodeId, to: NodeId) -> u32 {
        self.hops[from * self.n + to]
    }

    /// The canonical cheapest path from `from` to `to`, both endpoints included.
    pub fn path(&self, from: NodeId, to: NodeId) -> Vec<NodeId> {
        let mut path = vec![from];
        let mut cur = from;
        while cur != to {
            cur = self.next[cur * self.n + to];
            path.push(cur);
        }
        path
    }
}

/// Floyd–Warshall over `(cost, hops)` pairs, then greedy next-hop selection.
pub fn all_pairs_cheapest_paths(pn: &PhysicalNetwork) -> CheapestPaths {
    let n = pn.node_count();
    const INF: (u64, u32) = (u64::MAX, u32::MAX);
    let mut d = vec![INF; n * n];
    for i in 0..n {
        d[i * n + i] = (0, 0);
    }
    for e in pn.edges() {
        d[e.u * n + e.v] = (e.cost, 1);
        d[e.v * n + e.u] = (e.cost, 1);
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            if dik == INF {
                continue;
            }
            for j in 0..n {
                let dkj = d[k * n + j];
                if dkj == INF {
                    continue;
                }
                let cand = (dik.0 + dkj.0, dik.1 + dkj.1);
                if cand < d[i * n + j] {
                    d[i * n + j] = cand;
                }
            }
        }
    }

    let mut next = vec![usize::MAX; n * n];
    for i in 0..n {
        next[i * n + i] = i;
        for j in 0..n {
            if i == j {
                continue;
            }
            let target = d[i * n + j];
            // neighbours are sorted, so the first match is the smallest next hop
            let hop = pn
                .neighbors(i)
                .iter()
                .find(|&&(k, e)| {
                    let dkj = d[k * n + j];
                    (pn.edge(e).cost + dkj.0, 1 + dkj.1) == target
                })
                .map(|&(k, _)| k)
                .expect("connected network has a next hop");
            next[i * n + j] = hop;
        }
    }

    CheapestPaths {
        n,
        dist: d.iter().map(|p| p.0).collect(),
        hops: d.iter().map(|p| p.1).collect(),
        next,
    }
}

/// Depth-first enumeration of simple paths in lexicographic neighbour order.
///
/// Only edges accepted by `usable(edge_index)` are traversed. Returns an
/// error once more than `budget` paths have been produced.
pub fn simple_paths_filtered(
    pn: &PhysicalNetwork,
    from: NodeId,
    to: NodeId,
    budget: usize,
    mut usable: impl FnMut(usize) -> bool,
) -> Result<Vec<Vec<NodeId>>> {
    let n = pn.node_count();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    let mut path = vec![from];
    on_path[from] = true;
    // stack of (node, position in its neighbour list)
    let mut stack: Vec<(NodeId, usize)> = vec![(from, 0)];
    if from == to {
        return Ok(vec![path]);
    }
    while let Some(top) = stack.last_mut() {
        let (node, pos) = *top;
        let nbrs = pn.neighbors(node);
        if pos >= nbrs.len() {
            stack.pop();
            on_path[node] = false;
            path.pop();
            continue;
        }
        top.1 += 1;
        let (next, edge) = nbrs[pos];
        if on_path[next] || !usable(edge) {
            continue;
        }
        if next == to {
            let mut found = path.clone();
            found.push(to);
            out.push(found);
            if out.len() > budget {
                return Err(VneError::BudgetExceeded(format!(
                    "more than {budget} simple paths between {from} and {to}"
                )));
            }
            continue;
        }
        on_path[next] = true;
        path.push(next);
        stack.push((next, 0));
    }
    Ok(out)
}

/// All simple paths between two nodes.
pub fn simple_paths(
    pn: &PhysicalNetwork,
    from: NodeId,
    to: NodeId,
    budget: usize,
) -> Result<Vec<Vec<NodeId>>> {
    simple_paths_filtered(pn, from, to, budget, |_| true)
}

/// Path between two nodes of a tree, `None` if the network is not a tree.
pub fn tree_path(pn: &PhysicalNetwork, from: NodeId, to: NodeId) -> Option<Vec<NodeId>> {
    if !pn.is_tree() {
        return None;
    }
    let n = pn.node_count();
    let mut parent = vec![usize::MAX; n];
    parent[from] = from;
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        if x == to {
            break;
        }
        for &(y, _) in pn.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::model::Capacity;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pn(n: usize, edges: &[(usize, usize, u64)]) -> PhysicalNetwork {
        let e: Vec<_> = edges
            .iter()
            .map(|&(u, v, c)| (u, v, c, Capacity::Unbounded))
            .collect();
        PhysicalNetwork::from_tuples(n, &e).unwrap()
    }

    #[test]
    fn single_edge() {
        let ap = all_pairs_cheapest_paths(&pn(2, &[(0, 1, 7)]));
        assert_eq!(ap.distance(0, 1), 7);
        assert_eq!(ap.path(1, 0), vec![1, 0]);
    }

    #[test]
    fn two_cheap_hops_beat_one_expensive() {
        let ap = all_pairs_cheapest_paths(&pn(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 3)]));
        assert_eq!(ap.distance(0, 2), 2);
        assert_eq!(ap.path(0, 2), vec![0, 1, 2]);
    }

    #[test]
    fn octopus_tips_are_two_legs_apart() {
        // root 0, legs of length 3: 1-2-3, 4-5-6, 7-8-9
        let mut edges = Vec::new();
        for leg in 0..3 {
            let base = 1 + 3 * leg;
            edges.push((0, base, 1));
            edges.push((base, base + 1, 1));
            edges.push((base + 1, base + 2, 1));
        }
        let ap = all_pairs_cheapest_paths(&pn(10, &edges));
        assert_eq!(ap.distance(3, 6), 6);
        assert_eq!(ap.distance(3, 9), 6);
    }

    #[test]
    fn zero_cost_ties_prefer_fewer_hops_then_smaller_nodes() {
        // 0-1-3 and 0-2-3 both cost 0; 0-3 direct costs 0 too
        let ap = all_pairs_cheapest_paths(&pn(
            4,
            &[(0, 1, 0), (1, 3, 0), (0, 2, 0), (2, 3, 0), (0, 3, 0)],
        ));
        assert_eq!(ap.path(0, 3), vec![0, 3]);
        let ap = all_pairs_cheapest_paths(&pn(4, &[(0, 2, 0), (2, 3, 0), (0, 1, 0), (1, 3, 0)]));
        assert_eq!(ap.path(0, 3), vec![0, 1, 3]);
        assert_eq!(ap.path(3, 0), vec![3, 1, 0]);
    }

    #[test]
    fn enumerates_simple_paths_lexicographically() {
        let g = pn(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1), (1, 3, 1)]);
        let paths = simple_paths(&g, 0, 3, 100).unwrap();
        assert_eq!(paths, vec![vec![0, 1, 2, 3], vec![0, 1, 3], vec![0, 3]]);
        assert!(simple_paths(&g, 0, 3, 2).is_err());
    }

    /// Reference: the minimum of (cost, hops, sequence) over every simple path.
    fn brute_best(g: &PhysicalNetwork, a: usize, b: usize) -> (u64, Vec<usize>) {
        simple_paths(g, a, b, usize::MAX)
            .unwrap()
            .into_iter()
            .map(|p| (g.path_cost(&p).unwrap(), p.len(), p))
            .min()
            .map(|(c, _, p)| (c, p))
            .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn matches_exhaustive_enumeration(seed in any::<u64>(), n in 1usize..=6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = generate::random_connected_pn(&mut rng, n, 0..=5, None, 0.5);
            let ap = all_pairs_cheapest_paths(&g);
            for a in 0..n {
                prop_assert_eq!(ap.distance(a, a), 0);
                for b in 0..n {
                    let (cost, best) = brute_best(&g, a, b);
                    prop_assert_eq!(ap.distance(a, b), cost);
                    prop_assert_eq!(ap.distance(a, b), ap.distance(b, a));
                    let p = ap.path(a, b);
                    prop_assert_eq!(g.path_cost(&p), Some(cost));
                    prop_assert_eq!(&p, &best);
                    for c in 0..n {
                        prop_assert!(ap.distance(a, c) <= ap.distance(a, b) + ap.distance(b, c));
                    }
                }
            }
        }
    }
}
