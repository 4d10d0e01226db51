//! Topology classification of virtual and physical networks.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::model::{Network, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TopologyKind {
    Line,
    Star,
    OversubTwoStar,
    TwoStar,
    Tree,
    Generic,
}

impl TopologyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TopologyKind::Line => "line",
            TopologyKind::Star => "star",
            TopologyKind::OversubTwoStar => "oversub-two-star",
            TopologyKind::TwoStar => "two-star",
            TopologyKind::Tree => "tree",
            TopologyKind::Generic => "generic",
        }
    }

    pub fn is_tree(self) -> bool {
        self != TopologyKind::Generic
    }
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Root, groups and weights of an oversubscribed two-tier star.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OversubShape {
    pub root: NodeId,
    /// Group roots in ascending id order.
    pub group_roots: Vec<NodeId>,
    /// Leaves of each group, ascending, aligned with `group_roots`.
    pub leaves: Vec<Vec<NodeId>>,
    /// Leaves per group.
    pub s: u64,
    /// Oversubscription factor, `s / root_demand`.
    pub o: u64,
    /// Weight of every root-to-group edge.
    pub root_demand: u64,
}

impl OversubShape {
    pub fn group_count(&self) -> usize {
        self.group_roots.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopologyClass {
    pub kind: TopologyKind,
    /// Every edge weight equals 1.
    pub is_uniform: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oversub: Option<OversubShape>,
}

impl TopologyClass {
    pub fn label(&self) -> String {
        if self.is_uniform {
            format!("uniform {}", self.kind)
        } else {
            self.kind.to_string()
        }
    }
}

pub fn is_uniform<G: Network>(g: &G) -> bool {
    (0..g.edge_count()).all(|e| g.edge_weight(e) == 1)
}

/// Node order along a path graph, starting at the smaller-id endpoint.
pub fn line_order<G: Network>(g: &G) -> Option<Vec<NodeId>> {
    let n = g.node_count();
    if !g.is_tree() || (0..n).any(|v| g.degree(v) > 2) {
        return None;
    }
    let start = (0..n).find(|&v| g.degree(v) <= 1)?;
    let mut order = Vec::with_capacity(n);
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        order.push(cur);
        match g.neighbors(cur).iter().find(|&&(x, _)| x != prev) {
            Some(&(next, _)) => {
                prev = cur;
                cur = next;
            }
            None => break,
        }
    }
    Some(order)
}

/// The smallest-id node adjacent to every other node of a tree.
pub fn star_center<G: Network>(g: &G) -> Option<NodeId> {
    let n = g.node_count();
    if !g.is_tree() {
        return None;
    }
    (0..n).find(|&v| g.degree(v) + 1 == n)
}

/// Oversubscribed two-tier star shape rooted at `root`, if any.
pub fn oversub_shape_at<G: Network>(g: &G, root: NodeId) -> Option<OversubShape> {
    let n = g.node_count();
    if !g.is_tree() || n < 3 {
        return None;
    }
    let mut group_roots = Vec::new();
    let mut leaves = Vec::new();
    let mut root_demand = None;
    let mut s = None;
    for &(gr, e) in g.neighbors(root) {
        let w = g.edge_weight(e);
        if *root_demand.get_or_insert(w) != w {
            return None;
        }
        let mut group = Vec::new();
        for &(leaf, le) in g.neighbors(gr) {
            if leaf == root {
                continue;
            }
            if g.degree(leaf) != 1 || g.edge_weight(le) != 1 {
                return None;
            }
            group.push(leaf);
        }
        if group.is_empty() || *s.get_or_insert(group.len()) != group.len() {
            return None;
        }
        group_roots.push(gr);
        leaves.push(group);
    }
    let s = s? as u64;
    let root_demand = root_demand?;
    if root_demand == 0 || !s.is_multiple_of(root_demand) {
        return None;
    }
    Some(OversubShape {
        root,
        group_roots,
        leaves,
        s,
        o: s / root_demand,
        root_demand,
    })
}

/// First oversubscribed shape found trying roots in ascending id order.
pub fn oversub_shape<G: Network>(g: &G) -> Option<OversubShape> {
    (0..g.node_count()).find_map(|r| oversub_shape_at(g, r))
}

fn eccentricity<G: Network>(g: &G, from: NodeId) -> usize {
    let n = g.node_count();
    let mut dist = vec![usize::MAX; n];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    let mut ecc = 0;
    while let Some(x) = queue.pop_front() {
        ecc = ecc.max(dist[x]);
        for &(y, _) in g.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    ecc
}

/// Classifies with precedence line, star, oversubscribed 2-star, 2-star, tree, generic.
pub fn classify_topology<G: Network>(g: &G) -> TopologyClass {
    let uniform = is_uniform(g);
    let class = |kind| TopologyClass {
        kind,
        is_uniform: uniform,
        oversub: None,
    };
    if !g.is_tree() {
        return class(TopologyKind::Generic);
    }
    if line_order(g).is_some() {
        return class(TopologyKind::Line);
    }
    if star_center(g).is_some() {
        return class(TopologyKind::Star);
    }
    if let Some(shape) = oversub_shape(g) {
        return TopologyClass {
            kind: TopologyKind::OversubTwoStar,
            is_uniform: uniform,
            oversub: Some(shape),
        };
    }
    if (0..g.node_count()).any(|v| eccentricity(g, v) <= 2) {
        return class(TopologyKind::TwoStar);
    }
    class(TopologyKind::Tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Capacity, PhysicalNetwork, VirtualNetwork};

    fn vn(n: usize, edges: &[(usize, usize, u64)]) -> VirtualNetwork {
        VirtualNetwork::from_tuples(n, edges).unwrap()
    }

    #[test]
    fn path_of_five_is_uniform_line() {
        let c = classify_topology(&VirtualNetwork::uniform_line(5).unwrap());
        assert_eq!(c.kind, TopologyKind::Line);
        assert!(c.is_uniform);
    }

    #[test]
    fn tiny_graphs_are_lines() {
        assert_eq!(classify_topology(&vn(1, &[])).kind, TopologyKind::Line);
        assert_eq!(
            classify_topology(&vn(2, &[(0, 1, 4)])).kind,
            TopologyKind::Line
        );
        let c = classify_topology(&vn(3, &[(1, 0, 2), (1, 2, 1)]));
        assert_eq!(c.kind, TopologyKind::Line);
        assert!(!c.is_uniform);
    }

    #[test]
    fn hub_with_four_leaves_is_star() {
        let g = vn(5, &[(2, 0, 1), (2, 1, 1), (2, 3, 1), (2, 4, 1)]);
        assert_eq!(classify_topology(&g).kind, TopologyKind::Star);
        assert_eq!(star_center(&g), Some(2));
    }

    #[test]
    fn two_groups_of_three_are_oversubscribed() {
        // root 0, group roots 1 and 5
        let g = vn(
            9,
            &[
                (0, 1, 3),
                (0, 5, 3),
                (1, 2, 1),
                (1, 3, 1),
                (1, 4, 1),
                (5, 6, 1),
                (5, 7, 1),
                (5, 8, 1),
            ],
        );
        let c = classify_topology(&g);
        assert_eq!(c.kind, TopologyKind::OversubTwoStar);
        let shape = c.oversub.unwrap();
        assert_eq!((shape.root, shape.s, shape.o), (0, 3, 1));
        assert_eq!(shape.group_roots, vec![1, 5]);
        assert_eq!(shape.leaves[1], vec![6, 7, 8]);
    }

    #[test]
    fn indivisible_root_demand_falls_back_to_two_star() {
        let g = vn(
            7,
            &[
                (0, 1, 2),
                (0, 4, 2),
                (1, 2, 1),
                (1, 3, 1),
                (4, 5, 1),
                (4, 6, 1),
            ],
        );
        assert_eq!(classify_topology(&g).oversub.unwrap().o, 1);
        let g = vn(
            9,
            &[
                (0, 1, 2),
                (0, 5, 2),
                (1, 2, 1),
                (1, 3, 1),
                (1, 4, 1),
                (5, 6, 1),
                (5, 7, 1),
                (5, 8, 1),
            ],
        );
        assert_eq!(classify_topology(&g).kind, TopologyKind::TwoStar);
    }

    #[test]
    fn uneven_groups_are_two_star_and_deep_trees_are_trees() {
        let g = vn(6, &[(0, 1, 1), (0, 3, 1), (1, 2, 1), (3, 4, 1), (3, 5, 1)]);
        assert_eq!(classify_topology(&g).kind, TopologyKind::TwoStar);
        // spider with legs of length 3 has radius 3
        let g = vn(
            10,
            &[
                (0, 1, 1),
                (1, 2, 1),
                (2, 3, 1),
                (0, 4, 1),
                (4, 5, 1),
                (5, 6, 1),
                (0, 7, 1),
                (7, 8, 1),
                (8, 9, 1),
            ],
        );
        assert_eq!(classify_topology(&g).kind, TopologyKind::Tree);
    }

    #[test]
    fn uniform_star_is_oversubscribed_from_a_leaf() {
        let g = vn(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)]);
        let shape = oversub_shape(&g).unwrap();
        assert_eq!(
            (shape.root, shape.group_roots.clone(), shape.s, shape.o),
            (1, vec![0], 2, 2)
        );
        assert_eq!(classify_topology(&g).kind, TopologyKind::Star);
    }

    #[test]
    fn cycle_is_generic() {
        let e = |u, v| (u, v, 1, Capacity::Unbounded);
        let g = PhysicalNetwork::from_tuples(4, &[e(0, 1), e(1, 2), e(2, 3), e(0, 3)]).unwrap();
        let c = classify_topology(&g);
        assert_eq!(c.kind, TopologyKind::Generic);
        assert!(c.is_uniform);
    }

    #[test]
    fn line_order_starts_at_smaller_endpoint() {
        let g = vn(4, &[(3, 1, 1), (1, 0, 1), (0, 2, 1)]);
        assert_eq!(line_order(&g), Some(vec![2, 0, 1, 3]));
    }
}
