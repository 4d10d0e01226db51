//! Seeded random networks and instances for tests and self-checks.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{
    Capacity, Instance, NodeId, PhysicalEdge, PhysicalNetwork, Variant, VirtualEdge, VirtualNetwork,
};
use crate::topology::TopologyKind;

/// Random labelled tree: each node attaches to an earlier one, then labels are shuffled.
pub fn random_tree_edges<R: Rng>(rng: &mut R, n: usize) -> Vec<(NodeId, NodeId)> {
    let edges: Vec<_> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    relabel(rng, n, edges)
}

/// Random tree plus each remaining pair with probability `extra`.
pub fn random_connected_edges<R: Rng>(rng: &mut R, n: usize, extra: f64) -> Vec<(NodeId, NodeId)> {
    let mut edges = random_tree_edges(rng, n);
    for u in 0..n {
        for v in u + 1..n {
            let present = edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == (u, v));
            if !present && rng.gen_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn relabel<R: Rng>(rng: &mut R, n: usize, edges: Vec<(NodeId, NodeId)>) -> Vec<(NodeId, NodeId)> {
    let mut perm: Vec<NodeId> = (0..n).collect();
    perm.shuffle(rng);
    edges.into_iter().map(|(u, v)| (perm[u], perm[v])).collect()
}

pub fn capacity<R: Rng>(rng: &mut R, caps: &Option<RangeInclusive<u64>>) -> Capacity {
    match caps {
        Some(range) => Capacity::Finite(rng.gen_range(range.clone())),
        None => Capacity::Unbounded,
    }
}

/// Physical network on given edges; `caps = None` means unbounded capacities.
pub fn pn_on<R: Rng>(
    rng: &mut R,
    n: usize,
    edges: &[(NodeId, NodeId)],
    costs: RangeInclusive<u64>,
    caps: Option<RangeInclusive<u64>>,
) -> PhysicalNetwork {
    let edges = edges
        .iter()
        .map(|&(u, v)| PhysicalEdge {
            u,
            v,
            cost: rng.gen_range(costs.clone()),
            capacity: capacity(rng, &caps),
        })
        .collect();
    PhysicalNetwork::new(n, edges).expect("generated network is valid")
}

pub fn vn_on<R: Rng>(
    rng: &mut R,
    n: usize,
    edges: &[(NodeId, NodeId)],
    demands: RangeInclusive<u64>,
) -> VirtualNetwork {
    let edges = edges
        .iter()
        .map(|&(u, v)| VirtualEdge {
            u,
            v,
            demand: rng.gen_range(demands.clone()),
        })
        .collect();
    VirtualNetwork::new(n, edges).expect("generated network is valid")
}

pub fn random_connected_pn<R: Rng>(
    rng: &mut R,
    n: usize,
    costs: RangeInclusive<u64>,
    caps: Option<RangeInclusive<u64>>,
    extra: f64,
) -> PhysicalNetwork {
    let edges = random_connected_edges(rng, n, extra);
    pn_on(rng, n, &edges, costs, caps)
}

pub fn random_tree_pn<R: Rng>(
    rng: &mut R,
    n: usize,
    costs: RangeInclusive<u64>,
    caps: Option<RangeInclusive<u64>>,
) -> PhysicalNetwork {
    let edges = random_tree_edges(rng, n);
    pn_on(rng, n, &edges, costs, caps)
}

pub fn random_connected_vn<R: Rng>(
    rng: &mut R,
    n: usize,
    demands: RangeInclusive<u64>,
    extra: f64,
) -> VirtualNetwork {
    let edges = random_connected_edges(rng, n, extra);
    vn_on(rng, n, &edges, demands)
}

/// Star edges around a random center.
pub fn star_edges<R: Rng>(rng: &mut R, n: usize) -> Vec<(NodeId, NodeId)> {
    let center = rng.gen_range(0..n);
    (0..n)
        .filter(|&v| v != center)
        .map(|v| (center, v))
        .collect()
}

pub fn random_star_vn<R: Rng>(
    rng: &mut R,
    n: usize,
    demands: RangeInclusive<u64>,
) -> VirtualNetwork {
    let edges = star_edges(rng, n);
    vn_on(rng, n, &edges, demands)
}

pub fn random_star_pn<R: Rng>(
    rng: &mut R,
    n: usize,
    costs: RangeInclusive<u64>,
    caps: Option<RangeInclusive<u64>>,
) -> PhysicalNetwork {
    let edges = star_edges(rng, n);
    pn_on(rng, n, &edges, costs, caps)
}

/// Uniform line with randomly permuted labels.
pub fn random_uniform_line_vn<R: Rng>(rng: &mut R, n: usize) -> VirtualNetwork {
    let edges = relabel(rng, n, (1..n).map(|i| (i - 1, i)).collect());
    vn_on(rng, n, &edges, 1..=1)
}

/// Oversubscribed two-tier star with `g` groups of `s` leaves and root demand `s / o`.
pub fn oversub_vn<R: Rng>(rng: &mut R, g: usize, s: usize, o: usize) -> VirtualNetwork {
    assert!(
        g >= 1 && s >= 1 && o >= 1 && s.is_multiple_of(o),
        "invalid oversubscribed shape"
    );
    let n = 1 + g * (s + 1);
    let mut edges = Vec::new();
    let mut demands = Vec::new();
    for k in 0..g {
        let gr = 1 + k * (s + 1);
        edges.push((0, gr));
        demands.push((s / o) as u64);
        for j in 1..=s {
            edges.push((gr, gr + j));
            demands.push(1);
        }
    }
    let edges = relabel(rng, n, edges);
    let edges = edges
        .into_iter()
        .zip(demands)
        .map(|((u, v), demand)| VirtualEdge { u, v, demand })
        .collect();
    VirtualNetwork::new(n, edges).expect("generated network is valid")
}

fn weights<R: Rng>(rng: &mut R, uniform: bool) -> RangeInclusive<u64> {
    if uniform || rng.gen_bool(0.3) {
        1..=1
    } else {
        1..=5
    }
}

/// Random virtual network whose classification is `kind`, if one exists on `n` nodes.
pub fn family<R: Rng>(rng: &mut R, kind: TopologyKind, n: usize) -> Option<VirtualNetwork> {
    let w = weights(rng, false);
    let edges: Vec<(NodeId, NodeId)> = match kind {
        TopologyKind::Line => relabel(rng, n, (1..n).map(|i| (i - 1, i)).collect()),
        TopologyKind::Star if n >= 4 => star_edges(rng, n),
        TopologyKind::OversubTwoStar => {
            let options: Vec<(usize, usize)> = (1..n)
                .filter(|g| (n - 1).is_multiple_of(*g))
                .map(|g| (g, (n - 1) / g - 1))
                .filter(|&(g, s)| s >= 1 && g >= 2 && (s >= 2 || g >= 3))
                .collect();
            let &(g, s) = options.choose(rng)?;
            let divisors: Vec<usize> = (1..=s).filter(|o| s % o == 0).collect();
            let o = *divisors.choose(rng).expect("1 divides s");
            return Some(oversub_vn(rng, g, s, o));
        }
        TopologyKind::TwoStar if n >= 6 => {
            // root 0 with an unequal split: one group of one leaf, the rest in another
            let mut e = vec![(0, 1), (1, 2), (0, 3)];
            e.extend((4..n).map(|v| (3, v)));
            relabel(rng, n, e)
        }
        TopologyKind::Tree if n >= 7 => {
            let mut e: Vec<_> = (1..6).map(|i| (i - 1, i)).collect();
            e.push((2, 6));
            for v in 7..n {
                e.push((rng.gen_range(1..=4), v));
            }
            relabel(rng, n, e)
        }
        TopologyKind::Generic if n >= 3 => {
            let mut e = random_tree_edges(rng, n);
            let present = |e: &Vec<(NodeId, NodeId)>, u: NodeId, v: NodeId| {
                e.iter()
                    .any(|&(a, b)| (a.min(b), a.max(b)) == (u.min(v), u.max(v)))
            };
            loop {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                if u != v && !present(&e, u, v) {
                    e.push((u, v));
                    break;
                }
            }
            e
        }
        _ => return None,
    };
    Some(vn_on(rng, n, &edges, w))
}

/// Instance from parts; panics only on size mismatch, which callers control.
pub fn instance(variant: Variant, vn: VirtualNetwork, pn: PhysicalNetwork) -> Instance {
    Instance::new(variant, None, vn, pn).expect("sizes match")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Network;
    use crate::topology::classify_topology;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn families_classify_as_generated() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let kinds = [
            TopologyKind::Line,
            TopologyKind::Star,
            TopologyKind::OversubTwoStar,
            TopologyKind::TwoStar,
            TopologyKind::Tree,
            TopologyKind::Generic,
        ];
        let mut realised = 0;
        for n in 1..=12 {
            for kind in kinds {
                for _ in 0..20 {
                    if let Some(g) = family(&mut rng, kind, n) {
                        realised += 1;
                        assert_eq!(classify_topology(&g).kind, kind, "n={n}");
                    }
                }
            }
        }
        assert!(realised > 500);
    }

    #[test]
    fn trees_and_connected_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=10 {
            let t = random_tree_pn(&mut rng, n, 0..=3, Some(0..=2));
            assert!(t.is_tree());
            let g = random_connected_pn(&mut rng, n, 0..=3, None, 0.4);
            assert_eq!(g.node_count(), n);
        }
    }
}
