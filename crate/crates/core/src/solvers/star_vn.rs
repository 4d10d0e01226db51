//! Star virtual network on an arbitrary physical network, cost only.
//!
//! Once the center image is fixed, the cost of a star is the sum of
//! leaf demand times distance from the center, so the heaviest leaves
//! belong on the closest nodes.

use crate::error::{unsupported, Result};
use crate::model::{Embedding, Instance, Network, Variant};
use crate::paths::all_pairs_cheapest_paths;
use crate::solvers::{Solution, SolveResult};
use crate::topology::star_center;

const NAME: &str = "star-vn";

pub fn solve_star_vn_wvne(instance: &Instance) -> Result<SolveResult> {
    if instance.variant != Variant::Wvne {
        return Err(unsupported(
            NAME,
            format!("only wvne is supported, got {}", instance.variant),
        ));
    }
    let vn = &instance.vn;
    let center = star_center(vn).ok_or_else(|| unsupported(NAME, "VN is not a star"))?;
    let n = instance.n();
    let ap = all_pairs_cheapest_paths(&instance.pn);

    let mut leaves: Vec<(u64, usize)> = vn
        .neighbors(center)
        .iter()
        .map(|&(leaf, e)| (vn.edge(e).demand, leaf))
        .collect();
    leaves.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    let mut best: Option<(u64, Vec<usize>)> = None;
    for j in 0..n {
        let mut hosts: Vec<usize> = (0..n).filter(|&x| x != j).collect();
        hosts.sort_by_key(|&x| (ap.distance(j, x), x));
        let cost: u64 = leaves
            .iter()
            .zip(&hosts)
            .map(|(&(w, _), &x)| w * ap.distance(j, x))
            .sum();
        if best.as_ref().is_some_and(|(c, _)| *c <= cost) {
            continue;
        }
        let mut node_map = vec![0; n];
        node_map[center] = j;
        for (&(_, leaf), &x) in leaves.iter().zip(&hosts) {
            node_map[leaf] = x;
        }
        best = Some((cost, node_map));
    }

    let (cost, node_map) = best.expect("at least one node");
    let witness = Embedding::routed(vn, node_map, |a, b| ap.path(a, b));
    Ok(SolveResult::Optimal(Solution { cost, witness }))
}
