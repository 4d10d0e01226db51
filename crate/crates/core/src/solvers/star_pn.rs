//! Arbitrary virtual network on a star physical network.
//!
//! Every virtual edge is routed through the hub, so a virtual node `u`
//! placed on leaf `x` puts exactly its incident demand `w_u` on the edge
//! between `x` and the hub. Cost and feasibility then decompose per node and
//! the problem becomes an assignment of virtual nodes to physical nodes.

use crate::error::{unsupported, Result};
use crate::model::{Capacity, Embedding, Instance, Network, Variant};
use crate::solvers::hungarian::min_cost_assignment;
use crate::solvers::{Solution, SolveResult};
use crate::topology::star_center;

const NAME: &str = "star-pn";

pub fn solve_on_star_pn_wcvne(instance: &Instance) -> Result<SolveResult> {
    let pn = &instance.pn;
    let vn = &instance.vn;
    let hub = star_center(pn).ok_or_else(|| unsupported(NAME, "PN not a star"))?;
    let n = instance.n();

    // per physical node: cost and capacity of its edge to the hub
    let spoke: Vec<(u64, Capacity)> = (0..n)
        .map(|x| {
            if x == hub {
                (0, Capacity::Unbounded)
            } else {
                let e = pn.edge(pn.edge_between(x, hub).expect("star spoke"));
                (e.cost, e.capacity)
            }
        })
        .collect();
    let respect = instance.variant.respects_capacities();
    let matrix: Vec<Vec<Option<u64>>> = (0..n)
        .map(|u| {
            let w = vn.incident_demand(u);
            spoke
                .iter()
                .map(|&(d, c)| (!respect || c.admits(w)).then_some(d * w))
                .collect()
        })
        .collect();

    let Some(assignment) = min_cost_assignment(&matrix) else {
        return Ok(SolveResult::Infeasible);
    };
    let witness = Embedding::routed(vn, assignment.row_to_col, |a, b| {
        if a == hub || b == hub {
            vec![a, b]
        } else {
            vec![a, hub, b]
        }
    });
    let sol = Solution {
        cost: assignment.cost,
        witness,
    };
    Ok(match instance.variant {
        Variant::Cvne => SolveResult::Feasible(sol),
        _ => SolveResult::Optimal(sol),
    })
}
