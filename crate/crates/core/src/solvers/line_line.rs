//! Weighted line virtual network on a uniform line, cost only.
//!
//! Every virtual edge joins two distinct nodes and so pays at least its
//! demand; laying the line along the physical line pays exactly that.

use crate::error::{unsupported, Result};
use crate::model::{Embedding, Instance, Variant};
use crate::solvers::{Solution, SolveResult};
use crate::topology::{is_uniform, line_order};

const NAME: &str = "line-line";

pub fn solve_weighted_line_on_uniform_line(instance: &Instance) -> Result<SolveResult> {
    if instance.variant != Variant::Wvne {
        return Err(unsupported(
            NAME,
            format!("only wvne is supported, got {}", instance.variant),
        ));
    }
    let vorder = line_order(&instance.vn).ok_or_else(|| unsupported(NAME, "VN is not a line"))?;
    let porder = match line_order(&instance.pn) {
        Some(order) if is_uniform(&instance.pn) => order,
        _ => return Err(unsupported(NAME, "PN is not a uniform line")),
    };
    let mut node_map = vec![0; instance.n()];
    for (&v, &p) in vorder.iter().zip(&porder) {
        node_map[v] = p;
    }
    let witness = Embedding::routed(&instance.vn, node_map, |a, b| vec![a, b]);
    let cost = instance.vn.edges().iter().map(|e| e.demand).sum();
    Ok(SolveResult::Optimal(Solution { cost, witness }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{embedding_cost, Capacity, PhysicalNetwork, VirtualNetwork};

    #[test]
    fn lays_line_along_line() {
        let vn = VirtualNetwork::from_tuples(4, &[(2, 0, 3), (0, 3, 1), (3, 1, 7)]).unwrap();
        let pn = PhysicalNetwork::from_tuples(
            4,
            &[
                (1, 3, 1, Capacity::Unbounded),
                (3, 0, 1, Capacity::Unbounded),
                (0, 2, 1, Capacity::Unbounded),
            ],
        )
        .unwrap();
        let inst = Instance::new(Variant::Wvne, None, vn, pn).unwrap();
        let sol = solve_weighted_line_on_uniform_line(&inst)
            .unwrap()
            .into_solution()
            .unwrap();
        assert_eq!(sol.cost, 11);
        assert_eq!(embedding_cost(&inst, &sol.witness).unwrap(), 11);
    }
}
