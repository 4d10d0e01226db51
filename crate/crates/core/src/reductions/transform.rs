//! Cost-zero wVNE as capacity-only VNE.

use crate::error::{Result, VneError};
use crate::model::{Capacity, Instance, Network, Variant};

use super::Artifact;

/// Replaces costs by capacities: a cost-0 edge may carry every virtual edge
/// (capacity `|E_S|`), a cost-1 edge carries nothing. With 0/1 demands, a
/// feasible embedding of the result is exactly a cost-0 embedding of the
/// original.
pub fn transform_wvne0_to_cvne(art: &Artifact) -> Result<Artifact> {
    let inst = &art.instance;
    let reject = |why: &str| {
        Err(VneError::InvalidInstance(format!(
            "capacity transform: {why}"
        )))
    };
    if art.capacity_transform {
        return reject("artifact is already capacity-only");
    }
    if inst.theta != Some(0) {
        return reject("theta must be 0");
    }
    if inst.vn.edges().iter().any(|e| e.demand > 1) {
        return reject("virtual demands must be 0 or 1");
    }
    if inst.pn.edges().iter().any(|e| e.cost > 1) {
        return reject("physical costs must be 0 or 1");
    }
    let m = inst.vn.edge_count() as u64;
    let pn = inst
        .pn
        .with_capacities(|e| Capacity::Finite(if e.cost == 0 { m } else { 0 }));
    let instance = Instance::new(Variant::Cvne, None, inst.vn.clone(), pn)?;
    Ok(Artifact {
        instance,
        capacity_transform: true,
        ..art.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::{
        build_witness, reduce_bpp_line_on_line, reduce_pp_star_on_line, BppSource, Certificate,
        PpSource,
    };

    #[test]
    fn bin_packing_witness_stays_feasible() {
        let art = reduce_bpp_line_on_line(&BppSource {
            a: vec![2, 2],
            b: 2,
            k: 2,
        })
        .unwrap();
        let cap = transform_wvne0_to_cvne(&art).unwrap();
        assert_eq!(cap.instance.variant, Variant::Cvne);
        assert!(cap.capacity_transform);
        let caps: Vec<_> = cap.instance.pn.edges().iter().map(|e| e.capacity).collect();
        assert_eq!(
            caps,
            vec![
                Capacity::Finite(3),
                Capacity::Finite(0),
                Capacity::Finite(3)
            ]
        );
        let emb = build_witness(
            &cap,
            &Certificate::Bins {
                bins: vec![vec![0], vec![1]],
            },
        )
        .unwrap();
        assert!(cap.criterion_met(&emb).unwrap());
        assert!(transform_wvne0_to_cvne(&cap).is_err());
    }

    #[test]
    fn rejects_capacity_gadgets() {
        let art = reduce_pp_star_on_line(&PpSource { a: vec![1, 1] }).unwrap();
        assert!(transform_wvne0_to_cvne(&art).is_err());
    }
}
