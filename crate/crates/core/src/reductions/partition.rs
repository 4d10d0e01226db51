//! Partition gadgets: a weighted star VN on a capacitated line (PP) and on a
//! capacitated 2-star (3PP).

use crate::error::{Result, VneError};
use crate::model::{
    Capacity, Embedding, Instance, NodeId, PhysicalNetwork, Variant, VirtualNetwork,
};
use crate::paths::tree_path;

use super::{
    unexpected, Artifact, Certificate, Labels, PpSource, ReduceOptions, Reduction, Role,
    SourceProblem, ThreePpSource,
};

/// Star whose leaf `i` carries demand `a[i]`; center is node 0.
fn weighted_star(a: &[u64]) -> Result<(VirtualNetwork, Vec<Role>)> {
    let edges: Vec<_> = a.iter().enumerate().map(|(i, &d)| (0, i + 1, d)).collect();
    let vn = VirtualNetwork::from_tuples(a.len() + 1, &edges)?;
    let roles = std::iter::once(Role::plain("center"))
        .chain((0..a.len()).map(|i| Role::new("leaf", [i])))
        .collect();
    Ok((vn, roles))
}

/// Star with leaf demands `A` on a line of `|A| + 1` nodes whose edges have
/// capacity `sum(A) / 2`.
pub fn reduce_pp_star_on_line(src: &PpSource) -> Result<Artifact> {
    src.validate()?;
    let n = src.a.len() + 1;
    let (vn, vn_roles) = weighted_star(&src.a)?;
    let cap = Capacity::Finite(src.half());
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i, 1, cap)).collect();
    let pn = PhysicalNetwork::from_tuples(n, &edges)?;
    let instance = Instance::new(Variant::Cvne, None, vn, pn)?;
    let labels = Labels {
        vn: vn_roles,
        pn: (0..n).map(|i| Role::new("line", [i])).collect(),
    };
    Ok(Artifact::new(
        instance,
        labels,
        SourceProblem::Pp(src.clone()),
        Reduction::PpStarOnLine,
    ))
}

/// Star with leaf demands `A` on a root with `m` subtrees of a sub-root and
/// two leaves; every edge has capacity `T`.
pub fn reduce_3pp_star_on_2star(src: &ThreePpSource, opts: ReduceOptions) -> Result<Artifact> {
    src.validate()?;
    let m = src.m();
    let below = m < 4;
    if below && !opts.allow_below_threshold {
        return Err(VneError::InvalidSource(format!(
            "the 3-partition gadget needs m >= 4, got m = {m}"
        )));
    }
    let (vn, vn_roles) = weighted_star(&src.a)?;
    let cap = Capacity::Finite(src.target());
    let mut edges = Vec::new();
    let mut pn_roles = vec![Role::plain("root")];
    for sub in 0..m {
        let sr = pn_roles.len();
        pn_roles.push(Role::new("sub-root", [sub]));
        edges.push((0, sr, 1, cap));
        for j in 0..2 {
            edges.push((sr, pn_roles.len(), 1, cap));
            pn_roles.push(Role::new("sub-leaf", [sub, j]));
        }
    }
    let pn = PhysicalNetwork::from_tuples(pn_roles.len(), &edges)?;
    let instance = Instance::new(Variant::Cvne, None, vn, pn)?;
    let labels = Labels {
        vn: vn_roles,
        pn: pn_roles,
    };
    let mut art = Artifact::new(
        instance,
        labels,
        SourceProblem::ThreePp(src.clone()),
        Reduction::ThreePpStarOn2Star,
    );
    art.below_threshold = below;
    Ok(art)
}

pub(super) fn witness(art: &Artifact, cert: &Certificate) -> Result<Embedding> {
    let n = art.instance.n();
    let mut node_map: Vec<NodeId> = vec![0; n];
    match cert {
        Certificate::Halves { left, right } => {
            // left half, then the center, then the right half
            let mut pos = 0;
            for &i in left {
                node_map[i + 1] = pos;
                pos += 1;
            }
            node_map[0] = pos;
            for &i in right {
                pos += 1;
                node_map[i + 1] = pos;
            }
        }
        Certificate::Triples { triples } => {
            node_map[0] = 0;
            for (sub, triple) in triples.iter().enumerate() {
                let hosts = [
                    Role::new("sub-root", [sub]),
                    Role::new("sub-leaf", [sub, 0]),
                    Role::new("sub-leaf", [sub, 1]),
                ];
                for (&i, host) in triple.iter().zip(&hosts) {
                    node_map[i + 1] = art.pn_node(host).expect("gadget has the subtree");
                }
            }
        }
        _ => unreachable!("certificate was verified against the source"),
    }
    let pn = &art.instance.pn;
    Ok(Embedding::routed(&art.instance.vn, node_map, |a, b| {
        tree_path(pn, a, b).expect("tree network")
    }))
}

pub(super) fn extract(art: &Artifact, emb: &Embedding) -> Result<Certificate> {
    let leaves = art.instance.n() - 1;
    match art.reduction {
        Reduction::PpStarOnLine => {
            let center = emb.node_map[0];
            let (left, right) = (0..leaves).partition(|&i| emb.node_map[i + 1] < center);
            Ok(Certificate::Halves { left, right })
        }
        _ => {
            let m = leaves / 3;
            let mut triples = vec![Vec::new(); m];
            for i in 0..leaves {
                let host = art.host_role(emb, i + 1);
                if host.is("root") {
                    return Err(unexpected(format!("leaf {i} sits on the physical root")));
                }
                triples[host.index[0]].push(i);
            }
            Ok(Certificate::Triples { triples })
        }
    }
}
