//! Three-dimensional matching as an oversubscribed 2-star on a general
//! capacitated network.
//!
//! Physical side: a root `r`, one node per triplet `t`, substitution nodes
//! `p_u^{ab}` (one per pair of triplets through vertex `u`) and `c_u^{aj}`
//! (`B - d_u` per triplet through `u`), and `g` filler stars of `s` nodes.
//! Every triplet node has exactly `s = 3(B - 1)` substitution neighbours, so a
//! group rooted on it can keep all its leaves next to it.

use crate::error::{Result, VneError};
use crate::model::{
    Capacity, Embedding, Instance, Network, NodeId, PhysicalNetwork, Variant, VirtualNetwork,
};

use super::{
    Artifact, Certificate, Labels, ReduceOptions, Reduction, Role, SourceProblem, ThreeDmSource,
};

/// Sizes derived from a 3DM source.
struct Plan {
    /// Largest vertex degree.
    b: usize,
    /// Leaves per group.
    s: usize,
    /// Filler groups.
    g: usize,
    /// Number of substitution nodes.
    j: usize,
}

fn plan(src: &ThreeDmSource) -> Result<Plan> {
    let degrees = src.degrees();
    let b = degrees.iter().copied().max().unwrap_or(0);
    if b < 2 {
        return Err(VneError::InvalidSource(
            "the matching gadget needs a vertex in at least two triplets".into(),
        ));
    }
    let s = 3 * (b - 1);
    let j: usize = degrees
        .iter()
        .map(|&d| d * (d.saturating_sub(1)) / 2 + d * (b - d))
        .sum();
    let m = src.triplets.len();
    let g = (m + j).checked_sub(src.q * (s + 1)).ok_or_else(|| {
        VneError::InvalidSource("filler count g = m + |J| - q(s + 1) is negative".into())
    })?;
    Ok(Plan { b, s, g, j })
}

/// Triplets through flat vertex `u`, ascending.
fn through(src: &ThreeDmSource, u: usize) -> Vec<usize> {
    (0..src.triplets.len())
        .filter(|&t| src.vertices(t).contains(&u))
        .collect()
}

pub fn reduce_3dm_oversub_2star(src: &ThreeDmSource, opts: ReduceOptions) -> Result<Artifact> {
    src.validate()?;
    let below = src.q < 3;
    if below && !opts.allow_below_threshold {
        return Err(VneError::InvalidSource(format!(
            "the matching gadget needs q >= 3, got q = {}",
            src.q
        )));
    }
    let Plan { b, s, g, j } = plan(src)?;
    let m = src.triplets.len();

    let mut roles = vec![Role::plain("r")];
    let mut edges: Vec<(NodeId, NodeId, u64, Capacity)> = Vec::new();
    let unit = Capacity::Finite(1);
    for t in 0..m {
        roles.push(Role::new("t", [t]));
        edges.push((0, 1 + t, 1, Capacity::Finite(s as u64)));
    }
    for u in 0..3 * src.q {
        let ts = through(src, u);
        for (x, &a) in ts.iter().enumerate() {
            for &c in &ts[x + 1..] {
                let p = roles.len();
                roles.push(Role::new("p", [u, a, c]));
                edges.push((1 + a, p, 1, unit));
                edges.push((1 + c, p, 1, unit));
            }
        }
        for &a in &ts {
            for k in 0..b - ts.len() {
                let c = roles.len();
                roles.push(Role::new("c", [u, a, k]));
                edges.push((1 + a, c, 1, unit));
            }
        }
    }
    debug_assert_eq!(roles.len(), 1 + m + j);
    for i in 0..g {
        let f0 = roles.len();
        roles.push(Role::new("f", [i, 0]));
        edges.push((0, f0, 1, Capacity::Finite(s as u64 + 1)));
        for k in 1..s {
            edges.push((f0, roles.len(), 1, unit));
            roles.push(Role::new("f", [i, k]));
        }
    }
    let n = roles.len();
    let pn = PhysicalNetwork::from_tuples(n, &edges)?;

    // groups 0..q stand for the matching, the rest for the fillers
    let mut vn_roles = vec![Role::plain("root")];
    let mut vn_edges = Vec::new();
    for k in 0..src.q + g {
        let gr = vn_roles.len();
        vn_roles.push(Role::new("group-root", [k]));
        vn_edges.push((0, gr, s as u64));
        for l in 0..s {
            vn_edges.push((gr, vn_roles.len(), 1));
            vn_roles.push(Role::new("group-leaf", [k, l]));
        }
    }
    assert_eq!(
        vn_roles.len(),
        n,
        "both sides of the matching gadget have 1 + (q + g)(s + 1) nodes"
    );
    let vn = VirtualNetwork::from_tuples(n, &vn_edges)?;
    let instance = Instance::new(Variant::Cvne, None, vn, pn)?;
    let labels = Labels {
        vn: vn_roles,
        pn: roles,
    };
    let mut art = Artifact::new(
        instance,
        labels,
        SourceProblem::ThreeDm(src.clone()),
        Reduction::ThreeDmOversub2Star,
    );
    art.below_threshold = below;
    Ok(art)
}

fn source(art: &Artifact) -> &ThreeDmSource {
    match &art.source {
        SourceProblem::ThreeDm(s) => s,
        _ => unreachable!("matching gadget carries a 3dm source"),
    }
}

pub(super) fn witness(art: &Artifact, cert: &Certificate) -> Result<Embedding> {
    let Certificate::Matching { triplets } = cert else {
        unreachable!("certificate was verified against the source")
    };
    let src = source(art);
    let Plan { s, g, .. } = plan(src)?;
    let pn = &art.instance.pn;
    let n = art.instance.n();
    let node = |role: Role| art.pn_node(&role).expect("gadget node");
    let group_root = |k: usize| 1 + k * (s + 1);
    let r = 0;

    let mut node_map = vec![usize::MAX; n];
    let mut emb_paths: Vec<((NodeId, NodeId), Vec<NodeId>)> = Vec::new();
    let mut occupied = vec![false; n];
    node_map[0] = r;
    occupied[r] = true;

    let selected: Vec<bool> = (0..src.triplets.len())
        .map(|t| triplets.contains(&t))
        .collect();
    for (k, &t) in triplets.iter().enumerate() {
        let tn = node(Role::new("t", [t]));
        let gr = group_root(k);
        node_map[gr] = tn;
        occupied[tn] = true;
        emb_paths.push(((0, gr), vec![r, tn]));
        let mut nbrs: Vec<NodeId> = pn
            .neighbors(tn)
            .iter()
            .map(|&(v, _)| v)
            .filter(|&v| v != r)
            .collect();
        nbrs.sort_unstable();
        debug_assert_eq!(nbrs.len(), s);
        for (l, &v) in nbrs.iter().enumerate() {
            node_map[gr + 1 + l] = v;
            occupied[v] = true;
            emb_paths.push(((gr, gr + 1 + l), vec![tn, v]));
        }
    }

    // one leaf per filler group goes to a still free triplet or
    // substitution node, routed through r and an unselected triplet
    let mut free = (1..n).filter(|&v| !occupied[v] && !art.labels.pn[v].is("f"));
    for i in 0..g {
        let gr = group_root(src.q + i);
        let f0 = node(Role::new("f", [i, 0]));
        node_map[gr] = f0;
        emb_paths.push(((0, gr), vec![r, f0]));
        for k in 1..s {
            let fk = node(Role::new("f", [i, k]));
            node_map[gr + k] = fk;
            emb_paths.push(((gr, gr + k), vec![f0, fk]));
        }
        let v = free.next().expect("free nodes match the filler count");
        let role = &art.labels.pn[v];
        let path = match role.name.as_str() {
            "t" => vec![f0, r, v],
            "c" => vec![f0, r, node(Role::new("t", [role.index[1]])), v],
            "p" => {
                let (a, c) = (role.index[1], role.index[2]);
                let via = if selected[a] { c } else { a };
                vec![f0, r, node(Role::new("t", [via])), v]
            }
            _ => unreachable!("free node is a triplet or substitution node"),
        };
        node_map[gr + s] = v;
        emb_paths.push(((gr, gr + s), path));
    }
    debug_assert!(free.next().is_none());

    let mut emb = Embedding::new(node_map);
    for (key, path) in emb_paths {
        emb.paths.insert(key, path);
    }
    Ok(emb)
}

pub(super) fn extract(art: &Artifact, emb: &Embedding) -> Result<Certificate> {
    let mut triplets: Vec<usize> = art
        .vn_with("group-root")
        .filter_map(|(v, _)| {
            let host = art.host_role(emb, v);
            host.is("t").then(|| host.index[0])
        })
        .collect();
    triplets.sort_unstable();
    Ok(Certificate::Matching { triplets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{check_capacities, validate_embedding};
    use crate::reductions::{build_witness, extract_certificate, verify_source};

    fn figure() -> ThreeDmSource {
        ThreeDmSource {
            q: 2,
            triplets: vec![[0, 0, 0], [0, 1, 0], [0, 1, 1], [1, 1, 1]],
        }
    }

    const UNSAFE: ReduceOptions = ReduceOptions {
        allow_below_threshold: true,
    };

    #[test]
    fn figure_sizes() {
        let p = plan(&figure()).unwrap();
        assert_eq!((p.b, p.s, p.g, p.j), (3, 6, 6, 16));
        assert!(reduce_3dm_oversub_2star(&figure(), ReduceOptions::default()).is_err());
        let art = reduce_3dm_oversub_2star(&figure(), UNSAFE).unwrap();
        assert_eq!(art.instance.n(), 1 + 8 * 7);
        for t in 0..4 {
            let tn = art.pn_node(&Role::new("t", [t])).unwrap();
            assert_eq!(art.instance.pn.degree(tn), 1 + 6);
        }
    }

    #[test]
    fn figure_witness_is_feasible() {
        let art = reduce_3dm_oversub_2star(&figure(), UNSAFE).unwrap();
        let cert = Certificate::Matching {
            triplets: vec![0, 3],
        };
        let emb = build_witness(&art, &cert).unwrap();
        validate_embedding(&art.instance, &emb)
            .into_result()
            .unwrap();
        assert!(check_capacities(&art.instance, &emb).unwrap());
        assert_eq!(extract_certificate(&art, &emb).unwrap(), cert);
    }

    #[test]
    fn larger_witness() {
        // q = 3 with every vertex of degree 2
        let src = ThreeDmSource {
            q: 3,
            triplets: vec![
                [0, 0, 0],
                [1, 1, 1],
                [2, 2, 2],
                [0, 1, 2],
                [1, 2, 0],
                [2, 0, 1],
            ],
        };
        let art = reduce_3dm_oversub_2star(&src, ReduceOptions::default()).unwrap();
        let cert = crate::reductions::brute_force_source(&art.source)
            .unwrap()
            .unwrap();
        let emb = build_witness(&art, &cert).unwrap();
        assert!(art.criterion_met(&emb).unwrap());
        assert!(verify_source(&art.source, &extract_certificate(&art, &emb).unwrap()).unwrap());
    }

    #[test]
    fn rejects_degree_one() {
        let src = ThreeDmSource {
            q: 3,
            triplets: vec![[0, 0, 0], [1, 1, 1], [2, 2, 2]],
        };
        assert!(reduce_3dm_oversub_2star(&src, ReduceOptions::default()).is_err());
    }
}
