//! Hamiltonian path as a uniform line on a unit-cost network.

use crate::error::Result;
use crate::model::{Capacity, Embedding, Instance, PhysicalNetwork, Variant, VirtualNetwork};
use crate::paths::all_pairs_cheapest_paths;

use super::{unexpected, Artifact, Certificate, HamSource, Labels, Reduction, Role, SourceProblem};

/// VN is the uniform line on `n` nodes, PN is the source graph with unit
/// costs, theta is `n - 1`.
///
/// A disconnected source still yields an artifact: its components are
/// chained by edges of cost `n`, which no embedding of cost `n - 1` can use.
pub fn reduce_ham(src: &HamSource) -> Result<Artifact> {
    src.validate()?;
    let n = src.n;
    let mut edges: Vec<_> = src
        .edges
        .iter()
        .map(|&(u, v)| (u, v, 1, Capacity::Unbounded))
        .collect();
    let comp = components(n, &src.edges);
    let mut reps: Vec<usize> = (0..n).filter(|&v| comp[v] == v).collect();
    reps.sort_unstable();
    for w in reps.windows(2) {
        edges.push((w[0], w[1], n as u64, Capacity::Unbounded));
    }
    let pn = PhysicalNetwork::from_tuples(n, &edges)?;
    let vn = VirtualNetwork::uniform_line(n)?;
    let instance = Instance::new(Variant::Wvne, Some(n as u64 - 1), vn, pn)?;
    let labels = Labels {
        vn: (0..n).map(|i| Role::new("line", [i])).collect(),
        pn: (0..n).map(|v| Role::new("vertex", [v])).collect(),
    };
    Ok(Artifact::new(
        instance,
        labels,
        SourceProblem::Ham(src.clone()),
        Reduction::Ham,
    ))
}

/// Smallest vertex of each vertex's component.
fn components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while p[r] != r {
            r = p[r];
        }
        p[v] = r;
        r
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a.max(b)] = a.min(b);
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

pub(super) fn witness(art: &Artifact, cert: &Certificate) -> Result<Embedding> {
    let Certificate::HamPath { order } = cert else {
        unreachable!("certificate was verified against the source")
    };
    let pn = &art.instance.pn;
    let cp = all_pairs_cheapest_paths(pn);
    Ok(Embedding::routed(
        &art.instance.vn,
        order.clone(),
        |a, b| cp.path(a, b),
    ))
}

pub(super) fn extract(art: &Artifact, emb: &Embedding) -> Result<Certificate> {
    let mut order = vec![0; art.instance.n()];
    for (v, role) in art.labels.vn.iter().enumerate() {
        let pos = *role
            .index
            .first()
            .ok_or_else(|| unexpected("unlabelled line node"))?;
        let host = &art.labels.pn[emb.node_map[v]];
        order[pos] = *host
            .index
            .first()
            .ok_or_else(|| unexpected("unlabelled vertex"))?;
    }
    Ok(Certificate::HamPath { order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::embedding_cost;
    use crate::reductions::{build_witness, extract_certificate, verify_source};

    #[test]
    fn path_graph_round_trip() {
        let src = HamSource {
            n: 4,
            edges: vec![(0, 2), (2, 1), (1, 3)],
        };
        let art = reduce_ham(&src).unwrap();
        assert_eq!(art.instance.theta, Some(3));
        let cert = Certificate::HamPath {
            order: vec![0, 2, 1, 3],
        };
        let emb = build_witness(&art, &cert).unwrap();
        assert_eq!(embedding_cost(&art.instance, &emb).unwrap(), 3);
        let back = extract_certificate(&art, &emb).unwrap();
        assert!(verify_source(&art.source, &back).unwrap());
    }

    #[test]
    fn disconnected_source_is_bridged() {
        let src = HamSource {
            n: 4,
            edges: vec![(0, 1), (2, 3)],
        };
        let art = reduce_ham(&src).unwrap();
        assert_eq!(art.instance.pn.edges().len(), 3);
        assert_eq!(art.instance.pn.edges()[2].cost, 4);
    }
}
