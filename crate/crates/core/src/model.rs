//! Graph, instance and embedding types.
//!
//! Networks are undirected, simple and connected. Edges are stored with
//! `u < v` and keep the order they were given in; an edge index is the
//! position in [`PhysicalNetwork::edges`] / [`VirtualNetwork::edges`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Result, VneError};

pub type NodeId = usize;

/// Maximum total demand a physical edge can carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Capacity {
    Finite(u64),
    Unbounded,
}

impl Capacity {
    pub fn admits(self, load: u64) -> bool {
        match self {
            Capacity::Finite(c) => load <= c,
            Capacity::Unbounded => true,
        }
    }

    /// Capacity left after `load`, `None` when unbounded.
    pub fn residual(self, load: u64) -> Option<u64> {
        match self {
            Capacity::Finite(c) => Some(c.saturating_sub(load)),
            Capacity::Unbounded => None,
        }
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Capacity::Finite(c) => Some(c),
            Capacity::Unbounded => None,
        }
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Finite(c) => write!(f, "{c}"),
            Capacity::Unbounded => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhysicalEdge {
    pub u: NodeId,
    pub v: NodeId,
    pub cost: u64,
    pub capacity: Capacity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VirtualEdge {
    pub u: NodeId,
    pub v: NodeId,
    pub demand: u64,
}

/// Sorted adjacency lists plus an endpoint lookup, shared by both network kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Adjacency {
    nbrs: Vec<Vec<(NodeId, usize)>>,
    lookup: HashMap<(NodeId, NodeId), usize>,
}

impl Adjacency {
    fn build(n: usize, endpoints: &[(NodeId, NodeId)]) -> Result<Self> {
        if n == 0 {
            return Err(VneError::InvalidGraph(
                "a network needs at least one node".into(),
            ));
        }
        let mut nbrs = vec![Vec::new(); n];
        let mut lookup = HashMap::with_capacity(endpoints.len());
        for (idx, &(u, v)) in endpoints.iter().enumerate() {
            if u >= n || v >= n {
                return Err(VneError::InvalidGraph(format!(
                    "edge {idx} ({u}, {v}): node id out of range [0, {n})"
                )));
            }
            if u == v {
                return Err(VneError::InvalidGraph(format!(
                    "edge {idx}: self-loop on node {u}"
                )));
            }
            let key = (u.min(v), u.max(v));
            if lookup.insert(key, idx).is_some() {
                return Err(VneError::InvalidGraph(format!(
                    "edge {idx}: parallel edge between {} and {}",
                    key.0, key.1
                )));
            }
            nbrs[u].push((v, idx));
            nbrs[v].push((u, idx));
        }
        for list in &mut nbrs {
            list.sort_unstable();
        }
        let adj = Adjacency { nbrs, lookup };
        if !adj.connected() {
            return Err(VneError::InvalidGraph("network is not connected".into()));
        }
        Ok(adj)
    }

    fn connected(&self) -> bool {
        let n = self.nbrs.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &(y, _) in &self.nbrs[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }

    fn edge_between(&self, u: NodeId, v: NodeId) -> Option<usize> {
        self.lookup.get(&(u.min(v), u.max(v))).copied()
    }
}

/// Read-only view shared by virtual and physical networks.
///
/// `edge_weight` is the demand for a virtual network and the per-unit
/// cost for a physical one.
pub trait Network {
    fn node_count(&self) -> usize;
    fn edge_count(&self) -> usize;
    fn endpoints(&self, edge: usize) -> (NodeId, NodeId);
    fn edge_weight(&self, edge: usize) -> u64;
    /// Neighbours of `v` as `(neighbour, edge index)`, ascending by neighbour.
    fn neighbors(&self, v: NodeId) -> &[(NodeId, usize)];
    fn edge_between(&self, u: NodeId, v: NodeId) -> Option<usize>;

    fn degree(&self, v: NodeId) -> usize {
        self.neighbors(v).len()
    }

    fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.node_count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhysicalNetwork {
    edges: Vec<PhysicalEdge>,
    adj: Adjacency,
}

impl PhysicalNetwork {
    pub fn new(n: usize, edges: Vec<PhysicalEdge>) -> Result<Self> {
        let edges: Vec<PhysicalEdge> = edges
            .into_iter()
            .map(|e| PhysicalEdge {
                u: e.u.min(e.v),
                v: e.u.max(e.v),
                ..e
            })
            .collect();
        let endpoints: Vec<_> = edges.iter().map(|e| (e.u, e.v)).collect();
        let adj = Adjacency::build(n, &endpoints)?;
        Ok(PhysicalNetwork { edges, adj })
    }

    /// Convenience constructor from `(u, v, cost, capacity)` tuples.
    pub fn from_tuples(n: usize, edges: &[(NodeId, NodeId, u64, Capacity)]) -> Result<Self> {
        Self::new(
            n,
            edges
                .iter()
                .map(|&(u, v, cost, capacity)| PhysicalEdge {
                    u,
                    v,
                    cost,
                    capacity,
                })
                .collect(),
        )
    }

    pub fn edges(&self) -> &[PhysicalEdge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &PhysicalEdge {
        &self.edges[idx]
    }

    /// Same topology and costs with every capacity replaced.
    pub fn with_capacities(&self, f: impl Fn(&PhysicalEdge) -> Capacity) -> PhysicalNetwork {
        let edges = self
            .edges
            .iter()
            .map(|e| PhysicalEdge {
                capacity: f(e),
                ..*e
            })
            .collect();
        PhysicalNetwork {
            edges,
            adj: self.adj.clone(),
        }
    }

    /// Cost of a node sequence, `None` if two consecutive nodes are not adjacent.
    pub fn path_cost(&self, path: &[NodeId]) -> Option<u64> {
        path.windows(2).try_fold(0u64, |acc, w| {
            self.edge_between(w[0], w[1])
                .map(|e| acc + self.edges[e].cost)
        })
    }

    /// Sum of incident capacities at `v`, `None` if any incident edge is unbounded.
    pub fn incident_capacity(&self, v: NodeId) -> Option<u64> {
        self.neighbors(v).iter().try_fold(0u64, |acc, &(_, e)| {
            self.edges[e].capacity.finite().map(|c| acc + c)
        })
    }
}

impl Network for PhysicalNetwork {
    fn node_count(&self) -> usize {
        self.adj.nbrs.len()
    }
    fn edge_count(&self) -> usize {
        self.edges.len()
    }
    fn endpoints(&self, edge: usize) -> (NodeId, NodeId) {
        (self.edges[edge].u, self.edges[edge].v)
    }
    fn edge_weight(&self, edge: usize) -> u64 {
        self.edges[edge].cost
    }
    fn neighbors(&self, v: NodeId) -> &[(NodeId, usize)] {
        &self.adj.nbrs[v]
    }
    fn edge_between(&self, u: NodeId, v: NodeId) -> Option<usize> {
        self.adj.edge_between(u, v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualNetwork {
    edges: Vec<VirtualEdge>,
    adj: Adjacency,
}

impl VirtualNetwork {
    pub fn new(n: usize, edges: Vec<VirtualEdge>) -> Result<Self> {
        let edges: Vec<VirtualEdge> = edges
            .into_iter()
            .map(|e| VirtualEdge {
                u: e.u.min(e.v),
                v: e.u.max(e.v),
                ..e
            })
            .collect();
        let endpoints: Vec<_> = edges.iter().map(|e| (e.u, e.v)).collect();
        let adj = Adjacency::build(n, &endpoints)?;
        Ok(VirtualNetwork { edges, adj })
    }

    pub fn from_tuples(n: usize, edges: &[(NodeId, NodeId, u64)]) -> Result<Self> {
        Self::new(
            n,
            edges
                .iter()
                .map(|&(u, v, demand)| VirtualEdge { u, v, demand })
                .collect(),
        )
    }

    /// Uniform line `0 - 1 - ... - (n-1)`.
    pub fn uniform_line(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i, 1)).collect();
        Self::from_tuples(n, &edges)
    }

    pub fn edges(&self) -> &[VirtualEdge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &VirtualEdge {
        &self.edges[idx]
    }

    /// Total demand of the edges incident to `v`.
    pub fn incident_demand(&self, v: NodeId) -> u64 {
        self.neighbors(v)
            .iter()
            .map(|&(_, e)| self.edges[e].demand)
            .sum()
    }
}

impl Network for VirtualNetwork {
    fn node_count(&self) -> usize {
        self.adj.nbrs.len()
    }
    fn edge_count(&self) -> usize {
        self.edges.len()
    }
    fn endpoints(&self, edge: usize) -> (NodeId, NodeId) {
        (self.edges[edge].u, self.edges[edge].v)
    }
    fn edge_weight(&self, edge: usize) -> u64 {
        self.edges[edge].demand
    }
    fn neighbors(&self, v: NodeId) -> &[(NodeId, usize)] {
        &self.adj.nbrs[v]
    }
    fn edge_between(&self, u: NodeId, v: NodeId) -> Option<usize> {
        self.adj.edge_between(u, v)
    }
}

/// Which constraints of the decision problem are in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Cost only, capacities ignored.
    Wvne,
    /// Capacities only, cost not compared with theta.
    Cvne,
    /// Capacities and cost.
    Wcvne,
}

impl Variant {
    pub fn respects_capacities(self) -> bool {
        !matches!(self, Variant::Wvne)
    }

    pub fn minimizes_cost(self) -> bool {
        !matches!(self, Variant::Cvne)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Wvne => "wvne",
            Variant::Cvne => "cvne",
            Variant::Wcvne => "wcvne",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Variant {
    type Err = VneError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wvne" => Ok(Variant::Wvne),
            "cvne" => Ok(Variant::Cvne),
            "wcvne" | "vne" => Ok(Variant::Wcvne),
            other => Err(VneError::InvalidInstance(format!(
                "unknown variant '{other}'"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub variant: Variant,
    pub theta: Option<u64>,
    pub vn: VirtualNetwork,
    pub pn: PhysicalNetwork,
}

impl Instance {
    pub fn new(
        variant: Variant,
        theta: Option<u64>,
        vn: VirtualNetwork,
        pn: PhysicalNetwork,
    ) -> Result<Self> {
        if vn.node_count() != pn.node_count() {
            return Err(VneError::InvalidInstance(format!(
                "virtual network has {} nodes but physical network has {}",
                vn.node_count(),
                pn.node_count()
            )));
        }
        Ok(Instance {
            variant,
            theta,
            vn,
            pn,
        })
    }

    pub fn n(&self) -> usize {
        self.vn.node_count()
    }

    pub fn with_variant(&self, variant: Variant) -> Instance {
        Instance {
            variant,
            ..self.clone()
        }
    }
}

/// Node bijection plus one physical path per virtual edge.
///
/// Paths are keyed by the virtual edge `(u, v)` with `u < v` and run from
/// `node_map[u]` to `node_map[v]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Embedding {
    pub node_map: Vec<NodeId>,
    pub paths: BTreeMap<(NodeId, NodeId), Vec<NodeId>>,
}

impl Embedding {
    pub fn new(node_map: Vec<NodeId>) -> Self {
        Embedding {
            node_map,
            paths: BTreeMap::new(),
        }
    }

    pub fn set_path(&mut self, u: NodeId, v: NodeId, path: Vec<NodeId>) {
        if u < v {
            self.paths.insert((u, v), path);
        } else {
            let mut path = path;
            path.reverse();
            self.paths.insert((v, u), path);
        }
    }

    pub fn path(&self, u: NodeId, v: NodeId) -> Option<&[NodeId]> {
        self.paths.get(&(u.min(v), u.max(v))).map(Vec::as_slice)
    }

    /// Embedding that routes every virtual edge on `route(a, b)`.
    pub fn routed(
        vn: &VirtualNetwork,
        node_map: Vec<NodeId>,
        mut route: impl FnMut(NodeId, NodeId) -> Vec<NodeId>,
    ) -> Embedding {
        let mut emb = Embedding::new(node_map);
        for e in vn.edges() {
            let path = route(emb.node_map[e.u], emb.node_map[e.v]);
            emb.paths.insert((e.u, e.v), path);
        }
        emb
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NodeMapLength {
        expected: usize,
        found: usize,
    },
    NodeOutOfRange {
        vnode: NodeId,
        pnode: NodeId,
    },
    NotBijection {
        pnode: NodeId,
        vnodes: (NodeId, NodeId),
    },
    MissingPath {
        edge: (NodeId, NodeId),
    },
    UnknownEdge {
        edge: (NodeId, NodeId),
    },
    EmptyPath {
        edge: (NodeId, NodeId),
    },
    EndpointMismatch {
        edge: (NodeId, NodeId),
        expected: (NodeId, NodeId),
        found: (NodeId, NodeId),
    },
    NotSimple {
        edge: (NodeId, NodeId),
    },
    MissingPhysicalEdge {
        edge: (NodeId, NodeId),
        hop: (NodeId, NodeId),
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NodeMapLength { expected, found } => {
                write!(f, "node map has {found} entries, expected {expected}")
            }
            Violation::NodeOutOfRange { vnode, pnode } => {
                write!(
                    f,
                    "virtual node {vnode} mapped to non-existent physical node {pnode}"
                )
            }
            Violation::NotBijection { pnode, vnodes } => write!(
                f,
                "not a bijection: physical node {pnode} hosts virtual nodes {} and {}",
                vnodes.0, vnodes.1
            ),
            Violation::MissingPath { edge } => {
                write!(f, "no path for virtual edge {}-{}", edge.0, edge.1)
            }
            Violation::UnknownEdge { edge } => {
                write!(
                    f,
                    "path given for {}-{}, which is not a virtual edge",
                    edge.0, edge.1
                )
            }
            Violation::EmptyPath { edge } => {
                write!(f, "empty path for virtual edge {}-{}", edge.0, edge.1)
            }
            Violation::EndpointMismatch {
                edge,
                expected,
                found,
            } => write!(
                f,
                "path endpoint mismatch for {}-{}: expected {}..{}, found {}..{}",
                edge.0, edge.1, expected.0, expected.1, found.0, found.1
            ),
            Violation::NotSimple { edge } => {
                write!(f, "path not simple for virtual edge {}-{}", edge.0, edge.1)
            }
            Violation::MissingPhysicalEdge { edge, hop } => write!(
                f,
                "path for {}-{} uses non-existent physical edge {}-{}",
                edge.0, edge.1, hop.0, hop.1
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            let msgs: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
            Err(VneError::InvalidEmbedding(msgs.join("; ")))
        }
    }
}

/// Checks every structural invariant of `emb` and reports all violations.
pub fn validate_embedding(instance: &Instance, emb: &Embedding) -> ValidationReport {
    let n = instance.n();
    let mut violations = Vec::new();

    if emb.node_map.len() != n {
        violations.push(Violation::NodeMapLength {
            expected: n,
            found: emb.node_map.len(),
        });
    }
    let mut host: Vec<Option<NodeId>> = vec![None; n];
    for (vnode, &pnode) in emb.node_map.iter().enumerate() {
        if pnode >= n {
            violations.push(Violation::NodeOutOfRange { vnode, pnode });
            continue;
        }
        match host[pnode] {
            Some(first) => violations.push(Violation::NotBijection {
                pnode,
                vnodes: (first, vnode),
            }),
            None => host[pnode] = Some(vnode),
        }
    }

    for &(a, b) in emb.paths.keys() {
        if a >= b || instance.vn.edge_between(a, b).is_none() {
            violations.push(Violation::UnknownEdge { edge: (a, b) });
        }
    }

    for e in instance.vn.edges() {
        let edge = (e.u, e.v);
        let Some(path) = emb.paths.get(&edge) else {
            violations.push(Violation::MissingPath { edge });
            continue;
        };
        let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
            violations.push(Violation::EmptyPath { edge });
            continue;
        };
        if let (Some(&pu), Some(&pv)) = (emb.node_map.get(e.u), emb.node_map.get(e.v)) {
            if (first, last) != (pu, pv) {
                violations.push(Violation::EndpointMismatch {
                    edge,
                    expected: (pu, pv),
                    found: (first, last),
                });
            }
        }
        let mut seen = vec![false; n];
        let mut simple = true;
        for &x in path {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                simple = false;
                break;
            }
        }
        if !simple {
            violations.push(Violation::NotSimple { edge });
            continue;
        }
        if let Some(w) = path
            .windows(2)
            .find(|w| instance.pn.edge_between(w[0], w[1]).is_none())
        {
            violations.push(Violation::MissingPhysicalEdge {
                edge,
                hop: (w[0], w[1]),
            });
        }
    }

    ValidationReport { violations }
}

/// Sum over virtual edges of demand times the cost of the routed path.
pub fn embedding_cost(instance: &Instance, emb: &Embedding) -> Result<u64> {
    validate_embedding(instance, emb).into_result()?;
    Ok(instance
        .vn
        .edges()
        .iter()
        .map(|e| {
            let path = &emb.paths[&(e.u, e.v)];
            e.demand * instance.pn.path_cost(path).expect("validated path")
        })
        .sum())
}

/// Total demand routed through each physical edge, indexed like `pn.edges()`.
pub fn edge_loads(instance: &Instance, emb: &Embedding) -> Result<Vec<u64>> {
    validate_embedding(instance, emb).into_result()?;
    let mut loads = vec![0u64; instance.pn.edge_count()];
    for e in instance.vn.edges() {
        for w in emb.paths[&(e.u, e.v)].windows(2) {
            let idx = instance
                .pn
                .edge_between(w[0], w[1])
                .expect("validated path");
            loads[idx] += e.demand;
        }
    }
    Ok(loads)
}

/// Whether every physical edge carries at most its capacity.
pub fn check_capacities(instance: &Instance, emb: &Embedding) -> Result<bool> {
    let loads = edge_loads(instance, emb)?;
    Ok(instance
        .pn
        .edges()
        .iter()
        .zip(&loads)
        .all(|(e, &load)| e.capacity.admits(load)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_pn(n: usize, cost: u64, cap: Capacity) -> PhysicalNetwork {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i, cost, cap)).collect();
        PhysicalNetwork::from_tuples(n, &edges).unwrap()
    }

    fn identity(instance: &Instance) -> Embedding {
        Embedding::routed(&instance.vn, (0..instance.n()).collect(), |a, b| vec![a, b])
    }

    #[test]
    fn rejects_malformed_graphs() {
        assert!(PhysicalNetwork::from_tuples(2, &[(0, 0, 1, Capacity::Unbounded)]).is_err());
        assert!(VirtualNetwork::from_tuples(3, &[(0, 1, 1), (1, 0, 2), (1, 2, 1)]).is_err());
        assert!(VirtualNetwork::from_tuples(3, &[(0, 1, 1)]).is_err());
        assert!(VirtualNetwork::from_tuples(2, &[(0, 2, 1)]).is_err());
        assert!(VirtualNetwork::from_tuples(0, &[]).is_err());
        assert!(VirtualNetwork::from_tuples(1, &[]).is_ok());
    }

    #[test]
    fn instance_requires_equal_sizes() {
        let vn = VirtualNetwork::uniform_line(3).unwrap();
        let pn = line_pn(4, 1, Capacity::Unbounded);
        assert!(Instance::new(Variant::Wvne, None, vn, pn).is_err());
    }

    #[test]
    fn identity_line_costs_edge_count() {
        let inst = Instance::new(
            Variant::Wvne,
            None,
            VirtualNetwork::uniform_line(3).unwrap(),
            line_pn(3, 1, Capacity::Unbounded),
        )
        .unwrap();
        let emb = identity(&inst);
        assert!(validate_embedding(&inst, &emb).is_valid());
        assert_eq!(embedding_cost(&inst, &emb).unwrap(), 2);
        assert_eq!(edge_loads(&inst, &emb).unwrap(), vec![1, 1]);
        assert!(check_capacities(&inst, &emb).unwrap());
    }

    #[test]
    fn demand_times_path_cost() {
        let vn = VirtualNetwork::from_tuples(3, &[(0, 1, 0), (0, 2, 5)]).unwrap();
        let pn = PhysicalNetwork::from_tuples(
            3,
            &[
                (0, 1, 1, Capacity::Unbounded),
                (1, 2, 3, Capacity::Finite(4)),
            ],
        )
        .unwrap();
        let inst = Instance::new(Variant::Wcvne, None, vn, pn).unwrap();
        let mut emb = Embedding::new(vec![0, 1, 2]);
        emb.set_path(0, 1, vec![0, 1]);
        emb.set_path(0, 2, vec![0, 1, 2]);
        assert_eq!(embedding_cost(&inst, &emb).unwrap(), 20);
        assert_eq!(edge_loads(&inst, &emb).unwrap(), vec![5, 5]);
        assert!(!check_capacities(&inst, &emb).unwrap());
    }

    #[test]
    fn star_vn_loads_accumulate_on_hub_edge() {
        // hub image 0, every leaf routed through edge 0-1
        let vn = VirtualNetwork::from_tuples(4, &[(0, 1, 2), (0, 2, 3), (0, 3, 4)]).unwrap();
        let pn = PhysicalNetwork::from_tuples(
            4,
            &[
                (0, 1, 1, Capacity::Unbounded),
                (1, 2, 1, Capacity::Unbounded),
                (1, 3, 1, Capacity::Unbounded),
            ],
        )
        .unwrap();
        let inst = Instance::new(Variant::Wvne, None, vn, pn).unwrap();
        let emb = Embedding::routed(&inst.vn, vec![0, 1, 2, 3], |a, b| {
            if b == 1 {
                vec![a, b]
            } else {
                vec![a, 1, b]
            }
        });
        assert_eq!(edge_loads(&inst, &emb).unwrap()[0], 9);
    }

    #[test]
    fn reports_each_violation() {
        let inst = Instance::new(
            Variant::Wvne,
            None,
            VirtualNetwork::from_tuples(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap(),
            PhysicalNetwork::from_tuples(
                4,
                &[
                    (0, 1, 1, Capacity::Unbounded),
                    (1, 2, 1, Capacity::Unbounded),
                    (2, 3, 1, Capacity::Unbounded),
                    (0, 3, 1, Capacity::Unbounded),
                ],
            )
            .unwrap(),
        )
        .unwrap();

        let mut emb = identity(&inst);
        emb.node_map[3] = 0;
        let report = validate_embedding(&inst, &emb);
        assert!(report
            .violations
            .iter()
            .any(|v| v.to_string().contains("not a bijection")));

        let mut emb = identity(&inst);
        emb.node_map = vec![0, 1, 3, 2];
        emb.set_path(1, 2, vec![1, 0, 1, 3]);
        emb.set_path(2, 3, vec![3, 2]);
        let report = validate_embedding(&inst, &emb);
        assert!(report
            .violations
            .iter()
            .any(|v| v.to_string().contains("path not simple")));

        let mut emb = identity(&inst);
        emb.set_path(0, 1, vec![0, 2, 1]);
        let report = validate_embedding(&inst, &emb);
        assert!(matches!(
            report.violations.as_slice(),
            [Violation::MissingPhysicalEdge { hop: (0, 2), .. }]
        ));

        let mut emb = identity(&inst);
        emb.set_path(0, 1, vec![1, 0]);
        assert!(matches!(
            validate_embedding(&inst, &emb).violations.as_slice(),
            [Violation::EndpointMismatch { .. }]
        ));

        let mut emb = identity(&inst);
        emb.paths.remove(&(2, 3));
        emb.paths.insert((0, 2), vec![0, 1, 2]);
        let report = validate_embedding(&inst, &emb);
        assert_eq!(report.violations.len(), 2);
        assert!(embedding_cost(&inst, &emb).is_err());
    }

    #[test]
    fn single_node_instance_has_zero_cost() {
        let inst = Instance::new(
            Variant::Wcvne,
            Some(0),
            VirtualNetwork::from_tuples(1, &[]).unwrap(),
            PhysicalNetwork::from_tuples(1, &[]).unwrap(),
        )
        .unwrap();
        let emb = Embedding::new(vec![0]);
        assert_eq!(embedding_cost(&inst, &emb).unwrap(), 0);
        assert!(check_capacities(&inst, &emb).unwrap());
    }
}
