//! Canonical JSON encodings.
//!
//! Instance:
//! `{"variant":"wvne|cvne|wcvne","theta":int|null,"vn":{"n":int,"edges":[[u,v,demand],...]},
//!   "pn":{"n":int,"edges":[[u,v,cost,capacity],...]}}` with capacity `-1` meaning unbounded.
//!
//! Embedding: `{"node_map":[...],"paths":{"u-v":[n0,n1,...],...}}` with `u < v`.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, VneError};
use crate::model::{
    Capacity, Embedding, Instance, Network, NodeId, PhysicalEdge, PhysicalNetwork, Variant,
    VirtualEdge, VirtualNetwork,
};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VnWire {
    n: usize,
    edges: Vec<(NodeId, NodeId, u64)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PnWire {
    n: usize,
    edges: Vec<(NodeId, NodeId, u64, i64)>,
}

#[derive(Serialize, Deserialize)]
struct InstanceWire {
    variant: String,
    theta: Option<u64>,
    vn: VnWire,
    pn: PnWire,
}

fn capacity_to_wire(c: Capacity) -> i64 {
    match c {
        Capacity::Finite(c) => c as i64,
        Capacity::Unbounded => -1,
    }
}

fn capacity_from_wire(raw: i64, idx: usize) -> Result<Capacity> {
    match raw {
        -1 => Ok(Capacity::Unbounded),
        c if c >= 0 => Ok(Capacity::Finite(c as u64)),
        c => Err(VneError::InvalidInstance(format!(
            "pn.edges[{idx}]: capacity {c} is negative (use -1 for unbounded)"
        ))),
    }
}

impl InstanceWire {
    fn from_instance(inst: &Instance) -> Self {
        InstanceWire {
            variant: inst.variant.as_str().to_string(),
            theta: inst.theta,
            vn: VnWire {
                n: inst.vn.node_count(),
                edges: inst
                    .vn
                    .edges()
                    .iter()
                    .map(|e| (e.u, e.v, e.demand))
                    .collect(),
            },
            pn: PnWire {
                n: inst.pn.node_count(),
                edges: inst
                    .pn
                    .edges()
                    .iter()
                    .map(|e| (e.u, e.v, e.cost, capacity_to_wire(e.capacity)))
                    .collect(),
            },
        }
    }

    fn into_instance(self) -> Result<Instance> {
        let variant: Variant = self.variant.parse()?;
        let vn = VirtualNetwork::new(
            self.vn.n,
            self.vn
                .edges
                .iter()
                .map(|&(u, v, demand)| VirtualEdge { u, v, demand })
                .collect(),
        )
        .map_err(|e| VneError::InvalidInstance(format!("vn: {e}")))?;
        let pn_edges = self
            .pn
            .edges
            .iter()
            .enumerate()
            .map(|(idx, &(u, v, cost, cap))| {
                Ok(PhysicalEdge {
                    u,
                    v,
                    cost,
                    capacity: capacity_from_wire(cap, idx)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let pn = PhysicalNetwork::new(self.pn.n, pn_edges)
            .map_err(|e| VneError::InvalidInstance(format!("pn: {e}")))?;
        Instance::new(variant, self.theta, vn, pn)
    }
}

impl Serialize for Instance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        InstanceWire::from_instance(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Instance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        InstanceWire::deserialize(d)?
            .into_instance()
            .map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EmbeddingWire {
    node_map: Vec<NodeId>,
    paths: PathMap,
}

/// Path map serialized with `"u-v"` keys in numeric edge order.
struct PathMap(BTreeMap<(NodeId, NodeId), Vec<NodeId>>);

impl Serialize for PathMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for ((u, v), path) in &self.0 {
            map.serialize_entry(&format!("{u}-{v}"), path)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for PathMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, Vec<NodeId>> = BTreeMap::deserialize(d)?;
        let mut out = BTreeMap::new();
        for (key, path) in raw {
            let (u, v) = parse_edge_key(&key).map_err(D::Error::custom)?;
            if out.insert((u, v), path).is_some() {
                return Err(D::Error::custom(format!("duplicate path key '{key}'")));
            }
        }
        Ok(PathMap(out))
    }
}

pub fn parse_edge_key(key: &str) -> Result<(NodeId, NodeId)> {
    let bad = || {
        VneError::InvalidEmbedding(format!(
            "path key '{key}' is not of the form 'u-v' with u < v"
        ))
    };
    let (a, b) = key.split_once('-').ok_or_else(bad)?;
    let u: NodeId = a.trim().parse().map_err(|_| bad())?;
    let v: NodeId = b.trim().parse().map_err(|_| bad())?;
    if u >= v {
        return Err(bad());
    }
    Ok((u, v))
}

impl Serialize for Embedding {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EmbeddingWire {
            node_map: self.node_map.clone(),
            paths: PathMap(self.paths.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Embedding {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = EmbeddingWire::deserialize(d)?;
        Ok(Embedding {
            node_map: wire.node_map,
            paths: wire.paths.0,
        })
    }
}

pub fn instance_from_json(text: &str) -> Result<Instance> {
    Ok(serde_json::from_str(text)?)
}

pub fn instance_to_json(inst: &Instance) -> String {
    to_pretty(inst)
}

pub fn embedding_from_json(text: &str) -> Result<Embedding> {
    Ok(serde_json::from_str(text)?)
}

pub fn embedding_to_json(emb: &Embedding) -> String {
    to_pretty(emb)
}

/// Pretty JSON with a trailing newline; the byte layout is stable.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const FIG: &str = r#"{"variant":"cvne","theta":null,
        "vn":{"n":4,"edges":[[0,1,5],[0,2,3],[0,3,2]]},
        "pn":{"n":4,"edges":[[0,1,1,5],[1,2,1,5],[2,3,1,-1]]}}"#;

    #[test]
    fn parses_canonical_instance() {
        let inst = instance_from_json(FIG).unwrap();
        assert_eq!(inst.variant, Variant::Cvne);
        assert_eq!(inst.pn.edge(2).capacity, Capacity::Unbounded);
        assert_eq!(inst.pn.edge(0).capacity, Capacity::Finite(5));
        let again = instance_from_json(&instance_to_json(&inst)).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn schema_errors_name_the_field() {
        let err = instance_from_json(r#"{"variant":"wvne","theta":null,"vn":{"n":2,"edges":[[0,1,1]]},"pn":{"n":2,"edges":[[0,1,1,-3]]}}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("pn.edges[0]"), "{err}");
        let err = instance_from_json(r#"{"variant":"wvne","theta":null,"vn":{"n":2,"edges":[[0,1]]},"pn":{"n":2,"edges":[[0,1,1,1]]}}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("line"), "{err}");
        let err = instance_from_json(
            r#"{"variant":"xvne","theta":null,"vn":{"n":1,"edges":[]},"pn":{"n":1,"edges":[]}}"#,
        )
        .unwrap_err()
        .to_string();
        assert!(err.contains("variant"), "{err}");
    }

    #[test]
    fn embedding_keys_are_numeric_order() {
        let mut emb = Embedding::new(vec![0, 1, 2]);
        emb.set_path(10, 2, vec![5, 4]);
        emb.set_path(0, 1, vec![0, 1]);
        let text = serde_json::to_string(&emb).unwrap();
        assert_eq!(
            text,
            r#"{"node_map":[0,1,2],"paths":{"0-1":[0,1],"2-10":[4,5]}}"#
        );
        assert!(embedding_from_json(r#"{"node_map":[0],"paths":{"1-0":[0]}}"#).is_err());
    }

    proptest! {
        #[test]
        fn embedding_json_round_trip(
            map in proptest::collection::vec(0usize..20, 0..8),
            paths in proptest::collection::btree_map((0usize..10, 10usize..20), proptest::collection::vec(0usize..20, 1..5), 0..6),
        ) {
            let emb = Embedding { node_map: map, paths };
            let back = embedding_from_json(&embedding_to_json(&emb)).unwrap();
            prop_assert_eq!(back, emb);
        }
    }
}
