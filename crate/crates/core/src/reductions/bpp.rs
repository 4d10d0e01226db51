//! Bin packing gadgets: line on line, line on an octopus, 2-star on 2-star
//! and 2-star on a uniform 2-star.
//!
//! All four physical networks are trees, so witnesses route on tree paths.

use crate::error::{Result, VneError};
use crate::model::{
    Capacity, Embedding, Instance, NodeId, PhysicalNetwork, Variant, VirtualNetwork,
};
use crate::paths::tree_path;

use super::{
    unexpected, Artifact, BppSource, Certificate, Labels, ReduceOptions, Reduction, Role,
    SourceProblem,
};

/// Virtual and physical sides under construction.
#[derive(Default)]
struct Builder {
    vn_edges: Vec<(NodeId, NodeId, u64)>,
    vn_roles: Vec<Role>,
    pn_edges: Vec<(NodeId, NodeId, u64, Capacity)>,
    pn_roles: Vec<Role>,
}

impl Builder {
    fn vnode(&mut self, role: Role) -> NodeId {
        self.vn_roles.push(role);
        self.vn_roles.len() - 1
    }

    fn pnode(&mut self, role: Role) -> NodeId {
        self.pn_roles.push(role);
        self.pn_roles.len() - 1
    }

    fn vedge(&mut self, u: NodeId, v: NodeId, demand: u64) {
        self.vn_edges.push((u, v, demand));
    }

    fn pedge(&mut self, u: NodeId, v: NodeId, cost: u64) {
        self.pn_edges.push((u, v, cost, Capacity::Unbounded));
    }

    fn finish(self, theta: u64, src: &BppSource, reduction: Reduction) -> Result<Artifact> {
        let n = self.vn_roles.len();
        assert_eq!(n, self.pn_roles.len(), "gadget sides have equal size");
        let vn = VirtualNetwork::from_tuples(n, &self.vn_edges)?;
        let pn = PhysicalNetwork::from_tuples(n, &self.pn_edges)?;
        let instance = Instance::new(Variant::Wvne, Some(theta), vn, pn)?;
        let labels = Labels {
            vn: self.vn_roles,
            pn: self.pn_roles,
        };
        Ok(Artifact::new(
            instance,
            labels,
            SourceProblem::Bpp(src.clone()),
            reduction,
        ))
    }

    /// Element sections, singleton sections and an optional long section,
    /// chained into one virtual line.
    fn line_sections(&mut self, src: &BppSource, long: usize) {
        let mut prev: Option<NodeId> = None;
        let mut section = |b: &mut Builder, nodes: Vec<Role>| {
            for (k, role) in nodes.into_iter().enumerate() {
                let v = b.vnode(role);
                if let Some(p) = prev {
                    b.vedge(p, v, u64::from(k > 0));
                }
                prev = Some(v);
            }
        };
        for (i, &a) in src.a.iter().enumerate() {
            section(
                self,
                (0..a as usize).map(|k| Role::new("elem", [i, k])).collect(),
            );
        }
        for j in 0..singletons(src) {
            section(self, vec![Role::new("single", [j])]);
        }
        if long > 0 {
            section(self, (0..long).map(|k| Role::new("long", [k])).collect());
        }
    }
}

fn singletons(src: &BppSource) -> usize {
    (src.b * src.k - src.a.iter().sum::<u64>()) as usize
}

/// Line of element and singleton sections on `K` bins of `B` nodes; bins
/// have free internal edges and cost 1 between them. Theta is 0.
pub fn reduce_bpp_line_on_line(src: &BppSource) -> Result<Artifact> {
    src.validate()?;
    let (b, k) = (src.b as usize, src.k as usize);
    let mut g = Builder::default();
    g.line_sections(src, 0);
    for bin in 0..k {
        for pos in 0..b {
            let v = g.pnode(Role::new("bin", [bin, pos]));
            if v > 0 {
                g.pedge(v - 1, v, u64::from(pos == 0));
            }
        }
    }
    g.finish(0, src, Reduction::BppLineOnLine)
}

/// Octopus with `K + 2` legs of `B` unit edges; the virtual line gets an
/// extra long section of `2B + 1` nodes. Theta is `sum(a - 1) + 2B`.
pub fn reduce_bpp_line_on_uniform_tree(src: &BppSource) -> Result<Artifact> {
    src.validate()?;
    let (b, k) = (src.b as usize, src.k as usize);
    let mut g = Builder::default();
    g.line_sections(src, 2 * b + 1);
    let root = g.pnode(Role::plain("root"));
    for leg in 0..k + 2 {
        let mut prev = root;
        for pos in 0..b {
            let v = g.pnode(Role::new("leg", [leg, pos]));
            g.pedge(prev, v, 1);
            prev = v;
        }
    }
    let theta = src.a.iter().map(|a| a - 1).sum::<u64>() + 2 * src.b;
    g.finish(theta, src, Reduction::BppLineOnUniformTree)
}

/// Adds a star per item hanging off `root`: item root on a free link,
/// `a - 1` leaves on unit demand.
fn item_stars(g: &mut Builder, root: NodeId, items: &[u64]) {
    for (i, &a) in items.iter().enumerate() {
        let ir = g.vnode(Role::new("item-root", [i]));
        g.vedge(root, ir, 0);
        for k in 0..a as usize - 1 {
            let leaf = g.vnode(Role::new("item-leaf", [i, k]));
            g.vedge(ir, leaf, 1);
        }
    }
}

/// Item stars plus spare root leaves on a root with `K` bin stars of `B`
/// nodes; bin stars are free inside and cost 1 to the root. Theta is 0.
pub fn reduce_bpp_2star_on_2star(src: &BppSource) -> Result<Artifact> {
    src.validate()?;
    let (b, k) = (src.b as usize, src.k as usize);
    let mut g = Builder::default();
    let root = g.vnode(Role::plain("root"));
    item_stars(&mut g, root, &src.a);
    for j in 0..singletons(src) {
        let v = g.vnode(Role::new("spare", [j]));
        g.vedge(root, v, 0);
    }
    let proot = g.pnode(Role::plain("root"));
    for bin in 0..k {
        let br = g.pnode(Role::new("bin-root", [bin]));
        g.pedge(proot, br, 1);
        for pos in 0..b - 1 {
            let v = g.pnode(Role::new("bin-leaf", [bin, pos]));
            g.pedge(br, v, 0);
        }
    }
    g.finish(0, src, Reduction::Bpp2StarOn2Star)
}

/// Items padded with 1-items up to a total of `B * K`.
fn padded(src: &BppSource) -> Vec<u64> {
    let mut items = src.a.clone();
    items.extend(std::iter::repeat_n(1, singletons(src)));
    items
}

/// Dummy leaf demand of the uniform 2-star gadget.
fn dummy_demand(src: &BppSource) -> u64 {
    2 * src.b * src.k
}

/// Item stars plus `K + B` heavy dummy leaves on a uniform 2-star made of
/// `K` bin stars with `B` leaves and `B` root leaves. Theta is
/// `(K + B) x + 2 sum(a - 1)` with `x = 2BK`.
pub fn reduce_bpp_2star_on_uniform_2star(src: &BppSource, opts: ReduceOptions) -> Result<Artifact> {
    src.validate()?;
    let below = src.k < 2 || src.a.len() < 2;
    if below && !opts.allow_below_threshold {
        return Err(VneError::InvalidSource(
            "the uniform 2-star gadget needs K >= 2 and at least 2 items".into(),
        ));
    }
    let (b, k) = (src.b as usize, src.k as usize);
    let x = dummy_demand(src);
    let items = padded(src);
    let mut g = Builder::default();
    let root = g.vnode(Role::plain("root"));
    item_stars(&mut g, root, &items);
    for j in 0..k + b {
        let v = g.vnode(Role::new("dummy", [j]));
        g.vedge(root, v, x);
    }
    let proot = g.pnode(Role::plain("root"));
    for bin in 0..k {
        let br = g.pnode(Role::new("bin-root", [bin]));
        g.pedge(proot, br, 1);
        for pos in 0..b {
            let v = g.pnode(Role::new("bin-leaf", [bin, pos]));
            g.pedge(br, v, 1);
        }
    }
    for j in 0..b {
        let v = g.pnode(Role::new("root-leaf", [j]));
        g.pedge(proot, v, 1);
    }
    let theta = (src.k + src.b) * x + 2 * items.iter().map(|a| a - 1).sum::<u64>();
    let mut art = g.finish(theta, src, Reduction::Bpp2StarOnUniform2Star)?;
    art.below_threshold = below;
    Ok(art)
}

fn bpp_source(art: &Artifact) -> &BppSource {
    match &art.source {
        SourceProblem::Bpp(s) => s,
        _ => unreachable!("bpp gadget carries a bpp source"),
    }
}

fn vnode_of(art: &Artifact, role: &Role) -> NodeId {
    art.labels
        .vn
        .iter()
        .position(|r| r == role)
        .unwrap_or_else(|| panic!("gadget has a {role} node"))
}

fn pnode_of(art: &Artifact, role: Role) -> NodeId {
    art.pn_node(&role)
        .unwrap_or_else(|| panic!("gadget has a {role} node"))
}

/// Virtual nodes of item `i` in placement order.
fn item_nodes(art: &Artifact, i: usize) -> Vec<NodeId> {
    let mut nodes: Vec<(Vec<usize>, NodeId)> = art
        .labels
        .vn
        .iter()
        .enumerate()
        .filter(|(_, r)| {
            (r.is("elem") || r.is("item-root") || r.is("item-leaf")) && r.index[0] == i
        })
        .map(|(v, r)| {
            // item roots first, then the rest by position
            let key = if r.is("item-root") {
                vec![0]
            } else {
                vec![1, *r.index.get(1).unwrap_or(&0)]
            };
            (key, v)
        })
        .collect();
    nodes.sort();
    nodes.into_iter().map(|(_, v)| v).collect()
}

/// Per bin, the virtual nodes placed on it in order: items of the bin, then
/// filler nodes from `fill` until the bin holds `size` nodes.
fn bin_contents(
    art: &Artifact,
    bins: &[Vec<usize>],
    k: usize,
    size: usize,
    fill: &mut impl Iterator<Item = NodeId>,
) -> Vec<Vec<NodeId>> {
    (0..k)
        .map(|j| {
            let mut nodes: Vec<NodeId> = bins
                .get(j)
                .into_iter()
                .flatten()
                .flat_map(|&i| item_nodes(art, i))
                .collect();
            while nodes.len() < size {
                nodes.push(fill.next().expect("enough filler nodes"));
            }
            nodes
        })
        .collect()
}

pub(super) fn witness(art: &Artifact, cert: &Certificate) -> Result<Embedding> {
    let Certificate::Bins { bins } = cert else {
        unreachable!("certificate was verified against the source")
    };
    let src = bpp_source(art);
    let (b, k) = (src.b as usize, src.k as usize);
    let n = art.instance.n();
    let mut node_map = vec![usize::MAX; n];
    let singles = |name: &'static str| art.vn_with(name).map(|(v, _)| v).collect::<Vec<_>>();
    match art.reduction {
        Reduction::BppLineOnLine | Reduction::BppLineOnUniformTree => {
            let mut fill = singles("single").into_iter();
            for (j, nodes) in bin_contents(art, bins, k, b, &mut fill)
                .into_iter()
                .enumerate()
            {
                for (pos, v) in nodes.into_iter().enumerate() {
                    let role = if art.reduction == Reduction::BppLineOnLine {
                        "bin"
                    } else {
                        "leg"
                    };
                    node_map[v] = pnode_of(art, Role::new(role, [j, pos]));
                }
            }
            if art.reduction == Reduction::BppLineOnUniformTree {
                // long section: down leg K reversed, the root, then up leg K + 1
                for (v, role) in art.vn_with("long") {
                    let idx = role.index[0];
                    node_map[v] = match idx.cmp(&b) {
                        std::cmp::Ordering::Less => {
                            pnode_of(art, Role::new("leg", [k, b - 1 - idx]))
                        }
                        std::cmp::Ordering::Equal => pnode_of(art, Role::plain("root")),
                        std::cmp::Ordering::Greater => {
                            pnode_of(art, Role::new("leg", [k + 1, idx - b - 1]))
                        }
                    };
                }
            }
        }
        Reduction::Bpp2StarOn2Star => {
            node_map[vnode_of(art, &Role::plain("root"))] = pnode_of(art, Role::plain("root"));
            let mut fill = singles("spare").into_iter();
            for (j, nodes) in bin_contents(art, bins, k, b, &mut fill)
                .into_iter()
                .enumerate()
            {
                for (pos, v) in nodes.into_iter().enumerate() {
                    node_map[v] = match pos {
                        0 => pnode_of(art, Role::new("bin-root", [j])),
                        p => pnode_of(art, Role::new("bin-leaf", [j, p - 1])),
                    };
                }
            }
        }
        Reduction::Bpp2StarOnUniform2Star => {
            node_map[vnode_of(art, &Role::plain("root"))] = pnode_of(art, Role::plain("root"));
            // padding items go to the first bins with room
            let mut bins: Vec<Vec<usize>> = (0..k)
                .map(|j| bins.get(j).cloned().unwrap_or_default())
                .collect();
            let mut loads: Vec<u64> = bins
                .iter()
                .map(|bin| bin.iter().map(|&i| src.a[i]).sum())
                .collect();
            for pad in src.a.len()..src.a.len() + singletons(src) {
                let j = loads.iter().position(|&l| l < src.b).expect("padding fits");
                bins[j].push(pad);
                loads[j] += 1;
            }
            let mut none = std::iter::empty();
            for (j, nodes) in bin_contents(art, &bins, k, b, &mut none)
                .into_iter()
                .enumerate()
            {
                for (pos, v) in nodes.into_iter().enumerate() {
                    node_map[v] = pnode_of(art, Role::new("bin-leaf", [j, pos]));
                }
            }
            let hubs = (0..k)
                .map(|j| Role::new("bin-root", [j]))
                .chain((0..b).map(|j| Role::new("root-leaf", [j])));
            for ((v, _), hub) in art.vn_with("dummy").zip(hubs) {
                node_map[v] = pnode_of(art, hub);
            }
        }
        _ => unreachable!("not a bin packing gadget"),
    }
    debug_assert!(node_map.iter().all(|&p| p < n));
    let pn = &art.instance.pn;
    Ok(Embedding::routed(&art.instance.vn, node_map, |a, c| {
        tree_path(pn, a, c).expect("tree network")
    }))
}

pub(super) fn extract(art: &Artifact, emb: &Embedding) -> Result<Certificate> {
    let src = bpp_source(art);
    let k = src.k as usize;
    let first = if matches!(
        art.reduction,
        Reduction::BppLineOnLine | Reduction::BppLineOnUniformTree
    ) {
        "elem"
    } else {
        "item-root"
    };

    // octopus legs used by the long section are not bins
    let leg_bin: Vec<Option<usize>> = if art.reduction == Reduction::BppLineOnUniformTree {
        let long_legs: Vec<usize> = art
            .vn_with("long")
            .filter_map(|(v, _)| {
                let host = art.host_role(emb, v);
                host.is("leg").then(|| host.index[0])
            })
            .collect();
        let mut next = 0;
        (0..k + 2)
            .map(|leg| {
                (!long_legs.contains(&leg)).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    } else {
        Vec::new()
    };

    let mut bins = vec![Vec::new(); k];
    let mut deferred = Vec::new();
    for (v, role) in art.vn_with(first) {
        if role.index.len() > 1 && role.index[1] != 0 {
            continue;
        }
        let item = role.index[0];
        if item >= src.a.len() {
            continue; // padding
        }
        let host = art.host_role(emb, v);
        let bin = match (art.reduction, host.name.as_str()) {
            (Reduction::BppLineOnLine, "bin") => Some(host.index[0]),
            (Reduction::BppLineOnUniformTree, "leg") => leg_bin[host.index[0]],
            (Reduction::Bpp2StarOn2Star, "bin-root" | "bin-leaf") => Some(host.index[0]),
            (Reduction::Bpp2StarOn2Star, "root") => {
                deferred.push(item);
                continue;
            }
            (Reduction::Bpp2StarOnUniform2Star, "bin-leaf") => Some(host.index[0]),
            _ => None,
        };
        let bin = bin
            .filter(|&j| j < k)
            .ok_or_else(|| unexpected(format!("item {item} sits on {host}")))?;
        bins[bin].push(item);
    }
    // a 1-item on the physical root: any bin with room takes it
    for item in deferred {
        let load = |bin: &Vec<usize>| bin.iter().map(|&i| src.a[i]).sum::<u64>();
        let j = bins
            .iter()
            .position(|bin| load(bin) + src.a[item] <= src.b)
            .ok_or_else(|| unexpected(format!("no bin has room for item {item}")))?;
        bins[j].push(item);
    }
    for bin in &mut bins {
        bin.sort_unstable();
    }
    Ok(Certificate::Bins { bins })
}
