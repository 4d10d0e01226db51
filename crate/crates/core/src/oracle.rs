//! Exhaustive exact solvers for small instances.
//!
//! Both searches assign virtual nodes in index order and try physical nodes in
//! ascending order, so results are deterministic. Interchangeable virtual
//! nodes are forced into increasing image order, which removes symmetric
//! duplicates without losing any optimum.

use crate::error::{Result, VneError};
use crate::model::{Capacity, Embedding, Instance, Network, NodeId, Variant, VirtualNetwork};
use crate::paths::{all_pairs_cheapest_paths, simple_paths_filtered, CheapestPaths};
use crate::solvers::{Solution, SolveResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_n_wvne: usize,
    pub max_n_wcvne: usize,
    /// Maximum number of simple paths enumerated for one node pair.
    pub path_budget: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_n_wvne: 8,
            max_n_wcvne: 6,
            path_budget: 10_000,
        }
    }
}

impl OracleConfig {
    /// Same budgets with both node limits raised to at least `n`.
    pub fn allowing(self, n: usize) -> Self {
        OracleConfig {
            max_n_wvne: self.max_n_wvne.max(n),
            max_n_wcvne: self.max_n_wcvne.max(n),
            ..self
        }
    }
}

/// Demand on the virtual edge `u - w`, if any.
fn demand_between(vn: &VirtualNetwork, u: NodeId, w: NodeId) -> Option<u64> {
    vn.edge_between(u, w).map(|e| vn.edge(e).demand)
}

/// Nodes `u < v` with identical demands towards every third node.
fn twins(vn: &VirtualNetwork, u: NodeId, v: NodeId) -> bool {
    let n = vn.node_count();
    vn.degree(u) == vn.degree(v)
        && (0..n)
            .filter(|&w| w != u && w != v)
            .all(|w| demand_between(vn, u, w) == demand_between(vn, v, w))
}

/// Leaf demands of a node whose only non-leaf neighbour is `parent`.
fn pendant_star(vn: &VirtualNetwork, a: NodeId) -> Option<(NodeId, u64, Vec<u64>)> {
    let mut parent = None;
    let mut leaves = Vec::new();
    for &(w, e) in vn.neighbors(a) {
        let d = vn.edge(e).demand;
        if vn.degree(w) == 1 {
            leaves.push(d);
        } else if parent.replace((w, d)).is_some() {
            return None;
        }
    }
    let (p, d) = parent?;
    if leaves.is_empty() {
        return None;
    }
    leaves.sort_unstable();
    Some((p, d, leaves))
}

/// For every virtual node, earlier nodes whose image must be smaller.
fn symmetry_constraints(vn: &VirtualNetwork, stars: bool) -> Vec<Vec<NodeId>> {
    let n = vn.node_count();
    let mut before = vec![Vec::new(); n];
    for v in 0..n {
        if let Some(u) = (0..v).rev().find(|&u| twins(vn, u, v)) {
            before[v].push(u);
        }
    }
    if stars {
        let shapes: Vec<_> = (0..n).map(|a| pendant_star(vn, a)).collect();
        for v in 0..n {
            let Some(sv) = &shapes[v] else { continue };
            if let Some(u) = (0..v).rev().find(|&u| shapes[u].as_ref() == Some(sv)) {
                before[v].push(u);
            }
        }
    }
    before
}

fn check_budget(n: usize, max: usize, what: &str) -> Result<()> {
    if n > max {
        return Err(VneError::BudgetExceeded(format!(
            "{what} oracle handles at most {max} nodes, instance has {n}"
        )));
    }
    Ok(())
}

struct WvneSearch<'a> {
    vn: &'a VirtualNetwork,
    ap: &'a CheapestPaths,
    before: Vec<Vec<NodeId>>,
    map: Vec<NodeId>,
    used: Vec<bool>,
    best: Option<(u64, Vec<NodeId>)>,
}

impl WvneSearch<'_> {
    fn place(&mut self, u: NodeId, partial: u64) {
        let n = self.map.len();
        if u == n {
            if self.best.as_ref().is_none_or(|(c, _)| partial < *c) {
                self.best = Some((partial, self.map.clone()));
            }
            return;
        }
        let lo = self.before[u]
            .iter()
            .map(|&w| self.map[w] + 1)
            .max()
            .unwrap_or(0);
        for x in lo..n {
            if self.used[x] {
                continue;
            }
            let added: u64 = self
                .vn
                .neighbors(u)
                .iter()
                .filter(|&&(w, _)| w < u)
                .map(|&(w, e)| self.vn.edge(e).demand * self.ap.distance(self.map[w], x))
                .sum();
            let cost = partial + added;
            if self.best.as_ref().is_some_and(|(c, _)| cost >= *c) {
                continue;
            }
            self.used[x] = true;
            self.map[u] = x;
            self.place(u + 1, cost);
            self.used[x] = false;
        }
    }
}

/// Optimal cost-only embedding; the lexicographically smallest optimal node map.
pub fn oracle_wvne(instance: &Instance, config: &OracleConfig) -> Result<SolveResult> {
    let n = instance.n();
    check_budget(n, config.max_n_wvne, "wvne")?;
    let ap = all_pairs_cheapest_paths(&instance.pn);
    let mut search = WvneSearch {
        vn: &instance.vn,
        ap: &ap,
        before: symmetry_constraints(&instance.vn, false),
        map: vec![0; n],
        used: vec![false; n],
        best: None,
    };
    search.place(0, 0);
    let (cost, node_map) = search.best.expect("a bijection exists");
    let witness = Embedding::routed(&instance.vn, node_map, |a, b| ap.path(a, b));
    Ok(SolveResult::Optimal(Solution { cost, witness }))
}

struct BackEdge {
    from: NodeId,
    demand: u64,
}

struct WcvneSearch<'a> {
    instance: &'a Instance,
    ap: CheapestPaths,
    budget: usize,
    first_feasible: bool,
    before: Vec<Vec<NodeId>>,
    back: Vec<Vec<BackEdge>>,
    incident: Vec<u64>,
    map: Vec<NodeId>,
    used: Vec<bool>,
    load: Vec<u64>,
    paths: Vec<Vec<NodeId>>,
    route_of: Vec<Vec<usize>>,
    best: Option<(u64, Embedding)>,
}

impl WcvneSearch<'_> {
    fn capacity(&self, e: usize) -> Capacity {
        self.instance.pn.edge(e).capacity
    }

    fn done(&self) -> bool {
        self.first_feasible && self.best.is_some()
    }

    fn beaten(&self, cost: u64) -> bool {
        !self.first_feasible && self.best.as_ref().is_some_and(|(c, _)| cost >= *c)
    }

    /// Demand still to be routed out of `v` fits the spare capacity around its image.
    fn residual_ok(&self, placed: NodeId) -> bool {
        let vn = &self.instance.vn;
        let pn = &self.instance.pn;
        (0..=placed).all(|v| {
            let open: u64 = vn
                .neighbors(v)
                .iter()
                .filter(|&&(w, _)| w > placed)
                .map(|&(_, e)| vn.edge(e).demand)
                .sum();
            if open == 0 {
                return true;
            }
            let mut spare = 0u64;
            for &(_, e) in pn.neighbors(self.map[v]) {
                match self.capacity(e).residual(self.load[e]) {
                    Some(r) => spare += r,
                    None => return true,
                }
            }
            open <= spare
        })
    }

    /// Residual capacity around each unused physical node, sorted
    /// descending, covers the incident demands of the unplaced virtual nodes.
    fn hosts_remain(&self, placed: NodeId) -> bool {
        let pn = &self.instance.pn;
        let mut need: Vec<u64> = self.incident[placed + 1..].to_vec();
        if need.is_empty() {
            return true;
        }
        let mut have: Vec<u64> = (0..self.map.len())
            .filter(|&x| !self.used[x])
            .map(|x| {
                pn.neighbors(x)
                    .iter()
                    .map(|&(_, e)| self.capacity(e).residual(self.load[e]).unwrap_or(u64::MAX))
                    .fold(0u64, u64::saturating_add)
            })
            .collect();
        need.sort_unstable_by(|a, b| b.cmp(a));
        have.sort_unstable_by(|a, b| b.cmp(a));
        need.iter().zip(&have).all(|(d, c)| d <= c)
    }

    fn place(&mut self, u: NodeId, partial: u64) -> Result<()> {
        let n = self.map.len();
        if u == n {
            if self.first_feasible || self.best.as_ref().is_none_or(|(c, _)| partial < *c) {
                let mut emb = Embedding::new(self.map.clone());
                for (v, list) in self.route_of.iter().enumerate() {
                    for (k, be) in self.back[v].iter().enumerate() {
                        emb.set_path(be.from, v, self.paths[list[k]].clone());
                    }
                }
                self.best = Some((partial, emb));
            }
            return Ok(());
        }
        let lo = self.before[u]
            .iter()
            .map(|&w| self.map[w] + 1)
            .max()
            .unwrap_or(0);
        for x in lo..n {
            if self.used[x] {
                continue;
            }
            if let Some(cap) = self.instance.pn.incident_capacity(x) {
                if self.incident[u] > cap {
                    continue;
                }
            }
            let bound: u64 = self.back[u]
                .iter()
                .map(|be| be.demand * self.ap.distance(self.map[be.from], x))
                .sum();
            if self.beaten(partial + bound) {
                continue;
            }
            self.used[x] = true;
            self.map[u] = x;
            self.route_of[u].clear();
            self.route(u, 0, partial)?;
            self.used[x] = false;
            if self.done() {
                break;
            }
        }
        Ok(())
    }

    fn route(&mut self, u: NodeId, k: usize, partial: u64) -> Result<()> {
        if k == self.back[u].len() {
            if self.residual_ok(u) && self.hosts_remain(u) {
                self.place(u + 1, partial)?;
            }
            return Ok(());
        }
        let (a, b, demand) = {
            let be = &self.back[u][k];
            (self.map[be.from], self.map[u], be.demand)
        };
        let pn = &self.instance.pn;
        let candidates: Vec<Vec<NodeId>> = if demand == 0 {
            vec![self.ap.path(a, b)]
        } else {
            let load = &self.load;
            let mut c = simple_paths_filtered(pn, a, b, self.budget, |e| {
                pn.edge(e).capacity.admits(load[e] + demand)
            })?;
            c.sort_by_cached_key(|p| pn.path_cost(p).expect("path"));
            c
        };
        for path in candidates {
            let cost = partial + demand * pn.path_cost(&path).expect("path");
            if self.beaten(cost) {
                // candidates are sorted by cost
                break;
            }
            let edges: Vec<usize> = path
                .windows(2)
                .map(|w| pn.edge_between(w[0], w[1]).expect("path"))
                .collect();
            for &e in &edges {
                self.load[e] += demand;
            }
            self.paths.push(path);
            self.route_of[u].push(self.paths.len() - 1);
            self.route(u, k + 1, cost)?;
            self.route_of[u].pop();
            self.paths.pop();
            for &e in &edges {
                self.load[e] -= demand;
            }
            if self.done() {
                break;
            }
        }
        Ok(())
    }
}

/// Exact search over bijections and path choices that respects capacities.
///
/// For the capacity-only variant the first feasible embedding is returned as
/// `Feasible`; otherwise the cheapest feasible embedding is `Optimal`.
pub fn oracle_wcvne(instance: &Instance, config: &OracleConfig) -> Result<SolveResult> {
    let n = instance.n();
    check_budget(n, config.max_n_wcvne, "wcvne")?;
    let vn = &instance.vn;
    let back = (0..n)
        .map(|u| {
            vn.neighbors(u)
                .iter()
                .filter(|&&(w, _)| w < u)
                .map(|&(w, e)| BackEdge {
                    from: w,
                    demand: vn.edge(e).demand,
                })
                .collect()
        })
        .collect();
    let mut search = WcvneSearch {
        instance,
        ap: all_pairs_cheapest_paths(&instance.pn),
        budget: config.path_budget,
        first_feasible: instance.variant == Variant::Cvne,
        before: symmetry_constraints(vn, true),
        back,
        incident: (0..n).map(|u| vn.incident_demand(u)).collect(),
        map: vec![0; n],
        used: vec![false; n],
        load: vec![0; instance.pn.edge_count()],
        paths: Vec::new(),
        route_of: vec![Vec::new(); n],
        best: None,
    };
    search.place(0, 0)?;
    Ok(match search.best {
        None => SolveResult::Infeasible,
        Some((cost, witness)) if instance.variant == Variant::Cvne => {
            SolveResult::Feasible(Solution { cost, witness })
        }
        Some((cost, witness)) => SolveResult::Optimal(Solution { cost, witness }),
    })
}

/// The oracle matching the instance variant.
pub fn solve_exact(instance: &Instance, config: &OracleConfig) -> Result<SolveResult> {
    match instance.variant {
        Variant::Wvne => oracle_wvne(instance, config),
        Variant::Cvne | Variant::Wcvne => oracle_wcvne(instance, config),
    }
}

/// Whether `result` is feasible with cost at most theta.
pub fn decide_theta(instance: &Instance, result: &SolveResult) -> Result<bool> {
    let theta = instance
        .theta
        .ok_or_else(|| VneError::MissingTheta("instance has no cost bound".into()))?;
    Ok(result.cost().is_some_and(|c| c <= theta))
}

/// Answer to the decision question of the instance's variant.
///
/// Capacity-only instances are decided by feasibility alone; the others
/// compare the cost with theta.
pub fn decide(instance: &Instance, result: &SolveResult) -> Result<bool> {
    match instance.variant {
        Variant::Cvne => Ok(result.is_feasible()),
        _ => decide_theta(instance, result),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{check_capacities, edge_loads, embedding_cost, PhysicalNetwork};

    fn line_pn(n: usize, cap: Capacity) -> PhysicalNetwork {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i, 1, cap)).collect();
        PhysicalNetwork::from_tuples(n, &e).unwrap()
    }

    fn star3() -> PhysicalNetwork {
        PhysicalNetwork::from_tuples(
            4,
            &[
                (0, 1, 1, Capacity::Unbounded),
                (0, 2, 1, Capacity::Unbounded),
                (0, 3, 1, Capacity::Unbounded),
            ],
        )
        .unwrap()
    }

    fn pp(a: &[u64]) -> Instance {
        let half = a.iter().sum::<u64>() / 2;
        let edges: Vec<_> = a.iter().enumerate().map(|(i, &w)| (0, i + 1, w)).collect();
        let vn = VirtualNetwork::from_tuples(a.len() + 1, &edges).unwrap();
        Instance::new(
            Variant::Cvne,
            None,
            vn,
            line_pn(a.len() + 1, Capacity::Finite(half)),
        )
        .unwrap()
    }

    #[test]
    fn line_on_path_costs_n_minus_one() {
        for n in 1..=6 {
            let inst = Instance::new(
                Variant::Wvne,
                None,
                VirtualNetwork::uniform_line(n).unwrap(),
                line_pn(n, Capacity::Unbounded),
            )
            .unwrap();
            let res = oracle_wvne(&inst, &OracleConfig::default()).unwrap();
            assert_eq!(res.cost(), Some(n as u64 - 1));
            assert_eq!(res.witness().unwrap().node_map, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn line_on_star_costs_four() {
        let inst = Instance::new(
            Variant::Wvne,
            None,
            VirtualNetwork::uniform_line(4).unwrap(),
            star3(),
        )
        .unwrap();
        let res = oracle_wvne(&inst, &OracleConfig::default()).unwrap();
        assert_eq!(res.cost(), Some(4));
        assert_eq!(embedding_cost(&inst, res.witness().unwrap()).unwrap(), 4);
        let res =
            oracle_wcvne(&inst.with_variant(Variant::Wcvne), &OracleConfig::default()).unwrap();
        assert_eq!(res.cost(), Some(4));
    }

    #[test]
    fn zero_capacities_are_infeasible() {
        let inst = Instance::new(
            Variant::Cvne,
            None,
            VirtualNetwork::uniform_line(3).unwrap(),
            line_pn(3, Capacity::Finite(0)),
        )
        .unwrap();
        assert_eq!(
            oracle_wcvne(&inst, &OracleConfig::default()).unwrap(),
            SolveResult::Infeasible
        );
    }

    #[test]
    fn partition_gadget_outcomes() {
        let cfg = OracleConfig::default();
        let inst = pp(&[5, 3, 2]);
        let res = oracle_wcvne(&inst, &cfg).unwrap();
        assert_eq!(res.status(), crate::solvers::Status::Feasible);
        assert!(check_capacities(&inst, res.witness().unwrap()).unwrap());
        // any balanced split saturates both edges next to the center
        let loads = edge_loads(&inst, res.witness().unwrap()).unwrap();
        assert_eq!(loads.iter().filter(|&&l| l == 5).count(), 2);

        assert!(oracle_wcvne(&pp(&[5, 4, 1]), &cfg).unwrap().is_feasible());
        assert!(!oracle_wcvne(&pp(&[4, 4, 2]), &cfg).unwrap().is_feasible());
        assert!(!oracle_wcvne(&pp(&[4, 1, 1]), &cfg).unwrap().is_feasible());
    }

    #[test]
    fn budgets_are_enforced() {
        let inst = Instance::new(
            Variant::Wcvne,
            None,
            VirtualNetwork::uniform_line(7).unwrap(),
            line_pn(7, Capacity::Unbounded),
        )
        .unwrap();
        let err = oracle_wcvne(&inst, &OracleConfig::default()).unwrap_err();
        assert!(matches!(err, VneError::BudgetExceeded(_)));
        let tight = OracleConfig {
            path_budget: 0,
            ..OracleConfig::default()
        };
        let inst = Instance::new(
            Variant::Wcvne,
            None,
            VirtualNetwork::uniform_line(3).unwrap(),
            line_pn(3, Capacity::Unbounded),
        )
        .unwrap();
        assert!(oracle_wcvne(&inst, &tight).is_err());
    }

    #[test]
    fn theta_decisions() {
        let mut inst = Instance::new(
            Variant::Wvne,
            None,
            VirtualNetwork::uniform_line(2).unwrap(),
            line_pn(2, Capacity::Unbounded),
        )
        .unwrap();
        let five = SolveResult::Optimal(Solution {
            cost: 5,
            witness: Embedding::new(vec![0, 1]),
        });
        assert!(decide_theta(&inst, &five).is_err());
        inst.theta = Some(5);
        assert!(decide_theta(&inst, &five).unwrap());
        inst.theta = Some(4);
        assert!(!decide_theta(&inst, &five).unwrap());
        assert!(!decide_theta(&inst, &SolveResult::Infeasible).unwrap());
    }

    #[test]
    fn twin_pruning_keeps_lexicographic_minimum() {
        // star with equal leaves: every leaf is a twin of the others
        let vn = VirtualNetwork::from_tuples(4, &[(3, 0, 1), (3, 1, 1), (3, 2, 1)]).unwrap();
        let inst = Instance::new(Variant::Wvne, None, vn, line_pn(4, Capacity::Unbounded)).unwrap();
        let res = oracle_wvne(&inst, &OracleConfig::default()).unwrap();
        assert_eq!(res.cost(), Some(4));
        assert_eq!(res.witness().unwrap().node_map, vec![0, 1, 3, 2]);
    }
}
