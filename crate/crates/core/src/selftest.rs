//! Self-check suites: polynomial solvers against the oracle, and reduction
//! round trips against exhaustive source deciders.
//!
//! Every suite is seeded and deterministic. The CLI `selftest` command and
//! the acceptance tests both run these.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dispatch::SolverKind;
use crate::generate;
use crate::model::{
    check_capacities, edge_loads, embedding_cost, validate_embedding, Instance, Network, Variant,
};
use crate::oracle::{decide, solve_exact, OracleConfig};
use crate::paths::tree_path;
use crate::reductions::{
    brute_force_source, build_witness, extract_certificate, reduce, transform_wvne0_to_cvne,
    verify_source, Artifact, BppSource, HamSource, PpSource, ReduceOptions, Reduction,
    SourceProblem, ThreeDmSource, ThreePpSource,
};
use crate::solvers::SolveResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Budget {
    Small,
    Full,
}

impl std::str::FromStr for Budget {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "small" => Ok(Budget::Small),
            "full" => Ok(Budget::Full),
            other => Err(format!("unknown budget {other:?} (expected small or full)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub budget: Budget,
    pub seed: u64,
    pub oracle: OracleConfig,
    /// Added to every artifact theta before deciding. Nonzero values corrupt
    /// the gadgets on purpose, as a negative control.
    pub theta_shift: i64,
}

impl Options {
    pub fn new(budget: Budget) -> Self {
        Options {
            budget,
            seed: 0x5eed,
            oracle: OracleConfig::default(),
            theta_shift: 0,
        }
    }

    fn full(&self) -> bool {
        self.budget == Budget::Full
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    /// Cases beyond the oracle budget, not counted in `cases`.
    pub skipped: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    fn new(name: impl Into<String>) -> Self {
        SuiteReport {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, outcome: std::result::Result<(), String>) {
        self.cases += 1;
        if let Err(msg) = outcome {
            self.failures.push(msg);
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "{:<32} {} cases={} skipped={} failures={} ({:.1}s)",
            self.name,
            if self.passed() { "PASS" } else { "FAIL" },
            self.cases,
            self.skipped,
            self.failures.len(),
            self.elapsed.as_secs_f64()
        )
    }
}

fn timed(name: &str, body: impl FnOnce(&mut SuiteReport)) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new(name);
    body(&mut report);
    report.elapsed = start.elapsed();
    report
}

fn rng(opts: &Options, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Solver result against oracle result on the same instance.
fn agree(
    inst: &Instance,
    solver: &SolveResult,
    oracle: &SolveResult,
) -> std::result::Result<(), String> {
    if solver.is_feasible() != oracle.is_feasible() {
        return Err(format!(
            "feasibility: solver {} oracle {}",
            solver.status().as_str(),
            oracle.status().as_str()
        ));
    }
    let Some(sol) = solver.solution() else {
        return Ok(());
    };
    validate_embedding(inst, &sol.witness)
        .into_result()
        .map_err(err)?;
    let cost = embedding_cost(inst, &sol.witness).map_err(err)?;
    if cost != sol.cost {
        return Err(format!("witness costs {cost}, reported {}", sol.cost));
    }
    if inst.variant.respects_capacities() && !check_capacities(inst, &sol.witness).map_err(err)? {
        return Err("witness overloads an edge".into());
    }
    if inst.variant.minimizes_cost() && oracle.cost() != Some(sol.cost) {
        return Err(format!(
            "cost: solver {} oracle {:?}",
            sol.cost,
            oracle.cost()
        ));
    }
    Ok(())
}

fn check_solver(
    inst: &Instance,
    kind: SolverKind,
    opts: &Options,
    extra: impl FnOnce(&SolveResult) -> std::result::Result<(), String>,
) -> std::result::Result<(), String> {
    let solver = kind.run(inst).map_err(err)?;
    let oracle = solve_exact(inst, &opts.oracle.allowing(inst.n())).map_err(err)?;
    agree(inst, &solver, &oracle)?;
    extra(&solver)
}

/// Star VN, connected PN, cost only.
pub fn star_vn_suite(opts: &Options) -> SuiteReport {
    timed("star-vn vs oracle", |rep| {
        let mut rng = rng(opts, 1);
        let (count, max_n) = if opts.full() { (500, 7) } else { (100, 6) };
        for _ in 0..count {
            let n = rng.gen_range(3..=max_n);
            let vn = generate::random_star_vn(&mut rng, n, 0..=5);
            let extra = rng.gen_range(0.0..0.6);
            let pn = generate::random_connected_pn(&mut rng, n, 0..=5, None, extra);
            let inst = generate::instance(Variant::Wvne, vn, pn);
            rep.record(check_solver(&inst, SolverKind::StarVn, opts, |_| Ok(())));
        }
    })
}

/// Connected VN, capacitated star PN.
pub fn star_pn_suite(opts: &Options) -> SuiteReport {
    timed("star-pn vs oracle", |rep| {
        let mut rng = rng(opts, 2);
        let count = if opts.full() { 500 } else { 100 };
        for _ in 0..count {
            let n = rng.gen_range(3..=6);
            let extra = rng.gen_range(0.0..0.5);
            let vn = generate::random_connected_vn(&mut rng, n, 0..=5, extra);
            let pn = generate::random_star_pn(&mut rng, n, 0..=5, Some(0..=12));
            let inst = generate::instance(Variant::Wcvne, vn, pn);
            rep.record(check_solver(&inst, SolverKind::StarPn, opts, |_| Ok(())));
        }
    })
}

/// Every tree edge is crossed once if it lies between the images of the
/// line's ends and twice otherwise.
fn once_twice(inst: &Instance, res: &SolveResult) -> std::result::Result<(), String> {
    let Some(w) = res.witness() else {
        return Ok(());
    };
    let ends: Vec<_> = (0..inst.n()).filter(|&v| inst.vn.degree(v) <= 1).collect();
    let between = tree_path(
        &inst.pn,
        w.node_map[ends[0]],
        w.node_map[*ends.last().expect("line has ends")],
    )
    .ok_or("physical network is not a tree")?;
    let loads = edge_loads(inst, w).map_err(err)?;
    for (idx, e) in inst.pn.edges().iter().enumerate() {
        let on_path = between
            .windows(2)
            .any(|p| (p[0].min(p[1]), p[0].max(p[1])) == (e.u.min(e.v), e.u.max(e.v)));
        let want = if on_path { 1 } else { 2 };
        if loads[idx] != want {
            return Err(format!(
                "edge {}-{} crossed {} times, expected {want}",
                e.u, e.v, loads[idx]
            ));
        }
    }
    Ok(())
}

/// Uniform line VN, capacitated tree PN.
pub fn line_tree_suite(opts: &Options) -> SuiteReport {
    timed("line-tree vs oracle", |rep| {
        let mut rng = rng(opts, 3);
        let count = if opts.full() { 500 } else { 100 };
        for _ in 0..count {
            let n = rng.gen_range(3..=6);
            let vn = generate::random_uniform_line_vn(&mut rng, n);
            let pn = generate::random_tree_pn(&mut rng, n, 0..=5, Some(0..=3));
            let inst = generate::instance(Variant::Wcvne, vn, pn);
            rep.record(check_solver(&inst, SolverKind::LineTree, opts, |res| {
                once_twice(&inst, res)
            }));
        }
    })
}

/// Oversubscribed 2-star VN, capacitated tree PN.
pub fn oversub_tree_suite(opts: &Options) -> SuiteReport {
    timed("oversub-tree vs oracle", |rep| {
        let mut rng = rng(opts, 4);
        let count = if opts.full() { 300 } else { 60 };
        let shapes: Vec<(usize, usize)> = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)].to_vec();
        for _ in 0..count {
            let (g, s) = shapes[rng.gen_range(0..shapes.len())];
            let divisors: Vec<usize> = (1..=s).filter(|o| s % o == 0).collect();
            let o = divisors[rng.gen_range(0..divisors.len())];
            let vn = generate::oversub_vn(&mut rng, g, s, o);
            let n = vn.node_count();
            let caps = if rng.gen_bool(0.5) {
                Some(0..=2 * s as u64)
            } else {
                None
            };
            let pn = generate::random_tree_pn(&mut rng, n, 0..=5, caps);
            let inst = generate::instance(Variant::Wcvne, vn, pn);
            rep.record(check_solver(&inst, SolverKind::OversubTree, opts, |_| {
                Ok(())
            }));
        }
    })
}

/// All labelled graphs on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = HamSource> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| HamSource {
        n,
        edges: (0..pairs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect(),
    })
}

pub fn is_connected(g: &HamSource) -> bool {
    let mut seen = vec![false; g.n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in &g.edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Oracle cost of the HAM artifact is `n - 1` exactly when a Hamiltonian
/// path exists, over all connected graphs.
pub fn ham_suite(opts: &Options) -> SuiteReport {
    timed("ham spot checks", |rep| {
        let max_n = if opts.full() { 6 } else { 5 };
        for n in 1..=max_n {
            for g in all_graphs(n).filter(is_connected) {
                rep.record(ham_case(&g, opts));
            }
        }
    })
}

fn ham_case(g: &HamSource, opts: &Options) -> std::result::Result<(), String> {
    let src = SourceProblem::Ham(g.clone());
    let has_path = brute_force_source(&src).map_err(err)?.is_some();
    let art = crate::reductions::reduce_ham(g).map_err(err)?;
    let res = solve_exact(&art.instance, &opts.oracle.allowing(g.n)).map_err(err)?;
    let cost = res
        .cost()
        .ok_or("uncapacitated instance reported infeasible")?;
    if (cost == g.n as u64 - 1) != has_path {
        return Err(format!(
            "{g:?}: oracle cost {cost}, hamiltonian path {has_path}"
        ));
    }
    Ok(())
}

/// Nonincreasing sequences of positive integers with sum at most `max_sum`.
pub fn multisets(max_sum: u64, max_len: usize) -> Vec<Vec<u64>> {
    fn go(rest: u64, cap: u64, max_len: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for x in (1..=cap.min(rest)).rev() {
            cur.push(x);
            go(rest - x, x, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_sum, max_sum, max_len, &mut Vec::new(), &mut out);
    out
}

/// Nonincreasing sequences of exactly `len` positive integers summing to `sum`.
fn compositions(sum: u64, len: usize) -> Vec<Vec<u64>> {
    multisets(sum, len)
        .into_iter()
        .filter(|a| a.len() == len && a.iter().sum::<u64>() == sum)
        .collect()
}

/// Triplet sets over `q = 3` of the given size, one per orbit under
/// relabelling each coordinate.
pub fn triplet_sets(size: usize) -> Vec<Vec<[usize; 3]>> {
    let all: Vec<[usize; 3]> = (0..27).map(|i| [i / 9, i / 3 % 3, i % 3]).collect();
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..size).collect();
    if size > all.len() || size == 0 {
        return out;
    }
    loop {
        let set: Vec<[usize; 3]> = idx.iter().map(|&i| all[i]).collect();
        let minimal = perms.iter().all(|px| {
            perms.iter().all(|py| {
                perms.iter().all(|pz| {
                    let mut image: Vec<[usize; 3]> =
                        set.iter().map(|t| [px[t[0]], py[t[1]], pz[t[2]]]).collect();
                    image.sort_unstable();
                    image >= set
                })
            })
        });
        if minimal {
            out.push(set);
        }
        // next combination
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < all.len() - size + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Size caps for the round-trip sources.
struct RoundTripLimits {
    bpp_sum: u64,
    max_n: usize,
    ham_n: usize,
    tpp_targets: Vec<u64>,
    dm_sizes: Vec<usize>,
    dm_max_n: usize,
}

fn limits(opts: &Options) -> RoundTripLimits {
    if opts.full() {
        RoundTripLimits {
            bpp_sum: 8,
            max_n: 9,
            ham_n: 6,
            tpp_targets: vec![3, 4, 5],
            dm_sizes: vec![3, 4, 5, 6],
            dm_max_n: 29,
        }
    } else {
        RoundTripLimits {
            bpp_sum: 6,
            max_n: 8,
            ham_n: 5,
            tpp_targets: vec![3, 4],
            dm_sizes: vec![3, 4],
            dm_max_n: 21,
        }
    }
}

/// Sources for one reduction, before size filtering.
fn sources(reduction: Reduction, lim: &RoundTripLimits) -> Vec<SourceProblem> {
    match reduction.source_kind() {
        "ham" => (1..=lim.ham_n)
            .flat_map(all_graphs)
            .map(SourceProblem::Ham)
            .collect(),
        "bpp" => {
            let mut out = Vec::new();
            for a in multisets(lim.bpp_sum, lim.bpp_sum as usize) {
                let sum: u64 = a.iter().sum();
                for b in 1..=sum {
                    for k in 1..=sum {
                        if sum <= b * k && (b * k) as usize <= lim.max_n {
                            out.push(SourceProblem::Bpp(BppSource { a: a.clone(), b, k }));
                        }
                    }
                }
            }
            out
        }
        "pp" => multisets(lim.bpp_sum, lim.max_n - 1)
            .into_iter()
            .filter(|a| a.iter().sum::<u64>() % 2 == 0)
            .map(|a| SourceProblem::Pp(PpSource { a }))
            .collect(),
        // no 3-partition source with m >= 4 has sum at most 8, so targets
        // T = 3, 4, 5 with m = 4 are used instead
        "3pp" => lim
            .tpp_targets
            .iter()
            .flat_map(|&t| compositions(4 * t, 12))
            .map(|a| SourceProblem::ThreePp(ThreePpSource { a }))
            .collect(),
        _ => lim
            .dm_sizes
            .iter()
            .flat_map(|&size| triplet_sets(size))
            .map(|triplets| SourceProblem::ThreeDm(ThreeDmSource { q: 3, triplets }))
            .collect(),
    }
}

fn node_cap(art: &Artifact, lim: &RoundTripLimits) -> usize {
    match art.reduction {
        Reduction::ThreeDmOversub2Star => lim.dm_max_n,
        Reduction::ThreePpStarOn2Star => 13,
        Reduction::Bpp2StarOnUniform2Star | Reduction::BppLineOnUniformTree => lim.max_n.max(10),
        _ => lim.max_n,
    }
}

/// One source through one gadget: oracle verdict against the source
/// verdict, certificate extraction, and the constructive witness.
fn round_trip(
    art: &Artifact,
    expected: &Option<crate::reductions::Certificate>,
    opts: &Options,
) -> std::result::Result<(), String> {
    let mut inst = art.instance.clone();
    if let Some(t) = inst.theta {
        inst.theta = Some(t.saturating_add_signed(opts.theta_shift));
    }
    let res = solve_exact(&inst, &opts.oracle.allowing(inst.n())).map_err(err)?;
    let got = decide(&inst, &res).map_err(err)?;
    let tag = || {
        format!(
            "{} {}",
            art.reduction,
            serde_json::to_string(&art.source).unwrap_or_default()
        )
    };
    if got != expected.is_some() {
        return Err(format!(
            "{}: oracle says {got}, source says {}",
            tag(),
            expected.is_some()
        ));
    }
    if let Some(cert) = expected {
        let w = res.witness().ok_or("yes instance without witness")?;
        let art = Artifact {
            instance: inst.clone(),
            ..art.clone()
        };
        let back = extract_certificate(&art, w).map_err(|e| format!("{}: {e}", tag()))?;
        if !verify_source(&art.source, &back).map_err(err)? {
            return Err(format!(
                "{}: extracted certificate {back:?} does not verify",
                tag()
            ));
        }
        let built = build_witness(&art, cert).map_err(err)?;
        if !art.criterion_met(&built).map_err(err)? {
            return Err(format!(
                "{}: constructive witness misses the criterion",
                tag()
            ));
        }
    }
    Ok(())
}

/// Round trip of `reduction` (optionally followed by the capacity
/// transform) over every enumerated source within the size caps.
pub fn round_trip_suite(reduction: Reduction, transformed: bool, opts: &Options) -> SuiteReport {
    let name = if transformed {
        format!("round trip {reduction} + capacity transform")
    } else {
        format!("round trip {reduction}")
    };
    timed(&name, |rep| {
        let lim = limits(opts);
        for src in sources(reduction, &lim) {
            let art = match reduce(reduction, &src, ReduceOptions::default()) {
                Ok(a) => a,
                Err(_) => continue, // outside the gadget's preconditions
            };
            let art = if transformed {
                match transform_wvne0_to_cvne(&art) {
                    Ok(a) => a,
                    Err(e) => {
                        rep.record(Err(err(e)));
                        continue;
                    }
                }
            } else {
                art
            };
            if art.instance.n() > node_cap(&art, &lim) {
                rep.skipped += 1;
                continue;
            }
            let outcome = brute_force_source(&src)
                .map_err(err)
                .and_then(|expected| round_trip(&art, &expected, opts));
            rep.record(outcome);
        }
    })
}

/// All eight gadgets plus the capacity transform on the two cost-0 gadgets.
pub fn round_trip_suites(opts: &Options) -> Vec<SuiteReport> {
    let mut out: Vec<_> = Reduction::ALL
        .iter()
        .map(|&r| round_trip_suite(r, false, opts))
        .collect();
    out.push(round_trip_suite(Reduction::BppLineOnLine, true, opts));
    out.push(round_trip_suite(Reduction::Bpp2StarOn2Star, true, opts));
    out
}

pub fn run_all(opts: &Options) -> Vec<SuiteReport> {
    let mut out = vec![
        star_vn_suite(opts),
        star_pn_suite(opts),
        line_tree_suite(opts),
        oversub_tree_suite(opts),
        ham_suite(opts),
    ];
    out.extend(round_trip_suites(opts));
    out
}

/// Convenience for callers that only need a verdict.
pub fn all_passed(reports: &[SuiteReport]) -> bool {
    reports.iter().all(SuiteReport::passed)
}
