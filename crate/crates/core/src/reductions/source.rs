//! Source problems of the reductions, their certificates, an independent
//! checker and exhaustive deciders.

use serde::{Deserialize, Serialize};

use crate::error::{Result, VneError};

/// Hamiltonian path question on an undirected graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamSource {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Bin packing: can `A` be split into `K` bins of capacity `B`?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BppSource {
    #[serde(rename = "A")]
    pub a: Vec<u64>,
    #[serde(rename = "B")]
    pub b: u64,
    #[serde(rename = "K")]
    pub k: u64,
}

/// Partition into two halves of equal sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PpSource {
    #[serde(rename = "A")]
    pub a: Vec<u64>,
}

/// Partition of `3m` numbers into `m` triples of equal sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThreePpSource {
    #[serde(rename = "A")]
    pub a: Vec<u64>,
}

/// Three-dimensional matching over `X = Y = Z = {0..q}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThreeDmSource {
    pub q: usize,
    pub triplets: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SourceProblem {
    #[serde(rename = "ham")]
    Ham(HamSource),
    #[serde(rename = "bpp")]
    Bpp(BppSource),
    #[serde(rename = "pp")]
    Pp(PpSource),
    #[serde(rename = "3pp")]
    ThreePp(ThreePpSource),
    #[serde(rename = "3dm")]
    ThreeDm(ThreeDmSource),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// Vertices in path order.
    HamPath { order: Vec<usize> },
    /// Item indices per bin.
    Bins { bins: Vec<Vec<usize>> },
    /// Item indices of each half.
    Halves { left: Vec<usize>, right: Vec<usize> },
    /// Item indices of each triple.
    Triples { triples: Vec<Vec<usize>> },
    /// Indices of the chosen triplets.
    Matching { triplets: Vec<usize> },
}

fn invalid(msg: impl Into<String>) -> VneError {
    VneError::InvalidSource(msg.into())
}

fn malformed(msg: impl Into<String>) -> VneError {
    VneError::MalformedCertificate(msg.into())
}

fn positive(a: &[u64]) -> Result<()> {
    if let Some(i) = a.iter().position(|&x| x == 0) {
        return Err(invalid(format!("A[{i}] must be positive")));
    }
    Ok(())
}

impl HamSource {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(invalid("graph needs at least one vertex"));
        }
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &self.edges {
            if u >= self.n || v >= self.n || u == v {
                return Err(invalid(format!("bad edge ({u}, {v})")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(invalid(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(())
    }

    fn adjacency(&self) -> Vec<u32> {
        let mut adj = vec![0u32; self.n];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }
}

impl BppSource {
    pub fn validate(&self) -> Result<()> {
        positive(&self.a)?;
        if self.b == 0 || self.k == 0 {
            return Err(invalid("B and K must be positive"));
        }
        let total: u64 = self.a.iter().sum();
        if total > self.b * self.k {
            return Err(invalid(format!(
                "sum of A is {total}, more than B*K = {}",
                self.b * self.k
            )));
        }
        Ok(())
    }
}

impl PpSource {
    pub fn validate(&self) -> Result<()> {
        positive(&self.a)?;
        if self.a.iter().sum::<u64>() % 2 != 0 {
            return Err(invalid("sum of A must be even"));
        }
        Ok(())
    }

    pub fn half(&self) -> u64 {
        self.a.iter().sum::<u64>() / 2
    }
}

impl ThreePpSource {
    pub fn validate(&self) -> Result<()> {
        positive(&self.a)?;
        if self.a.is_empty() || !self.a.len().is_multiple_of(3) {
            return Err(invalid("|A| must be a positive multiple of 3"));
        }
        let m = self.m() as u64;
        if self.a.iter().sum::<u64>() % m != 0 {
            return Err(invalid("sum of A must be divisible by m = |A| / 3"));
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.a.len() / 3
    }

    pub fn target(&self) -> u64 {
        self.a.iter().sum::<u64>() / self.m() as u64
    }
}

impl ThreeDmSource {
    pub fn validate(&self) -> Result<()> {
        if self.q == 0 {
            return Err(invalid("q must be positive"));
        }
        for (i, t) in self.triplets.iter().enumerate() {
            if t.iter().any(|&c| c >= self.q) {
                return Err(invalid(format!(
                    "triplet {i} has a coordinate outside [0, {})",
                    self.q
                )));
            }
            if self.triplets[..i].contains(t) {
                return Err(invalid(format!("triplet {i} is a duplicate")));
            }
        }
        Ok(())
    }

    /// Flat vertex index: `x`, `q + y`, `2q + z`.
    pub fn vertices(&self, t: usize) -> [usize; 3] {
        let [x, y, z] = self.triplets[t];
        [x, self.q + y, 2 * self.q + z]
    }

    /// Number of triplets containing each flat vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; 3 * self.q];
        for t in 0..self.triplets.len() {
            for u in self.vertices(t) {
                d[u] += 1;
            }
        }
        d
    }
}

impl SourceProblem {
    pub fn kind(&self) -> &'static str {
        match self {
            SourceProblem::Ham(_) => "ham",
            SourceProblem::Bpp(_) => "bpp",
            SourceProblem::Pp(_) => "pp",
            SourceProblem::ThreePp(_) => "3pp",
            SourceProblem::ThreeDm(_) => "3dm",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SourceProblem::Ham(s) => s.validate(),
            SourceProblem::Bpp(s) => s.validate(),
            SourceProblem::Pp(s) => s.validate(),
            SourceProblem::ThreePp(s) => s.validate(),
            SourceProblem::ThreeDm(s) => s.validate(),
        }
    }
}

/// Each index in `0..n` appears exactly once across `groups`.
fn is_partition<'a>(n: usize, groups: impl IntoIterator<Item = &'a Vec<usize>>) -> Result<bool> {
    let mut seen = vec![false; n];
    for g in groups {
        for &i in g {
            if i >= n {
                return Err(malformed(format!("index {i} out of range [0, {n})")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Ok(false);
            }
        }
    }
    Ok(seen.into_iter().all(|s| s))
}

fn sum_of(a: &[u64], idx: &[usize]) -> u64 {
    idx.iter().map(|&i| a[i]).sum()
}

/// Checks a certificate against its source problem.
pub fn verify_source(source: &SourceProblem, cert: &Certificate) -> Result<bool> {
    match (source, cert) {
        (SourceProblem::Ham(s), Certificate::HamPath { order }) => {
            if order.iter().any(|&v| v >= s.n) {
                return Err(malformed("path vertex out of range"));
            }
            let adj = s.adjacency();
            Ok(is_partition(s.n, [order])? && order.windows(2).all(|w| adj[w[0]] >> w[1] & 1 == 1))
        }
        (SourceProblem::Bpp(s), Certificate::Bins { bins }) => Ok(bins.len() as u64 <= s.k
            && is_partition(s.a.len(), bins)?
            && bins.iter().all(|b| sum_of(&s.a, b) <= s.b)),
        (SourceProblem::Pp(s), Certificate::Halves { left, right }) => Ok(is_partition(
            s.a.len(),
            [left, right],
        )? && sum_of(&s.a, left)
            == sum_of(&s.a, right)),
        (SourceProblem::ThreePp(s), Certificate::Triples { triples }) => {
            if s.a.is_empty() || s.a.len() % 3 != 0 {
                return Ok(false);
            }
            let t = s.target();
            Ok(triples.len() == s.m()
                && is_partition(s.a.len(), triples)?
                && triples.iter().all(|g| g.len() == 3 && sum_of(&s.a, g) == t))
        }
        (SourceProblem::ThreeDm(s), Certificate::Matching { triplets }) => {
            if triplets.iter().any(|&t| t >= s.triplets.len()) {
                return Err(malformed("triplet index out of range"));
            }
            let mut used = vec![false; 3 * s.q];
            for &t in triplets {
                for u in s.vertices(t) {
                    if std::mem::replace(&mut used[u], true) {
                        return Ok(false);
                    }
                }
            }
            Ok(triplets.len() == s.q)
        }
        _ => Err(malformed(format!(
            "certificate does not fit a {} source",
            source.kind()
        ))),
    }
}

pub const MAX_HAM_N: usize = 16;
pub const MAX_ITEMS: usize = 16;
pub const MAX_3DM_Q: usize = 6;

fn too_big(what: &str, limit: usize) -> VneError {
    VneError::BudgetExceeded(format!(
        "{what} exceeds the exhaustive search limit of {limit}"
    ))
}

fn ham_path(s: &HamSource) -> Option<Vec<usize>> {
    let n = s.n;
    let adj = s.adjacency();
    let full = (1usize << n) - 1;
    // reach[mask][v]: some path visits exactly `mask` and ends at v
    let mut reach = vec![0u32; 1 << n];
    for v in 0..n {
        reach[1 << v] |= 1 << v;
    }
    for mask in 1..=full {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        for v in 0..n {
            if ends >> v & 1 == 0 {
                continue;
            }
            let mut next = adj[v] & !(mask as u32);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                reach[mask | 1 << w] |= 1 << w;
            }
        }
    }
    let mut end = (0..n).find(|&v| reach[full] >> v & 1 == 1)?;
    let mut mask = full;
    let mut order = vec![end];
    while mask.count_ones() > 1 {
        let prev_mask = mask & !(1 << end);
        let prev = (0..n)
            .find(|&u| reach[prev_mask] >> u & 1 == 1 && adj[u] >> end & 1 == 1)
            .expect("predecessor exists");
        order.push(prev);
        mask = prev_mask;
        end = prev;
    }
    order.reverse();
    Some(order)
}

fn pack(
    a: &[u64],
    order: &[usize],
    pos: usize,
    cap: u64,
    loads: &mut Vec<u64>,
    bins: &mut Vec<Vec<usize>>,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let item = order[pos];
    for j in 0..loads.len() {
        if loads[j] + a[item] > cap || loads[..j].contains(&loads[j]) {
            continue;
        }
        loads[j] += a[item];
        bins[j].push(item);
        if pack(a, order, pos + 1, cap, loads, bins) {
            return true;
        }
        bins[j].pop();
        loads[j] -= a[item];
    }
    false
}

fn triples(a: &[u64], target: u64, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) -> bool {
    let Some(i) = used.iter().position(|&u| !u) else {
        return true;
    };
    used[i] = true;
    for j in i + 1..a.len() {
        if used[j] {
            continue;
        }
        for k in j + 1..a.len() {
            if used[k] || a[i] + a[j] + a[k] != target {
                continue;
            }
            used[j] = true;
            used[k] = true;
            out.push(vec![i, j, k]);
            if triples(a, target, used, out) {
                return true;
            }
            out.pop();
            used[j] = false;
            used[k] = false;
        }
    }
    used[i] = false;
    false
}

fn matching(s: &ThreeDmSource, x: usize, used: &mut Vec<bool>, out: &mut Vec<usize>) -> bool {
    if x == s.q {
        return true;
    }
    for t in 0..s.triplets.len() {
        if s.triplets[t][0] != x {
            continue;
        }
        let vs = s.vertices(t);
        if vs.iter().any(|&u| used[u]) {
            continue;
        }
        for &u in &vs {
            used[u] = true;
        }
        out.push(t);
        if matching(s, x + 1, used, out) {
            return true;
        }
        out.pop();
        for &u in &vs {
            used[u] = false;
        }
    }
    false
}

/// Exact decision by exhaustive search; `Some` carries a certificate.
pub fn brute_force_source(source: &SourceProblem) -> Result<Option<Certificate>> {
    source.validate()?;
    Ok(match source {
        SourceProblem::Ham(s) => {
            if s.n > MAX_HAM_N {
                return Err(too_big("HAM vertex count", MAX_HAM_N));
            }
            ham_path(s).map(|order| Certificate::HamPath { order })
        }
        SourceProblem::Bpp(s) => {
            if s.a.len() > MAX_ITEMS {
                return Err(too_big("item count", MAX_ITEMS));
            }
            let mut order: Vec<usize> = (0..s.a.len()).collect();
            order.sort_by_key(|&i| std::cmp::Reverse(s.a[i]));
            let k = (s.k as usize).min(s.a.len().max(1));
            let mut loads = vec![0; k];
            let mut bins = vec![Vec::new(); k];
            if pack(&s.a, &order, 0, s.b, &mut loads, &mut bins) {
                for b in &mut bins {
                    b.sort_unstable();
                }
                Some(Certificate::Bins { bins })
            } else {
                None
            }
        }
        SourceProblem::Pp(s) => {
            if s.a.len() > MAX_ITEMS {
                return Err(too_big("item count", MAX_ITEMS));
            }
            let n = s.a.len();
            (0u32..1 << n)
                .find(|mask| {
                    (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| s.a[i])
                        .sum::<u64>()
                        == s.half()
                })
                .map(|mask| {
                    let (left, right) = (0..n).partition(|i| mask >> i & 1 == 1);
                    Certificate::Halves { left, right }
                })
        }
        SourceProblem::ThreePp(s) => {
            if s.a.len() > MAX_ITEMS {
                return Err(too_big("item count", MAX_ITEMS));
            }
            let mut out = Vec::new();
            triples(&s.a, s.target(), &mut vec![false; s.a.len()], &mut out)
                .then_some(Certificate::Triples { triples: out })
        }
        SourceProblem::ThreeDm(s) => {
            if s.q > MAX_3DM_Q {
                return Err(too_big("3DM q", MAX_3DM_Q));
            }
            let mut out = Vec::new();
            matching(s, 0, &mut vec![false; 3 * s.q], &mut out).then(|| {
                out.sort_unstable();
                Certificate::Matching { triplets: out }
            })
        }
    })
}
