//! Ground truth by exhaustive enumeration of small labelled graphs.
//!
//! Membership uses two independent routes: a fast one (series-parallel
//! reduction plus a Menger-type search for `K_{2,3}` subdivisions) and a brute
//! force minor search over branch-set partitions, used to verify the first.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::class::{Family, GraphClass};
use crate::graph::LabelledGraph;

/// Largest size handled by [`enumerate`].
pub const MAX_ORACLE_N: usize = 7;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("n = {0} is above the enumeration limit {MAX_ORACLE_N}")]
    TooLarge(usize),
    #[error("n = 7 takes minutes; pass allow_slow to enable it")]
    SlowSizeNotEnabled,
    #[error("n = {n} is below the minimum size {min} of {class}")]
    TooSmall { class: GraphClass, n: usize, min: usize },
}

/// No `K_4` minor, decided by the reduction: drop vertices of degree at most
/// one, suppress degree-two vertices, merge parallel edges.
pub fn is_series_parallel(g: &LabelledGraph) -> bool {
    let n = g.vertex_count();
    let mut adj: Vec<HashSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| adj[v].len() <= 2).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] || adj[v].len() > 2 {
            continue;
        }
        alive[v] = false;
        let ns: Vec<usize> = adj[v].drain().collect();
        for &u in &ns {
            adj[u].remove(&v);
        }
        if ns.len() == 2 {
            let (a, b) = (ns[0], ns[1]);
            if adj[a].insert(b) {
                adj[b].insert(a);
            }
        }
        for &u in &ns {
            if adj[u].len() <= 2 {
                queue.push_back(u);
            }
        }
    }
    adj.iter().all(HashSet::is_empty)
}

/// Number of internally vertex-disjoint `s`-`t` paths avoiding the edge `st`,
/// capped at `limit`.
fn disjoint_paths(g: &LabelledGraph, s: usize, t: usize, limit: usize) -> usize {
    // Vertex v splits into 2v (in) and 2v+1 (out).
    let n = g.vertex_count();
    let mut head = Vec::new();
    let mut cap = Vec::new();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let mut add = |a: usize, b: usize, c: u8, head: &mut Vec<usize>, cap: &mut Vec<u8>| {
        out[a].push(head.len());
        head.push(b);
        cap.push(c);
        out[b].push(head.len());
        head.push(a);
        cap.push(0);
    };
    for v in 0..n {
        let c = if v == s || v == t { 2 } else { 1 };
        add(2 * v, 2 * v + 1, c, &mut head, &mut cap);
        for &u in g.neighbors(v) {
            if (v == s && u == t) || (v == t && u == s) {
                continue;
            }
            add(2 * v + 1, 2 * u, 1, &mut head, &mut cap);
        }
    }
    let (src, dst) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    while flow < limit {
        let mut prev = vec![usize::MAX; 2 * n];
        let mut seen = vec![false; 2 * n];
        seen[src] = true;
        let mut q = VecDeque::from([src]);
        while let Some(x) = q.pop_front() {
            if x == dst {
                break;
            }
            for &e in &out[x] {
                let y = head[e];
                if cap[e] > 0 && !seen[y] {
                    seen[y] = true;
                    prev[y] = e;
                    q.push_back(y);
                }
            }
        }
        if !seen[dst] {
            break;
        }
        let mut y = dst;
        while y != src {
            let e = prev[y];
            cap[e] -= 1;
            cap[e ^ 1] += 1;
            y = head[e ^ 1];
        }
        flow += 1;
    }
    flow
}

/// Whether `g` contains a subdivision (equivalently a minor) of `K_{2,3}`.
pub fn has_k23_subdivision(g: &LabelledGraph) -> bool {
    let n = g.vertex_count();
    let big: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 3).collect();
    for (i, &s) in big.iter().enumerate() {
        for &t in &big[i + 1..] {
            if disjoint_paths(g, s, t, 3) >= 3 {
                return true;
            }
        }
    }
    false
}

/// No `K_4` and no `K_{2,3}` minor.
pub fn is_outerplanar(g: &LabelledGraph) -> bool {
    is_series_parallel(g) && g.edge_count() + 3 <= 2 * g.vertex_count().max(2) && !has_k23_subdivision(g)
}

/// Membership in a class, including its connectivity requirement.
pub fn is_member(g: &LabelledGraph, class: GraphClass) -> bool {
    let connected = if class.is_two_connected() { g.is_biconnected() } else { g.is_connected() && g.vertex_count() >= 1 };
    connected
        && match class.family {
            Family::SeriesParallel => is_series_parallel(g),
            Family::Outerplanar => is_outerplanar(g),
        }
}

/// Brute force minor test: tries every assignment of vertices to `|V(h)|`
/// connected branch sets (or deletion). Exponential; meant for `n <= 7`.
pub fn has_minor(g: &LabelledGraph, h: &LabelledGraph) -> bool {
    let p = h.vertex_count();
    let n = g.vertex_count();
    if p > n || h.edge_count() > g.edge_count() {
        return false;
    }
    let h_edges = h.edges();
    let mut perms = Vec::new();
    permutations(&mut (0..p).collect(), 0, &mut perms);
    let mut labels = vec![usize::MAX; n];
    search(g, p, &h_edges, &perms, &mut labels, 0, 0)
}

fn permutations(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permutations(cur, k + 1, out);
        cur.swap(k, i);
    }
}

fn search(
    g: &LabelledGraph,
    p: usize,
    h_edges: &[(usize, usize)],
    perms: &[Vec<usize>],
    labels: &mut Vec<usize>,
    v: usize,
    used: usize,
) -> bool {
    let n = g.vertex_count();
    if used + (n - v) < p {
        return false;
    }
    if v == n {
        return quotient_contains(g, p, h_edges, perms, labels);
    }
    labels[v] = usize::MAX;
    if search(g, p, h_edges, perms, labels, v + 1, used) {
        return true;
    }
    for l in 0..=used.min(p - 1) {
        labels[v] = l;
        let next = if l == used { used + 1 } else { used };
        if search(g, p, h_edges, perms, labels, v + 1, next) {
            return true;
        }
    }
    labels[v] = usize::MAX;
    false
}

fn quotient_contains(g: &LabelledGraph, p: usize, h_edges: &[(usize, usize)], perms: &[Vec<usize>], labels: &[usize]) -> bool {
    let n = g.vertex_count();
    // each part connected
    for part in 0..p {
        let members: Vec<usize> = (0..n).filter(|&v| labels[v] == part).collect();
        let mut seen = vec![false; n];
        let mut stack = vec![members[0]];
        seen[members[0]] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !seen[w] && labels[w] == part {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        if count != members.len() {
            return false;
        }
    }
    let mut q = vec![0u32; p];
    for (u, v) in g.edges() {
        let (a, b) = (labels[u], labels[v]);
        if a != usize::MAX && b != usize::MAX && a != b {
            q[a] |= 1 << b;
            q[b] |= 1 << a;
        }
    }
    perms.iter().any(|perm| h_edges.iter().all(|&(i, j)| q[perm[i]] & (1 << perm[j]) != 0))
}

/// Exact tallies over all members of a class with `n` labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub class: GraphClass,
    pub n: usize,
    pub count: u64,
    /// `degree_tally[k]`: vertices of degree `k`, summed over all graphs.
    pub degree_tally: Vec<u64>,
    /// `pair_tally[k][l]`: ordered pairs of distinct vertices with degrees `(k, l)`.
    pub pair_tally: Vec<Vec<u64>>,
    /// `maxdeg[d]`: graphs with maximum degree `d`.
    pub maxdeg: Vec<u64>,
}

impl OracleResult {
    fn empty(class: GraphClass, n: usize) -> Self {
        OracleResult {
            class,
            n,
            count: 0,
            degree_tally: vec![0; n],
            pair_tally: vec![vec![0; n]; n],
            maxdeg: vec![0; n],
        }
    }

    fn record(&mut self, g: &LabelledGraph) {
        let deg = g.degrees();
        self.count += 1;
        for &d in &deg {
            self.degree_tally[d] += 1;
        }
        for (u, &du) in deg.iter().enumerate() {
            for (v, &dv) in deg.iter().enumerate() {
                if u != v {
                    self.pair_tally[du][dv] += 1;
                }
            }
        }
        self.maxdeg[g.max_degree()] += 1;
    }

    fn merge(mut self, o: OracleResult) -> Self {
        self.count += o.count;
        for (a, b) in self.degree_tally.iter_mut().zip(&o.degree_tally) {
            *a += b;
        }
        for (ra, rb) in self.pair_tally.iter_mut().zip(&o.pair_tally) {
            for (a, b) in ra.iter_mut().zip(rb) {
                *a += b;
            }
        }
        for (a, b) in self.maxdeg.iter_mut().zip(&o.maxdeg) {
            *a += b;
        }
        self
    }

    /// Number of graphs with maximum degree above `k`.
    pub fn maxdeg_above(&self, k: usize) -> u64 {
        self.maxdeg.iter().skip(k + 1).sum()
    }
}

/// Graph on `n` vertices whose edge set is encoded by `mask` over the pairs
/// `(i, j)`, `i < j`, in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> LabelledGraph {
    let mut g = LabelledGraph::new(n);
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    g
}

/// Enumerates every graph on `n` labelled vertices and tallies the members of `class`.
/// `n = 7` requires `allow_slow`.
pub fn enumerate(class: GraphClass, n: usize, allow_slow: bool) -> Result<OracleResult, OracleError> {
    if n > MAX_ORACLE_N {
        return Err(OracleError::TooLarge(n));
    }
    if n == MAX_ORACLE_N && !allow_slow {
        return Err(OracleError::SlowSizeNotEnabled);
    }
    if n < class.min_size() {
        return Err(OracleError::TooSmall { class, n, min: class.min_size() });
    }
    let m = n * (n - 1) / 2;
    let total: u64 = 1 << m;
    let chunk = 1u64 << m.saturating_sub(6).min(14);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let result = starts
        .into_par_iter()
        .map(|start| {
            let mut r = OracleResult::empty(class, n);
            for mask in start..(start + chunk).min(total) {
                // a connected graph needs at least n - 1 edges
                if (mask.count_ones() as usize) + 1 < n {
                    continue;
                }
                let g = graph_from_mask(n, mask);
                if is_member(&g, class) {
                    r.record(&g);
                }
            }
            r
        })
        .reduce(|| OracleResult::empty(class, n), OracleResult::merge);
    Ok(result)
}
