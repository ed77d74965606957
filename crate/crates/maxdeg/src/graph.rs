//! Simple undirected labelled graphs.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Simple graph on vertices `0..n` (written 1-indexed in edge lists).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledGraph {
    adj: Vec<Vec<usize>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EdgeListError {
    #[error("missing header line")]
    MissingHeader,
    #[error("malformed line {0}: {1:?}")]
    Malformed(usize, String),
    #[error("vertex {0} out of range 1..={1}")]
    OutOfRange(usize, usize),
    #[error("loop or repeated edge {0} {1}")]
    NotSimple(usize, usize),
    #[error("header announces {0} edges, found {1}")]
    EdgeCount(usize, usize),
}

impl LabelledGraph {
    pub fn new(n: usize) -> Self {
        LabelledGraph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Adds the edge `uv`; returns `false` if it was a loop or already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v || self.adj[u].contains(&v) {
            return false;
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        true
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        e.sort_unstable();
        e
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut adj = vec![Vec::new(); self.adj.len()];
        for (u, ns) in self.adj.iter().enumerate() {
            adj[perm[u]] = ns.iter().map(|&v| perm[v]).collect();
        }
        LabelledGraph { adj }
    }

    /// Applies a uniformly random relabelling.
    pub fn shuffle_labels<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        let mut perm: Vec<usize> = (0..self.adj.len()).collect();
        perm.shuffle(rng);
        self.relabel(&perm)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.adj.len();
        if n == 0 {
            return true;
        }
        self.reachable_from(0, None).iter().filter(|&&r| r).count() == n
    }

    fn reachable_from(&self, s: usize, removed: Option<usize>) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] && Some(v) != removed {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Articulation points (Hopcroft-Tarjan lowpoint, iterative).
    pub fn cut_vertices(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbour index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(top) = stack.last_mut() {
                let (u, parent) = (top.0, top.1);
                if top.2 < self.adj[u].len() {
                    let v = self.adj[u][top.2];
                    top.2 += 1;
                    if disc[v] == usize::MAX {
                        disc[v] = time;
                        low[v] = time;
                        time += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((v, u, 0));
                    } else if v != parent {
                        low[u] = low[u].min(disc[v]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[u]);
                        if parent != root && low[u] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// 2-connected in the block sense: a single edge counts, a single vertex does not.
    pub fn is_biconnected(&self) -> bool {
        let n = self.adj.len();
        if n < 2 || !self.is_connected() {
            return false;
        }
        n == 2 || self.cut_vertices().is_empty()
    }

    /// Edge-list text: `n m` header, then one `u v` line per edge (1-indexed).
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut s = String::with_capacity(8 * (edges.len() + 1));
        let _ = writeln!(s, "{} {}", self.adj.len(), edges.len());
        for (u, v) in edges {
            let _ = writeln!(s, "{} {}", u + 1, v + 1);
        }
        s
    }

    pub fn from_edge_list(text: &str) -> Result<Self, EdgeListError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(EdgeListError::MissingHeader)?;
        let parse_pair = |i: usize, l: &str| -> Result<(usize, usize), EdgeListError> {
            let mut it = l.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
                _ => Err(EdgeListError::Malformed(i + 1, l.to_string())),
            }
        };
        let (n, m) = parse_pair(0, header)?;
        let mut g = Self::new(n);
        let mut count = 0;
        for (i, l) in lines {
            let (u, v) = parse_pair(i, l)?;
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(EdgeListError::OutOfRange(x, n));
                }
            }
            if !g.add_edge(u - 1, v - 1) {
                return Err(EdgeListError::NotSimple(u, v));
            }
            count += 1;
        }
        if count != m {
            return Err(EdgeListError::EdgeCount(m, count));
        }
        Ok(g)
    }
}
