//! Exact-size uniform generation by the recursive method.
//!
//! A derivation picks sizes and alternatives with probabilities read from
//! [`Tables`]. Shapes are built with vertices numbered in creation order; a
//! uniform relabelling then yields a uniform labelled graph. Vertex-rooted
//! series-parallel blocks are proposed as blocks rooted at an edge leaving the
//! root and accepted with probability `1 / deg(root)`; the test looks only at
//! the block skeleton, so atom expansions are never wasted.

pub mod chooser;
pub mod experiment;
pub mod tables;

use rand::Rng;
use thiserror::Error;

use crate::class::{Connectivity, GraphClass};
use crate::graph::LabelledGraph;
use crate::scalar::{Rational, Scalar};

pub use chooser::{Chooser, Exhaustive, RandomChooser};
pub use experiment::{fit_slope, max_degree_experiment, ExperimentConfig, ExperimentRecord};
pub use tables::{cache_dir_from_env, FamilyTables, Tables, CACHE_ENV};

#[derive(Debug, Error)]
pub enum SamplerError {
    #[error("size {n} outside {min}..={max} for {class}")]
    Size { class: GraphClass, n: usize, min: usize, max: usize },
    #[error("table cache: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, SamplerError>;

/// Graph on `0..n` as an edge list, before relabelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawGraph {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
}

impl RawGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u as usize] += 1;
            d[v as usize] += 1;
        }
        d
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn to_graph(&self) -> LabelledGraph {
        let e: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| (u as usize, v as usize)).collect();
        LabelledGraph::from_edges(self.n, &e)
    }
}

#[derive(Default)]
struct Builder {
    n: u32,
    edges: Vec<(u32, u32)>,
    atoms: Vec<(u32, usize)>,
}

impl Builder {
    fn vertex(&mut self) -> u32 {
        self.n += 1;
        self.n - 1
    }

    fn atom(&mut self, size: usize) -> u32 {
        let v = self.vertex();
        self.atoms.push((v, size));
        v
    }

    fn edge(&mut self, u: u32, v: u32) {
        self.edges.push((u, v));
    }
}

/// Outerplanar block tasks: `Face` continues a face from `u` to `b`, `Side`
/// is an edge that may carry a sub-dissection, `Rest` is the remainder `L`.
enum OpTask {
    Face(usize, u32, u32),
    Side(usize, u32, u32),
    Rest(usize, u32, u32),
}

/// Series-parallel network tasks between two poles.
enum SpTask {
    Set(usize, u32, u32),
    Series(usize, u32, u32),
    NonSeries(usize, u32, u32),
    Network(usize, u32, u32),
    Parallel(usize, u32, u32),
}

/// Recursive-method sampler over one set of tables.
#[derive(Clone, Debug)]
pub struct Sampler<T> {
    pub tables: Tables<T>,
}

impl<T: Scalar> Sampler<T> {
    pub fn new(tables: Tables<T>) -> Self {
        Sampler { tables }
    }

    pub fn class(&self) -> GraphClass {
        self.tables.class
    }

    /// Largest size the tables support.
    pub fn max_size(&self) -> usize {
        self.tables.nmax
    }

    /// One derivation of a graph with `n` vertices.
    pub fn generate<C: Chooser<T>>(&self, n: usize, ch: &mut C) -> Result<RawGraph> {
        let class = self.class();
        if n < class.min_size() || n > self.max_size() {
            return Err(SamplerError::Size { class, n, min: class.min_size(), max: self.max_size() });
        }
        let mut b = Builder::default();
        let root = b.vertex();
        match class.connectivity {
            Connectivity::TwoConnected => self.block(ch, root, n - 1, &mut b),
            Connectivity::Connected => {
                let mut stack = vec![(root, n - 1)];
                while let Some((v, m)) = stack.pop() {
                    if m == 0 {
                        continue;
                    }
                    let t = &self.tables;
                    let total = t.cprime[m].clone() * T::from_i64(m as i64);
                    let j = 1 + ch.choose(m, &total, &mut |i| {
                        let j = i + 1;
                        t.h[j].clone() * &t.cprime[m - j] * T::from_i64(j as i64)
                    });
                    stack.push((v, m - j));
                    b.atoms.clear();
                    self.block(ch, v, j, &mut b);
                    stack.extend(b.atoms.iter().map(|&(w, size)| (w, size - 1)));
                }
            }
        }
        debug_assert_eq!(b.n as usize, n);
        Ok(RawGraph { n, edges: b.edges })
    }

    /// A block at `root` whose other vertices are atoms of total size `j`.
    fn block<C: Chooser<T>>(&self, ch: &mut C, root: u32, j: usize, b: &mut Builder) {
        match &self.tables.family {
            FamilyTables::Outerplanar { a, p, va } => self.op_block(ch, root, j, b, a, p, va),
            FamilyTables::SeriesParallel { s, es, p, d, t, r } => {
                self.sp_block(ch, root, j, b, [s, es, p, d, t, r])
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn op_block<C: Chooser<T>>(
        &self,
        ch: &mut C,
        root: u32,
        j: usize,
        b: &mut Builder,
        a: &[T],
        p: &[T],
        va: &[T],
    ) {
        let v = &self.tables.v;
        let one = T::from_i64(1);
        let f = |k: usize| if k == 0 { one.clone() } else { a[k].clone() };
        let l = |k: usize| if k == 0 { one.clone() } else { a[k].clone() + &a[k] };
        let half = T::from_ratio(1, 2);
        let polygon = ch.choose(2, &self.tables.h[j], &mut |i| {
            if i == 0 {
                v[j].clone()
            } else {
                va[j].clone() * &half
            }
        }) == 1;
        if !polygon {
            let u = b.atom(j);
            b.edge(root, u);
            return;
        }
        let i = 1 + ch.choose(j - 1, &va[j], &mut |k| v[k + 1].clone() * &a[j - k - 1]);
        let u = b.atom(i);
        b.edge(root, u);
        let mut stack = vec![OpTask::Face(j - i, root, u)];
        while let Some(task) = stack.pop() {
            match task {
                OpTask::Face(n, x, y) => {
                    let i = 1 + ch.choose(n, &a[n], &mut |k| v[k + 1].clone() * &p[n - k - 1]);
                    let w = b.atom(i);
                    let rest = n - i;
                    let k = ch.choose(rest + 1, &p[rest], &mut |k| f(k) * l(rest - k));
                    stack.push(OpTask::Rest(rest - k, w, y));
                    stack.push(OpTask::Side(k, x, w));
                }
                OpTask::Side(m, x, y) => {
                    b.edge(x, y);
                    if m > 0 {
                        stack.push(OpTask::Face(m, x, y));
                    }
                }
                OpTask::Rest(m, x, y) => {
                    if m == 0 {
                        b.edge(x, y);
                    } else if ch.choose(2, &l(m), &mut |_| a[m].clone()) == 0 {
                        stack.push(OpTask::Side(m, x, y));
                    } else {
                        stack.push(OpTask::Face(m, x, y));
                    }
                }
            }
        }
    }

    fn sp_block<C: Chooser<T>>(&self, ch: &mut C, root: u32, j: usize, b: &mut Builder, tabs: [&Vec<T>; 6]) {
        let [s, es, p, d, t, r] = tabs;
        let v = &self.tables.v;
        let one = T::from_i64(1);
        let np = |k: usize| if k == 0 { one.clone() } else { p[k].clone() };
        let z = self.tables.h[j].clone() / &r[j];
        loop {
            let (n0, e0, a0) = (b.n, b.edges.len(), b.atoms.len());
            let i = 1 + ch.choose(j, &r[j], &mut |k| v[k + 1].clone() * &es[j - k - 1]);
            let pole = b.atom(i);
            b.edge(root, pole);
            let mut stack = vec![SpTask::Set(j - i, root, pole)];
            while let Some(task) = stack.pop() {
                match task {
                    SpTask::Set(m, x, y) => {
                        if m == 0 {
                            continue;
                        }
                        let total = es[m].clone() * T::from_i64(m as i64);
                        let c = 1 + ch.choose(m, &total, &mut |k| {
                            s[k + 1].clone() * &es[m - k - 1] * T::from_i64(k as i64 + 1)
                        });
                        stack.push(SpTask::Set(m - c, x, y));
                        stack.push(SpTask::Series(c, x, y));
                    }
                    SpTask::Series(n, x, y) => {
                        let i = 1 + ch.choose(n, &s[n], &mut |k| v[k + 1].clone() * &t[n - k - 1]);
                        let w = b.atom(i);
                        let rest = n - i;
                        let k = ch.choose(rest + 1, &t[rest], &mut |k| np(k) * &d[rest - k]);
                        stack.push(SpTask::Network(rest - k, w, y));
                        stack.push(SpTask::NonSeries(k, x, w));
                    }
                    SpTask::NonSeries(k, x, y) => {
                        if k == 0 {
                            b.edge(x, y);
                        } else {
                            stack.push(SpTask::Parallel(k, x, y));
                        }
                    }
                    SpTask::Network(n, x, y) => {
                        if n == 0 {
                            b.edge(x, y);
                        } else if ch.choose(2, &d[n], &mut |k| if k == 0 { s[n].clone() } else { p[n].clone() }) == 0 {
                            stack.push(SpTask::Series(n, x, y));
                        } else {
                            stack.push(SpTask::Parallel(n, x, y));
                        }
                    }
                    SpTask::Parallel(n, x, y) => {
                        let without = es[n].clone() - &s[n];
                        let with_edge = ch.choose(2, &p[n], &mut |k| if k == 0 { es[n].clone() } else { without.clone() }) == 0;
                        if with_edge {
                            b.edge(x, y);
                            stack.push(SpTask::Set(n, x, y));
                        } else {
                            // at least two components: point at the first one
                            let total = without.clone() * T::from_i64(n as i64);
                            let c = 1 + ch.choose(n - 1, &total, &mut |k| {
                                s[k + 1].clone() * &es[n - k - 1] * T::from_i64(k as i64 + 1)
                            });
                            stack.push(SpTask::Set(n - c, x, y));
                            stack.push(SpTask::Series(c, x, y));
                        }
                    }
                }
            }
            let deg = b.edges[e0..].iter().filter(|&&(x, y)| x == root || y == root).count();
            if ch.accept(T::from_ratio(1, deg as i64), z.clone()) {
                return;
            }
            b.n = n0;
            b.edges.truncate(e0);
            b.atoms.truncate(a0);
        }
    }
}

impl Sampler<f64> {
    /// Float sampler for sizes up to `nmax`, using the cache directory if given.
    pub fn float(class: GraphClass, nmax: usize, cache: Option<&std::path::Path>) -> Result<Self> {
        Ok(Sampler::new(Tables::cached(class, nmax, cache)?))
    }

    /// Unlabelled shape; enough for any isomorphism invariant.
    pub fn sample_raw<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<RawGraph> {
        self.generate(n, &mut RandomChooser { rng })
    }

    /// Uniform labelled graph with `n` vertices.
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<LabelledGraph> {
        Ok(self.sample_raw(n, rng)?.to_graph().shuffle_labels(rng))
    }
}

/// One uniform graph of the class with `n` vertices from a ChaCha20 seed.
pub fn sample_graph(class: GraphClass, n: usize, seed: u64) -> Result<LabelledGraph> {
    let sampler = Sampler::float(class, n.max(class.min_size()), cache_dir_from_env().as_deref())?;
    let mut rng = experiment::sample_rng(seed, n, 0);
    sampler.sample(n, &mut rng)
}

/// Every derivation of size `n` with its exact probability.
pub fn exact_outcomes(class: GraphClass, n: usize) -> Result<Vec<(RawGraph, Rational)>> {
    let sampler = Sampler::new(Tables::<Rational>::build(class, n.max(class.min_size()), Rational::from_i64(1)));
    let mut err = None;
    let out = Exhaustive::run(|ch| match sampler.generate(n, ch) {
        Ok(g) => Some(g),
        Err(e) => {
            err = Some(e);
            None
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(out.into_iter().map(|(g, p)| (g.expect("no error"), p)).collect())
}

/// Exact law of the maximum degree for size `n`, indexed by degree.
pub fn exact_maxdeg_distribution(class: GraphClass, n: usize) -> Result<Vec<Rational>> {
    let mut dist: Vec<Rational> = Vec::new();
    for (g, p) in exact_outcomes(class, n)? {
        let m = g.max_degree();
        if dist.len() <= m {
            dist.resize(m + 1, Rational::from_i64(0));
        }
        dist[m] += p;
    }
    Ok(dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{enumerate, is_member};
    use crate::spectrum::degree_table;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn exhaustive_laws_are_probability_distributions() {
        for class in GraphClass::ALL {
            for n in class.min_size()..=7 {
                let out = exact_outcomes(class, n).unwrap();
                let total: Rational = out.iter().map(|(_, p)| p.clone()).sum();
                assert_eq!(total, Rational::from_i64(1), "{class} n={n}");
                for (g, _) in &out {
                    assert!(is_member(&g.to_graph(), class), "{class} {g:?}");
                }
            }
        }
    }

    #[test]
    fn exact_maxdeg_law_matches_enumeration() {
        for class in GraphClass::ALL {
            for n in class.min_size()..=5 {
                let oracle = enumerate(class, n, false).unwrap();
                let law = exact_maxdeg_distribution(class, n).unwrap();
                let count = Rational::from_i64(oracle.count as i64);
                for (k, &c) in oracle.maxdeg.iter().enumerate() {
                    let want = Rational::from_i64(c as i64) / &count;
                    let got = law.get(k).cloned().unwrap_or_else(|| Rational::from_i64(0));
                    assert_eq!(got, want, "{class} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn exhaustive_degree_law_matches_spectrum() {
        let n = 7;
        for class in GraphClass::ALL {
            let table = degree_table(class, n, n - 1).unwrap();
            let mut d = vec![Rational::from_i64(0); n];
            for (g, p) in exact_outcomes(class, n).unwrap() {
                for k in g.degrees() {
                    d[k] += p.clone() / Rational::from_i64(n as i64);
                }
            }
            assert_eq!(d, table.single, "{class}");
        }
    }

    #[test]
    fn random_samples_are_members() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        for class in GraphClass::ALL {
            let s = Sampler::float(class, 60, None).unwrap();
            for n in [class.min_size(), 3, 12, 60] {
                for _ in 0..20 {
                    let g = s.sample(n, &mut rng).unwrap();
                    assert_eq!(g.vertex_count(), n);
                    assert!(is_member(&g, class), "{class} n={n}");
                }
            }
            assert!(s.sample(61, &mut rng).is_err());
        }
    }

    #[test]
    fn same_seed_same_graph() {
        let a = sample_graph(GraphClass::CONN_SP, 40, 11).unwrap();
        let b = sample_graph(GraphClass::CONN_SP, 40, 11).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_graph(GraphClass::CONN_SP, 40, 12).unwrap());
    }
}
