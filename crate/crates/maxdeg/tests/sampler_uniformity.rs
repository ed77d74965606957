//! Empirical checks of the sampler against exhaustive enumeration.

use std::collections::HashMap;

use maxdeg::oracle::{enumerate, graph_from_mask, is_member};
use maxdeg::sampler::{experiment::sample_rng, Sampler};
use maxdeg::GraphClass;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Pearson statistic of sample counts against the uniform law on `support`.
fn chi_square_p(counts: &HashMap<Vec<(usize, usize)>, u64>, support: usize, draws: u64) -> f64 {
    let expect = draws as f64 / support as f64;
    let observed: f64 = counts.values().map(|&c| (c as f64 - expect).powi(2) / expect).sum();
    let missing = (support - counts.len()) as f64 * expect;
    let stat = observed + missing;
    1.0 - ChiSquared::new((support - 1) as f64).unwrap().cdf(stat)
}

#[test]
fn labelled_graphs_are_uniform_at_small_sizes() {
    for class in GraphClass::ALL {
        let n = 4;
        let support = enumerate(class, n, false).unwrap().count as usize;
        let sampler = Sampler::float(class, n, None).unwrap();
        let draws = 40 * support as u64;
        let mut counts = HashMap::new();
        for i in 0..draws as usize {
            let g = sampler.sample(n, &mut sample_rng(3, n, i)).unwrap();
            assert!(is_member(&g, class));
            *counts.entry(g.edges()).or_insert(0u64) += 1;
        }
        assert!(counts.len() <= support);
        let p = chi_square_p(&counts, support, draws);
        assert!(p > 1e-3, "{class}: p = {p}");
    }
}

#[test]
fn every_member_is_reachable() {
    // all 38 labelled connected outerplanar graphs on 4 vertices appear
    let n = 4;
    let sampler = Sampler::float(GraphClass::CONN_OUTERPLANAR, n, None).unwrap();
    let mut seen = std::collections::HashSet::new();
    for i in 0..4000 {
        seen.insert(sampler.sample(n, &mut sample_rng(9, n, i)).unwrap().edges());
    }
    let members = (0..1u64 << 6).map(|m| graph_from_mask(n, m)).filter(|g| is_member(g, GraphClass::CONN_OUTERPLANAR)).count();
    assert_eq!(seen.len(), members);
}

#[test]
fn mean_maximum_degree_grows() {
    let sampler = Sampler::float(GraphClass::TWO_CONN_SP, 2000, None).unwrap();
    let mean = |n: usize| (0..200).map(|i| sampler.sample_raw(n, &mut sample_rng(1, n, i)).unwrap().max_degree()).sum::<usize>() as f64 / 200.0;
    assert!(mean(2000) > mean(100) + 1.0);
}
