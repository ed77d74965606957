use maxdeg::graph::LabelledGraph;
use maxdeg::oracle::{graph_from_mask, has_k23_subdivision, has_minor, is_outerplanar, is_series_parallel};

#[test]
fn reduction_and_minor_search_agree_up_to_six_vertices() {
    let k4 = LabelledGraph::complete(4);
    let k23 = LabelledGraph::complete_bipartite(2, 3);
    for n in 1..=6usize {
        let m = n * (n - 1) / 2;
        for mask in 0..(1u64 << m) {
            let g = graph_from_mask(n, mask);
            let sp = is_series_parallel(&g);
            assert_eq!(sp, !has_minor(&g, &k4), "K4 routes disagree on {:?}", g.edges());
            assert_eq!(has_k23_subdivision(&g), has_minor(&g, &k23), "K23 routes disagree on {:?}", g.edges());
            assert_eq!(is_outerplanar(&g), sp && !has_minor(&g, &k23));
        }
    }
}
