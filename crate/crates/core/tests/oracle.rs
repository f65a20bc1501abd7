use planarcount::gfpipe::{extract_counts, qmax, Family, GfBundle};
use planarcount::oracle::{connectivity, enumerate_counts, is_planar, GraphCode, MAX_VERTICES};
use planarcount::Error;
use proptest::prelude::*;

fn graph(n: usize) -> impl Strategy<Value = GraphCode> {
    let pairs = n * (n - 1) / 2;
    (0u32..(1u32 << pairs)).prop_map(move |bits| GraphCode::new(n, bits).unwrap())
}

fn relabel(g: &GraphCode, perm: &[usize]) -> GraphCode {
    let edges: Vec<_> = g.edges().iter().map(|&(i, j)| (perm[i], perm[j])).collect();
    GraphCode::from_edges(g.n(), &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn planarity_is_closed_under_edge_removal(g in graph(7)) {
        if is_planar(&g).unwrap() {
            for (i, j) in g.edges() {
                prop_assert!(is_planar(&g.without_edge(i, j)).unwrap());
            }
        }
    }

    #[test]
    fn planar_graphs_satisfy_the_euler_bound(g in graph(7)) {
        if is_planar(&g).unwrap() {
            prop_assert!(g.edge_count() <= 3 * g.n() - 6);
        }
    }

    #[test]
    fn planarity_ignores_labels(g in graph(6), perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        prop_assert_eq!(is_planar(&g).unwrap(), is_planar(&relabel(&g, &perm)).unwrap());
        prop_assert_eq!(connectivity(&g), connectivity(&relabel(&g, &perm)));
    }
}

#[test]
fn counts_agree_with_the_series() {
    let oracle = enumerate_counts(6).unwrap();
    let bundle = GfBundle::build(6).unwrap();
    let series = extract_counts(
        &bundle,
        6,
        &[Family::Planar, Family::Connected, Family::Biconnected],
    )
    .unwrap();
    assert_eq!(oracle.first_difference(&series), None);
}

#[test]
fn rows_sum_to_totals_and_vanish_beyond_euler() {
    let t = enumerate_counts(6).unwrap();
    for n in 1..=6 {
        let row_sum: rug::Integer = (0..=qmax(n))
            .filter_map(|q| t.get(Family::Planar, n, q).cloned())
            .sum();
        assert_eq!(row_sum, t.total(Family::Planar, n).unwrap());
        if n >= 3 {
            for q in 3 * n - 5..=qmax(n) {
                assert_eq!(*t.get(Family::Planar, n, q).unwrap(), 0, "n={n} q={q}");
            }
        }
        // Every graph on n vertices is counted once, planar or not.
        let all = rug::Integer::from(1) << (n * (n - 1) / 2) as u32;
        assert!(t.total(Family::Planar, n).unwrap() <= all);
    }
    assert_eq!(t.total(Family::Planar, 5).unwrap(), 1023);
}

#[test]
fn size_limits() {
    assert!(matches!(GraphCode::new(MAX_VERTICES + 1, 0), Err(Error::Unsupported(_))));
    assert!(matches!(GraphCode::new(3, 1 << 3), Err(Error::Domain(_))));
    assert!(enumerate_counts(MAX_VERTICES + 1).is_err());
}

#[test]
fn dense_and_triangle_free_prefilters() {
    // K₃,₃ has 9 > 2·6 − 4 edges and no triangle.
    assert!(!is_planar(&GraphCode::complete_bipartite(3, 3).unwrap()).unwrap());
    // K₆ minus a perfect matching has 12 = 3·6 − 6 edges and is planar.
    let oct = GraphCode::complete(6)
        .unwrap()
        .without_edge(0, 1)
        .without_edge(2, 3)
        .without_edge(4, 5);
    assert_eq!(oct.edge_count(), 12);
    assert!(is_planar(&oct).unwrap());
    assert!(!is_planar(&GraphCode::complete(6).unwrap().without_edge(0, 1)).unwrap());
}
