//! Graph metrics checked against brute-force references on small graphs.

mod common;

use common::oracles::{
    best_modularity, brute_betweenness, graph, pairwise_modularity, random_graph,
};
use num_rational::Ratio;
use querynet::{betweenness_centrality, clusters, modularity, ClusterMethod};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn betweenness_matches_path_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..60 {
        let n = rng.gen_range(1..=9);
        let p = rng.gen_range(0.15..0.7);
        let g = random_graph(&mut rng, n, p);
        let exact: Vec<Ratio<i64>> = betweenness_centrality(&g, false);
        assert_eq!(exact, brute_betweenness(&g), "trial {trial}");
        let float: Vec<f64> = betweenness_centrality(&g, false);
        for (f, r) in float.iter().zip(&exact) {
            assert!((f - *r.numer() as f64 / *r.denom() as f64).abs() < 1e-12);
        }
    }
}

#[test]
fn betweenness_reference_shapes() {
    let c4 = graph(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 1.0)]);
    assert_eq!(betweenness_centrality::<f64, _>(&c4, false), [0.5; 4]);
    let star = graph(5, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (0, 4, 1.0)]);
    assert_eq!(betweenness_centrality::<f64, _>(&star, false)[0], 6.0);
    let path = graph(3, &[(0, 1, 1.0), (1, 2, 1.0)]);
    let normalized: Vec<Ratio<i64>> = betweenness_centrality(&path, true);
    assert_eq!(normalized[1], Ratio::from_integer(1));
}

#[test]
fn betweenness_is_identical_across_thread_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = random_graph(&mut rng, 120, 0.05);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| betweenness_centrality::<f64, _>(&g, true))
    };
    let one = run(1);
    for threads in [2, 3, 8] {
        let other = run(threads);
        assert!(one
            .iter()
            .zip(&other)
            .all(|(a, b)| a.to_bits() == b.to_bits()));
    }
}

#[test]
fn greedy_modularity_finds_optimum_on_reference_shapes() {
    let triangles = [
        (0, 1, 1.0),
        (1, 2, 1.0),
        (0, 2, 1.0),
        (3, 4, 1.0),
        (4, 5, 1.0),
        (3, 5, 1.0),
    ];
    let two = graph(6, &triangles);
    let mut bridged_edges = triangles.to_vec();
    bridged_edges.push((2, 3, 1.0));
    let bridged = graph(6, &bridged_edges);
    for g in [two, bridged] {
        let c = clusters(&g, ClusterMethod::Modularity);
        assert_eq!(c.assignment, [0, 0, 0, 1, 1, 1]);
        assert!((c.modularity_score - best_modularity(&g)).abs() < 1e-12);
    }
}

#[test]
fn modularity_score_matches_pairwise_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let n = rng.gen_range(2..=8);
        let g = random_graph(&mut rng, n, 0.4);
        let optimum = best_modularity(&g);
        for method in [ClusterMethod::Components, ClusterMethod::Modularity] {
            let c = clusters(&g, method);
            let recomputed = pairwise_modularity(&g, &c.assignment);
            assert!((c.modularity_score - recomputed).abs() < 1e-12);
            assert!((modularity(&g, &c.assignment) - recomputed).abs() < 1e-12);
            assert!(c.modularity_score <= optimum + 1e-12);
        }
    }
}

#[test]
fn cluster_labels_are_dense_in_order_of_smallest_member() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let g = random_graph(&mut rng, 10, 0.2);
        for method in [ClusterMethod::Components, ClusterMethod::Modularity] {
            let c = clusters(&g, method);
            let mut seen = 0;
            for &label in &c.assignment {
                assert!(label <= seen);
                if label == seen {
                    seen += 1;
                }
            }
        }
    }
}
