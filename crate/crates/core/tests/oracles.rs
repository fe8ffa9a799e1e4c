mod oracle;

use oracle::{random_connected, rng, TestGraph};
use trn_core::centrality::{
    all_source_trees, betweenness, dijkstra_sssp, eigenvector, EcMode, DEFAULT_MAX_ITER,
    DEFAULT_TOL,
};
use trn_core::evaluation::{canonical_paths, cpc, cpc_any_path, EndpointMode};
use trn_core::reliability::WeightedGraph;
use trn_core::NodeId;

fn weighted(g: &TestGraph) -> WeightedGraph {
    WeightedGraph::from_edges(g.n, &g.edges).unwrap()
}

#[test]
fn dijkstra_matches_bellman_ford() {
    let mut r = rng(1);
    for case in 0..150 {
        let g = random_connected(&mut r, 2 + case % 11, case % 2 == 0);
        let wg = weighted(&g);
        for s in 0..g.n {
            let tree = dijkstra_sssp(&wg, NodeId(s)).unwrap();
            assert_eq!(
                tree.dist,
                oracle::bellman_ford(&g, s),
                "case {case} source {s}"
            );
        }
    }
}

#[test]
fn sigma_matches_path_enumeration() {
    let mut r = rng(2);
    for case in 0..120 {
        let g = random_connected(&mut r, 3 + case % 6, true);
        let dist = oracle::floyd_warshall(&g);
        let wg = weighted(&g);
        for s in 0..g.n {
            let tree = dijkstra_sssp(&wg, NodeId(s)).unwrap();
            for t in 0..g.n {
                let count = oracle::all_shortest_paths(&g, &dist, s, t).len();
                assert_eq!(tree.sigma[t], count as f64, "case {case} {s}->{t}");
                if t != s {
                    let from_preds: f64 = tree.preds[t].iter().map(|p| tree.sigma[p.0]).sum();
                    assert_eq!(tree.sigma[t], from_preds);
                    for p in &tree.preds[t] {
                        assert!(tree.dist[p.0] < tree.dist[t]);
                    }
                }
            }
        }
    }
}

#[test]
fn betweenness_matches_enumeration() {
    let mut r = rng(3);
    for case in 0..100 {
        let g = random_connected(&mut r, 4 + case % 6, case % 3 != 0);
        let got = betweenness(&weighted(&g)).unwrap().values;
        let want = oracle::brute_betweenness(&g);
        for v in 0..g.n {
            assert!(
                (got[v] - want[v]).abs() <= 1e-9,
                "case {case} node {v}: {got:?} vs {want:?}"
            );
            assert!((0.0..=1.0 + 1e-12).contains(&got[v]));
        }
    }
}

#[test]
fn pair_dependencies_sum_to_interior_length() {
    // For one pair, the dependencies summed over all nodes equal the mean
    // number of interior nodes over its shortest paths.
    let mut r = rng(4);
    for case in 0..60 {
        let g = random_connected(&mut r, 4 + case % 5, true);
        let dist = oracle::floyd_warshall(&g);
        let wg = weighted(&g);
        let trees = all_source_trees(&wg).unwrap();
        for s in 0..g.n {
            for t in s + 1..g.n {
                let paths = oracle::all_shortest_paths(&g, &dist, s, t);
                let mean_interior =
                    paths.iter().map(|p| (p.len() - 2) as f64).sum::<f64>() / paths.len() as f64;
                // sigma_st(v) = sigma_sv * sigma_vt when v lies on a shortest s-t path
                let tree_s = &trees[s];
                let tree_t = &trees[t];
                let dep: f64 = (0..g.n)
                    .filter(|&v| v != s && v != t)
                    .filter(|&v| oracle::tied(tree_s.dist[v] + tree_t.dist[v], tree_s.dist[t]))
                    .map(|v| tree_s.sigma[v] * tree_t.sigma[v] / tree_s.sigma[t])
                    .sum();
                assert!(
                    (dep - mean_interior).abs() < 1e-9,
                    "case {case} pair {s},{t}"
                );
            }
        }
    }
}

#[test]
fn eigenvector_matches_dense_solver() {
    let mut r = rng(5);
    for case in 0..100 {
        let g = random_connected(&mut r, 4 + case % 9, case % 2 == 0);
        let wg = weighted(&g);
        for mode in [EcMode::InverseWeight, EcMode::Unweighted, EcMode::RawWeight] {
            let res = eigenvector(&wg, mode, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
            let affinity: Vec<_> = g
                .edges
                .iter()
                .map(|&(u, v, w)| (u, v, mode.affinity(w)))
                .collect();
            let (want, lambda) = oracle::dense_perron(g.n, &affinity);
            let x = &res.centrality.values;
            for v in 0..g.n {
                assert!(
                    (x[v] - want[v]).abs() <= 1e-6,
                    "case {case} {mode:?} node {v}"
                );
                assert!(x[v] > 0.0);
            }
            assert!((res.eigenvalue - lambda).abs() <= 1e-6 * lambda.max(1.0));
            let norm = x.iter().map(|a| a * a).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() <= 1e-9);
        }
    }
}

#[test]
fn canonical_paths_match_lexicographic_oracle() {
    let mut r = rng(6);
    for case in 0..80 {
        let g = random_connected(&mut r, 2 + case % 7, true);
        let dist = oracle::floyd_warshall(&g);
        let table = canonical_paths(&weighted(&g)).unwrap();
        assert_eq!(table.pair_count(), g.n * (g.n - 1) / 2);
        for s in 0..g.n {
            for t in s + 1..g.n {
                let got: Vec<usize> = table
                    .path(NodeId(s), NodeId(t))
                    .unwrap()
                    .iter()
                    .map(|v| v.0)
                    .collect();
                assert_eq!(got, oracle::brute_canonical_path(&g, &dist, s, t));
            }
        }
    }
}

#[test]
fn cpc_matches_enumeration() {
    let mut r = rng(7);
    for case in 0..100 {
        let g = random_connected(&mut r, 2 + case % 7, case % 4 != 0);
        let wg = weighted(&g);
        let table = canonical_paths(&wg).unwrap();
        let trees = all_source_trees(&wg).unwrap();
        for subset in 0u32..(1 << g.n).min(40) {
            let trns: Vec<usize> = (0..g.n).filter(|v| subset >> v & 1 == 1).collect();
            let ids: Vec<NodeId> = trns.iter().copied().map(NodeId).collect();
            for (mode, include) in [
                (EndpointMode::InteriorOnly, false),
                (EndpointMode::IncludeEndpoints, true),
            ] {
                assert_eq!(
                    cpc(&table, &ids, mode).unwrap(),
                    oracle::brute_cpc(&g, &trns, include)
                );
                assert_eq!(
                    cpc_any_path(&trees, &ids, mode).unwrap(),
                    oracle::brute_cpc_any(&g, &trns, include)
                );
            }
        }
    }
}
