//! Brute-force reference implementations, independent of the library's
//! Dijkstra/Brandes/power-iteration code paths.
#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Undirected test graph as an edge list on nodes `0..n`.
#[derive(Debug, Clone)]
pub struct TestGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl TestGraph {
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v, w) in &self.edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        adj
    }

    pub fn edgelist(&self) -> String {
        self.edges
            .iter()
            .map(|(u, v, w)| format!("{u} {v} {w}\n"))
            .collect()
    }
}

/// Random connected simple graph: a random spanning tree plus extra edges.
/// With `integer_weights`, weights are drawn from {1, 2, 3} so that tied
/// shortest paths are common and exactly representable.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, integer_weights: bool) -> TestGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut present = vec![vec![false; n]; n];
    let mut pairs = Vec::new();
    for i in 1..n {
        let parent = order[rng.random_range(0..i)];
        let child = order[i];
        present[parent][child] = true;
        present[child][parent] = true;
        pairs.push((parent.min(child), parent.max(child)));
    }
    let max_extra = n * (n - 1) / 2 - (n - 1);
    let extra = rng.random_range(0..=max_extra.min(2 * n));
    let mut candidates: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !present[u][v])
        .collect();
    candidates.shuffle(rng);
    pairs.extend(candidates.into_iter().take(extra));
    let edges = pairs
        .into_iter()
        .map(|(u, v)| {
            let w = if integer_weights {
                f64::from(rng.random_range(1u8..=3))
            } else {
                rng.random_range(0.05..2.0)
            };
            (u, v, w)
        })
        .collect();
    TestGraph { n, edges }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn tied(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

pub fn floyd_warshall(g: &TestGraph) -> Vec<Vec<f64>> {
    let n = g.n;
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for &(u, v, w) in &g.edges {
        d[u][v] = d[u][v].min(w);
        d[v][u] = d[v][u].min(w);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

pub fn bellman_ford(g: &TestGraph, s: usize) -> Vec<f64> {
    let mut d = vec![f64::INFINITY; g.n];
    d[s] = 0.0;
    for _ in 0..g.n {
        let mut changed = false;
        for &(u, v, w) in &g.edges {
            for (a, b) in [(u, v), (v, u)] {
                if d[a] + w < d[b] {
                    d[b] = d[a] + w;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    d
}

/// Every shortest `s -> t` path, found by depth-first search over simple
/// paths, pruned once the partial length exceeds the optimum.
pub fn all_shortest_paths(g: &TestGraph, dist: &[Vec<f64>], s: usize, t: usize) -> Vec<Vec<usize>> {
    let adj = g.adjacency();
    let target = dist[s][t];
    let mut out = Vec::new();
    let mut path = vec![s];
    let mut on_path = vec![false; g.n];
    on_path[s] = true;
    fn dfs(
        adj: &[Vec<(usize, f64)>],
        t: usize,
        target: f64,
        len: f64,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let u = *path.last().unwrap();
        if u == t {
            if tied(len, target) {
                out.push(path.clone());
            }
            return;
        }
        for &(v, w) in &adj[u] {
            let next = len + w;
            if on_path[v] || (next > target && !tied(next, target)) {
                continue;
            }
            on_path[v] = true;
            path.push(v);
            dfs(adj, t, target, next, path, on_path, out);
            path.pop();
            on_path[v] = false;
        }
    }
    dfs(&adj, t, target, 0.0, &mut path, &mut on_path, &mut out);
    out
}

/// Pair-normalized betweenness by exhaustive shortest-path enumeration.
pub fn brute_betweenness(g: &TestGraph) -> Vec<f64> {
    let n = g.n;
    let mut bc = vec![0.0; n];
    if n < 3 {
        return bc;
    }
    let dist = floyd_warshall(g);
    for s in 0..n {
        for t in s + 1..n {
            let paths = all_shortest_paths(g, &dist, s, t);
            let total = paths.len() as f64;
            for (v, b) in bc.iter_mut().enumerate() {
                if v == s || v == t {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&v)).count() as f64;
                *b += through / total;
            }
        }
    }
    let pairs = ((n - 1) * (n - 2) / 2) as f64;
    bc.iter().map(|b| b / pairs).collect()
}

/// Dominant eigenpair of the dense affinity matrix, sign-fixed positive.
pub fn dense_perron(n: usize, affinity: &[(usize, usize, f64)]) -> (Vec<f64>, f64) {
    let mut a = DMatrix::<f64>::zeros(n, n);
    for &(u, v, x) in affinity {
        a[(u, v)] = x;
        a[(v, u)] = x;
    }
    let eig = SymmetricEigen::new(a);
    let (idx, &lambda) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    let col = eig.eigenvectors.column(idx);
    let sign = if col.sum() < 0.0 { -1.0 } else { 1.0 };
    let norm = col.norm();
    (col.iter().map(|x| sign * x / norm).collect(), lambda)
}

/// Canonical path of a pair: among all shortest paths, the one whose
/// reversed node sequence (read from `t`) is lexicographically smallest.
pub fn brute_canonical_path(g: &TestGraph, dist: &[Vec<f64>], s: usize, t: usize) -> Vec<usize> {
    all_shortest_paths(g, dist, s, t)
        .into_iter()
        .min_by(|a, b| a.iter().rev().cmp(b.iter().rev()))
        .unwrap()
}

/// Coverage percentage by enumeration of every pair's canonical path.
pub fn brute_cpc(g: &TestGraph, trns: &[usize], include_endpoints: bool) -> f64 {
    let dist = floyd_warshall(g);
    let mut covered = 0;
    let mut pairs = 0;
    for s in 0..g.n {
        for t in s + 1..g.n {
            pairs += 1;
            let path = brute_canonical_path(g, &dist, s, t);
            let hit = path.iter().enumerate().any(|(i, v)| {
                let interior = i != 0 && i != path.len() - 1;
                (interior || include_endpoints) && trns.contains(v)
            });
            if hit {
                covered += 1;
            }
        }
    }
    100.0 * covered as f64 / pairs as f64
}

/// Coverage when any tied shortest path containing a repeater counts.
pub fn brute_cpc_any(g: &TestGraph, trns: &[usize], include_endpoints: bool) -> f64 {
    let dist = floyd_warshall(g);
    let mut covered = 0;
    let mut pairs = 0;
    for s in 0..g.n {
        for t in s + 1..g.n {
            pairs += 1;
            let hit = all_shortest_paths(g, &dist, s, t).iter().any(|path| {
                path.iter().enumerate().any(|(i, v)| {
                    let interior = i != 0 && i != path.len() - 1;
                    (interior || include_endpoints) && trns.contains(v)
                })
            });
            if hit {
                covered += 1;
            }
        }
    }
    100.0 * covered as f64 / pairs as f64
}
