use super::shortest_path::{dijkstra_sssp, ShortestPathTree};
use super::{CentralityKind, CentralityVector};
use crate::error::Result;
use crate::reliability::WeightedGraph;
use crate::topology::NodeId;

/// Shortest-path trees from every source, in ascending source order.
pub fn all_source_trees(g: &WeightedGraph) -> Result<Vec<ShortestPathTree>> {
    (0..g.node_count())
        .map(|s| dijkstra_sssp(g, NodeId(s)))
        .collect()
}

/// Pair-normalized betweenness: for each node, the sum over unordered pairs
/// `{s, t}` not containing it of `sigma_st(v) / sigma_st`, divided by
/// `(n - 1)(n - 2) / 2`. Graphs with fewer than 3 nodes score all zeros.
pub fn betweenness(g: &WeightedGraph) -> Result<CentralityVector> {
    Ok(betweenness_from_trees(
        g.node_count(),
        &all_source_trees(g)?,
    ))
}

/// Brandes dependency accumulation over precomputed trees. Contributions
/// are summed in the order the trees are given.
pub fn betweenness_from_trees(n: usize, trees: &[ShortestPathTree]) -> CentralityVector {
    let mut bc = vec![0.0; n];
    if n >= 3 {
        let mut delta = vec![0.0; n];
        for tree in trees {
            delta.iter_mut().for_each(|d| *d = 0.0);
            for &w in tree.order.iter().rev() {
                let coeff = (1.0 + delta[w.0]) / tree.sigma[w.0];
                for &v in &tree.preds[w.0] {
                    delta[v.0] += tree.sigma[v.0] * coeff;
                }
                if w != tree.source {
                    bc[w.0] += delta[w.0];
                }
            }
        }
        // Every unordered pair was visited from both ends.
        let pairs = ((n - 1) * (n - 2)) as f64 / 2.0;
        for b in &mut bc {
            *b = *b * 0.5 / pairs;
        }
    }
    CentralityVector {
        kind: CentralityKind::Betweenness,
        values: bc,
    }
}
