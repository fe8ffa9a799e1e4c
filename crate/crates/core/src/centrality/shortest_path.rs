use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::reliability::WeightedGraph;
use crate::topology::NodeId;

/// Relative tolerance under which two path lengths count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[inline]
pub fn is_tied(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// Single-source shortest paths with path counts and all tied predecessors.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPathTree {
    pub source: NodeId,
    pub dist: Vec<f64>,
    /// Number of distinct shortest paths from `source`.
    pub sigma: Vec<f64>,
    /// Predecessors on shortest paths, ascending by id.
    pub preds: Vec<Vec<NodeId>>,
    /// Nodes in non-decreasing distance order (settle order).
    pub order: Vec<NodeId>,
}

impl ShortestPathTree {
    /// Canonical shortest path `source -> target`: walking back from the
    /// target, the smallest predecessor id is taken at every step.
    pub fn canonical_path(&self, target: NodeId) -> Vec<NodeId> {
        let mut path = vec![target];
        let mut cur = target;
        while cur != self.source {
            cur = self.preds[cur.0][0];
            path.push(cur);
        }
        path.reverse();
        path
    }
}

#[derive(Copy, Clone, PartialEq)]
struct Entry {
    dist: f64,
    node: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra from `source`, recording every predecessor within
/// [`TIE_TOLERANCE`] and counting shortest paths.
pub fn dijkstra_sssp(g: &WeightedGraph, source: NodeId) -> Result<ShortestPathTree> {
    if !g.contains(source) {
        return Err(Error::NodeNotFound(source.0));
    }
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut sigma = vec![0.0; n];
    let mut preds: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut settled = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut heap = BinaryHeap::new();

    dist[source.0] = 0.0;
    sigma[source.0] = 1.0;
    heap.push(Entry {
        dist: 0.0,
        node: source.0,
    });

    while let Some(Entry { dist: d, node: u }) = heap.pop() {
        if settled[u] || d > dist[u] {
            continue;
        }
        settled[u] = true;
        order.push(NodeId(u));
        for &(v, w) in g.neighbors(NodeId(u)) {
            let v = v.0;
            if settled[v] {
                continue;
            }
            let alt = d + w;
            if dist[v].is_finite() && is_tied(alt, dist[v]) {
                sigma[v] += sigma[u];
                preds[v].push(NodeId(u));
            } else if alt < dist[v] {
                dist[v] = alt;
                sigma[v] = sigma[u];
                preds[v].clear();
                preds[v].push(NodeId(u));
                heap.push(Entry { dist: alt, node: v });
            }
        }
    }
    for p in &mut preds {
        p.sort_unstable();
    }
    Ok(ShortestPathTree {
        source,
        dist,
        sigma,
        preds,
        order,
    })
}
