//! Node reliability assignments and the reliability-weighted link graph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::topology::{normalize_distances, NodeId, Topology};

pub const MIN_RELIABILITY: f64 = 0.5;
pub const MAX_RELIABILITY: f64 = 1.0;

/// Trust probability per node, each in `[0.5, 1.0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilityAssignment {
    values: Vec<f64>,
}

impl ReliabilityAssignment {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((i, r)) = values
            .iter()
            .enumerate()
            .find(|(_, r)| !(MIN_RELIABILITY..=MAX_RELIABILITY).contains(*r))
        {
            return Err(Error::Domain(format!(
                "reliability {r} of node {i} outside [0.5, 1.0]"
            )));
        }
        Ok(ReliabilityAssignment { values })
    }

    /// Every node fully trusted.
    pub fn uniform(n: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, v: NodeId) -> f64 {
        self.values[v.0]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Balance between normalized distance (`alpha`) and reliability
/// penalty (`1 - alpha`) in link weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightParams {
    alpha: f64,
}

impl WeightParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::Domain(format!("alpha {alpha} outside [0, 1]")));
        }
        Ok(WeightParams { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl Default for WeightParams {
    fn default() -> Self {
        WeightParams { alpha: 0.5 }
    }
}

/// `alpha * d_norm + (1 - alpha) / (r_u * r_v)`.
pub fn modified_weight(p: WeightParams, d_norm: f64, r_u: f64, r_v: f64) -> Result<f64> {
    if !(d_norm > 0.0 && d_norm <= 1.0) {
        return Err(Error::Domain(format!(
            "normalized distance {d_norm} outside (0, 1]"
        )));
    }
    for r in [r_u, r_v] {
        if !(MIN_RELIABILITY..=MAX_RELIABILITY).contains(&r) {
            return Err(Error::Domain(format!("reliability {r} outside [0.5, 1.0]")));
        }
    }
    let a = p.alpha;
    Ok(a * d_norm + (1.0 - a) * (1.0 / (r_u * r_v)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedEdge {
    pub u: NodeId,
    pub v: NodeId,
    pub weight: f64,
}

/// Undirected graph with positive edge costs.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    edges: Vec<WeightedEdge>,
    /// Per node: `(neighbor, weight)`, sorted by neighbor id.
    adjacency: Vec<Vec<(NodeId, f64)>>,
}

impl WeightedGraph {
    /// Builds a graph on nodes `0..n`. Weights must be positive and finite,
    /// with at most one edge per unordered pair and no self-loops.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut adjacency: Vec<Vec<(NodeId, f64)>> = vec![Vec::new(); n];
        let mut out = Vec::with_capacity(edges.len());
        for &(u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::NodeNotFound(u.max(v)));
            }
            if u == v {
                return Err(Error::Domain(format!("self-loop on node {u}")));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::Domain(format!(
                    "edge ({u}, {v}) weight {w} not positive"
                )));
            }
            if adjacency[u].iter().any(|&(x, _)| x.0 == v) {
                return Err(Error::Domain(format!("duplicate edge ({u}, {v})")));
            }
            adjacency[u].push((NodeId(v), w));
            adjacency[v].push((NodeId(u), w));
            out.push(WeightedEdge {
                u: NodeId(u.min(v)),
                v: NodeId(u.max(v)),
                weight: w,
            });
        }
        for adj in &mut adjacency {
            adj.sort_by_key(|&(x, _)| x);
        }
        Ok(WeightedGraph {
            edges: out,
            adjacency,
        })
    }

    /// Graph using raw link distances as weights.
    pub fn from_distances(t: &Topology) -> Self {
        let edges: Vec<_> = t
            .links()
            .iter()
            .map(|l| (l.u.0, l.v.0, l.distance_km))
            .collect();
        Self::from_edges(t.node_count(), &edges).expect("validated topology")
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }

    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, f64)] {
        &self.adjacency[v.0]
    }

    pub fn contains(&self, v: NodeId) -> bool {
        v.0 < self.adjacency.len()
    }
}

/// Applies [`modified_weight`] to every link of `t`.
pub fn build_modified_graph(
    t: &Topology,
    r: &ReliabilityAssignment,
    p: WeightParams,
) -> Result<WeightedGraph> {
    if r.len() != t.node_count() {
        return Err(Error::Domain(format!(
            "reliability assignment covers {} nodes, topology has {}",
            r.len(),
            t.node_count()
        )));
    }
    let d_norm = normalize_distances(t);
    let edges = t
        .links()
        .iter()
        .zip(&d_norm)
        .map(|(l, &d)| Ok((l.u.0, l.v.0, modified_weight(p, d, r.get(l.u), r.get(l.v))?)))
        .collect::<Result<Vec<_>>>()?;
    WeightedGraph::from_edges(t.node_count(), &edges)
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the RNG stream for one node in one trial.
pub fn stream_seed(base_seed: u64, trial_index: u64, node: NodeId) -> u64 {
    mix64(mix64(mix64(base_seed) ^ trial_index) ^ node.0 as u64)
}

/// Draws `R_v ~ Uniform[0.5, 1.0]` per node; nodes with a fixed reliability
/// in the topology keep it. Each value depends only on
/// `(base_seed, trial_index, node)`.
pub fn sample_reliabilities(
    t: &Topology,
    base_seed: u64,
    trial_index: u64,
) -> ReliabilityAssignment {
    let values = t
        .nodes()
        .iter()
        .map(|node| {
            node.reliability.unwrap_or_else(|| {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(stream_seed(base_seed, trial_index, node.id));
                rng.random_range(MIN_RELIABILITY..=MAX_RELIABILITY)
            })
        })
        .collect();
    ReliabilityAssignment { values }
}
