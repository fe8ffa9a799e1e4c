//! Betweenness, eigenvector and degree centrality.

mod betweenness;
mod eigenvector;
mod shortest_path;

use serde::{Deserialize, Serialize};

use crate::topology::{NodeId, Topology};

pub use betweenness::{all_source_trees, betweenness, betweenness_from_trees};
pub use eigenvector::{eigenvector, EcMode, EigenvectorResult, DEFAULT_MAX_ITER, DEFAULT_TOL};
pub use shortest_path::{dijkstra_sssp, is_tied, ShortestPathTree, TIE_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CentralityKind {
    Betweenness,
    Eigenvector,
    Degree,
}

/// One score per node, indexed by [`NodeId`].
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityVector {
    pub kind: CentralityKind,
    pub values: Vec<f64>,
}

impl CentralityVector {
    pub fn get(&self, v: NodeId) -> f64 {
        self.values[v.0]
    }
}

/// `deg(v) / (n - 1)` on the raw topology.
pub fn degree_centrality(t: &Topology) -> CentralityVector {
    let denom = (t.node_count() - 1) as f64;
    CentralityVector {
        kind: CentralityKind::Degree,
        values: t
            .nodes()
            .iter()
            .map(|n| t.degree(n.id) as f64 / denom)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{parse_topology, TopologyFormat};

    #[test]
    fn degree_star_and_cycle() {
        let star =
            parse_topology("0 1 1\n0 2 1\n0 3 1\n".as_bytes(), TopologyFormat::EdgeList).unwrap();
        let d = degree_centrality(&star);
        assert_eq!(d.values[0], 1.0);
        assert_eq!(d.values[1], 1.0 / 3.0);

        let c4 = parse_topology(
            "0 1 1\n1 2 1\n2 3 1\n3 0 1\n".as_bytes(),
            TopologyFormat::EdgeList,
        )
        .unwrap();
        assert!(degree_centrality(&c4)
            .values
            .iter()
            .all(|&v| v == 2.0 / 3.0));
    }
}
