//! Reliability-aware ranking of trusted repeater node (TRN) sites in QKD
//! optical networks.
//!
//! Links are re-weighted by normalized distance and endpoint trust
//! ([`reliability`]), nodes are scored by a blend of betweenness and
//! eigenvector centrality averaged over random trust draws ([`placement`]),
//! and selections are judged by how many all-pairs shortest paths they
//! cover ([`evaluation`]).

pub mod centrality;
pub mod error;
pub mod evaluation;
pub mod placement;
pub mod reliability;
pub mod report;
pub mod topology;

pub use error::{Error, Result, ValidationError};
pub use topology::{NodeId, Topology};

/// Bundled 28-node / 52-link metro topology (`ring_chords`, seed 7).
pub const METRO28_JSON: &str = include_str!("../data/metro28.json");

/// Parses [`METRO28_JSON`].
pub fn metro28() -> Topology {
    topology::parse_topology(METRO28_JSON.as_bytes(), topology::TopologyFormat::Json)
        .expect("bundled topology is valid")
}
