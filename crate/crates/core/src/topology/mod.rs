//! Network data model: nodes, fiber links and validated topologies.

mod generate;
mod parse;

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ValidationError};

pub use generate::{generate_topology, GeneratorModel};
pub use parse::{parse_topology, TopologyFormat};

/// Dense node index in `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Identifier of a node as written in the source file.
///
/// Integer keys sort numerically and before text keys; canonical node ids
/// follow this order, so node record order in a file never matters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeKey {
    Int(i64),
    Text(String),
}

impl NodeKey {
    /// Integers become [`NodeKey::Int`], anything else is kept as text.
    pub fn from_token(token: &str) -> Self {
        token
            .parse::<i64>()
            .map(NodeKey::Int)
            .unwrap_or_else(|_| NodeKey::Text(token.to_string()))
    }
}

impl fmt::Display for NodeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeKey::Int(i) => write!(f, "{i}"),
            NodeKey::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: NodeId,
    pub key: NodeKey,
    pub label: Option<String>,
    /// Administratively fixed reliability; overrides sampling when present.
    pub reliability: Option<f64>,
}

impl Node {
    /// Human label if one was given, otherwise the original key.
    pub fn display_label(&self) -> String {
        match &self.label {
            Some(l) => l.clone(),
            None => self.key.to_string(),
        }
    }
}

/// Undirected fiber link, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Link {
    pub u: NodeId,
    pub v: NodeId,
    pub distance_km: f64,
}

/// Node record before canonicalization.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSpec {
    pub key: NodeKey,
    pub label: Option<String>,
    pub reliability: Option<f64>,
}

impl NodeSpec {
    pub fn new(key: NodeKey) -> Self {
        NodeSpec {
            key,
            label: None,
            reliability: None,
        }
    }
}

/// Link record before canonicalization.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkSpec {
    pub source: NodeKey,
    pub target: NodeKey,
    pub distance_km: f64,
}

/// A validated, connected, simple undirected graph with canonical node ids.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    name: String,
    nodes: Vec<Node>,
    links: Vec<Link>,
    /// Per node: `(neighbor, link index)`, sorted by neighbor id.
    adjacency: Vec<Vec<(NodeId, usize)>>,
}

impl Topology {
    /// Canonicalizes and validates raw records.
    ///
    /// Node ids are assigned in ascending [`NodeKey`] order and links are
    /// sorted by `(u, v)`, so the result does not depend on record order.
    pub fn from_specs(
        name: impl Into<String>,
        node_specs: Vec<NodeSpec>,
        link_specs: Vec<LinkSpec>,
    ) -> Result<Self, ValidationError> {
        let mut by_key: BTreeMap<NodeKey, NodeSpec> = BTreeMap::new();
        for spec in node_specs {
            if let Some(r) = spec.reliability {
                if !(0.5..=1.0).contains(&r) {
                    return Err(ValidationError::BadReliability {
                        node: spec.key.to_string(),
                        value: r,
                    });
                }
            }
            if by_key.contains_key(&spec.key) {
                return Err(ValidationError::DuplicateNode {
                    node: spec.key.to_string(),
                });
            }
            by_key.insert(spec.key.clone(), spec);
        }

        let index: BTreeMap<NodeKey, NodeId> = by_key
            .keys()
            .enumerate()
            .map(|(i, k)| (k.clone(), NodeId(i)))
            .collect();
        let nodes: Vec<Node> = by_key
            .into_values()
            .enumerate()
            .map(|(i, s)| Node {
                id: NodeId(i),
                key: s.key,
                label: s.label,
                reliability: s.reliability,
            })
            .collect();

        let mut seen = HashSet::new();
        let mut links = Vec::with_capacity(link_specs.len());
        for spec in &link_specs {
            let (su, sv) = (spec.source.to_string(), spec.target.to_string());
            let lookup = |k: &NodeKey| {
                index
                    .get(k)
                    .copied()
                    .ok_or_else(|| ValidationError::UnknownEndpoint {
                        u: su.clone(),
                        v: sv.clone(),
                        node: k.to_string(),
                    })
            };
            let a = lookup(&spec.source)?;
            let b = lookup(&spec.target)?;
            if a == b {
                return Err(ValidationError::SelfLoop { node: su });
            }
            if !(spec.distance_km.is_finite() && spec.distance_km > 0.0) {
                return Err(ValidationError::BadDistance {
                    u: su,
                    v: sv,
                    distance_km: spec.distance_km,
                });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((u, v)) {
                return Err(ValidationError::DuplicateLink { u: su, v: sv });
            }
            links.push(Link {
                u,
                v,
                distance_km: spec.distance_km,
            });
        }
        links.sort_by_key(|l| (l.u, l.v));

        if nodes.len() < 2 || links.is_empty() {
            return Err(ValidationError::TooSmall {
                nodes: nodes.len(),
                links: links.len(),
            });
        }

        let mut adjacency = vec![Vec::new(); nodes.len()];
        for (i, l) in links.iter().enumerate() {
            adjacency[l.u.0].push((l.v, i));
            adjacency[l.v.0].push((l.u, i));
        }
        for adj in &mut adjacency {
            adj.sort_by_key(|&(n, _)| n);
        }

        let topology = Topology {
            name: name.into(),
            nodes,
            links,
            adjacency,
        };
        let components = topology.components();
        if components.len() > 1 {
            return Err(ValidationError::Disconnected {
                representatives: components
                    .iter()
                    .map(|c| topology.nodes[c[0].0].key.to_string())
                    .collect(),
            });
        }
        Ok(topology)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> Option<&Node> {
        self.nodes.get(id.0)
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, usize)] {
        &self.adjacency[v.0]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v.0].len()
    }

    pub fn find(&self, key: &NodeKey) -> Option<NodeId> {
        self.nodes.iter().find(|n| &n.key == key).map(|n| n.id)
    }

    /// Looks a node up by its key or its human label.
    pub fn find_by_text(&self, text: &str) -> Option<NodeId> {
        let key = NodeKey::from_token(text);
        self.find(&key)
            .or_else(|| self.find(&NodeKey::Text(text.to_string())))
            .or_else(|| {
                self.nodes
                    .iter()
                    .find(|n| n.label.as_deref() == Some(text))
                    .map(|n| n.id)
            })
    }

    /// Connected components, each sorted by id, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![NodeId(start)];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in &self.adjacency[u] {
                    if !seen[w.0] {
                        seen[w.0] = true;
                        comp.push(w);
                        queue.push_back(w.0);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    /// `(min, max)` link distance in km.
    pub fn distance_range(&self) -> (f64, f64) {
        self.links
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), l| {
                (lo.min(l.distance_km), hi.max(l.distance_km))
            })
    }

    /// Same graph with every distance multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Topology {
        let mut t = self.clone();
        for l in &mut t.links {
            l.distance_km *= factor;
        }
        t
    }

    /// Serializes to the canonical JSON topology format.
    pub fn to_json(&self) -> String {
        let doc = parse::JsonTopology::from(self);
        let mut s = serde_json::to_string_pretty(&doc).expect("topology serializes");
        s.push('\n');
        s
    }

    /// Serializes to the edge-list format. Labels and fixed reliabilities
    /// have no representation there and are dropped.
    pub fn to_edgelist(&self) -> String {
        let mut s = format!("# {}\n", self.name);
        for l in &self.links {
            s.push_str(&format!(
                "{} {} {}\n",
                self.nodes[l.u.0].key, self.nodes[l.v.0].key, l.distance_km
            ));
        }
        s
    }
}

/// Distances divided by the longest link distance, indexed like
/// [`Topology::links`]. The longest link maps to exactly 1.0.
pub fn normalize_distances(t: &Topology) -> Vec<f64> {
    let (_, max) = t.distance_range();
    t.links().iter().map(|l| l.distance_km / max).collect()
}
