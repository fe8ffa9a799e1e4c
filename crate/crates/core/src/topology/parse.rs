use std::io::Read;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{LinkSpec, NodeKey, NodeSpec, Topology};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopologyFormat {
    Json,
    EdgeList,
}

impl FromStr for TopologyFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(TopologyFormat::Json),
            "edgelist" | "edge-list" => Ok(TopologyFormat::EdgeList),
            other => Err(Error::InvalidParams(format!(
                "unknown topology format `{other}`"
            ))),
        }
    }
}

impl TopologyFormat {
    /// Guesses the format from a file extension; anything but `.json` is
    /// treated as an edge list.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => TopologyFormat::Json,
            _ => TopologyFormat::EdgeList,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct JsonNode {
    id: NodeKey,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reliability: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct JsonLink {
    source: NodeKey,
    target: NodeKey,
    distance_km: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub(super) struct JsonTopology {
    #[serde(default)]
    name: String,
    nodes: Vec<JsonNode>,
    links: Vec<JsonLink>,
}

impl From<&Topology> for JsonTopology {
    fn from(t: &Topology) -> Self {
        JsonTopology {
            name: t.name.clone(),
            nodes: t
                .nodes
                .iter()
                .map(|n| JsonNode {
                    id: n.key.clone(),
                    label: n.label.clone(),
                    reliability: n.reliability,
                })
                .collect(),
            links: t
                .links
                .iter()
                .map(|l| JsonLink {
                    source: t.nodes[l.u.0].key.clone(),
                    target: t.nodes[l.v.0].key.clone(),
                    distance_km: l.distance_km,
                })
                .collect(),
        }
    }
}

/// Reads a topology in the given format and validates it.
pub fn parse_topology<R: Read>(mut source: R, format: TopologyFormat) -> Result<Topology> {
    let mut text = String::new();
    source.read_to_string(&mut text).map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })?;
    match format {
        TopologyFormat::Json => parse_json(&text),
        TopologyFormat::EdgeList => parse_edgelist(&text),
    }
}

fn parse_json(text: &str) -> Result<Topology> {
    let doc: JsonTopology = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let nodes = doc
        .nodes
        .into_iter()
        .map(|n| NodeSpec {
            key: n.id,
            label: n.label,
            reliability: n.reliability,
        })
        .collect();
    let links = doc
        .links
        .into_iter()
        .map(|l| LinkSpec {
            source: l.source,
            target: l.target,
            distance_km: l.distance_km,
        })
        .collect();
    Ok(Topology::from_specs(doc.name, nodes, links)?)
}

fn parse_edgelist(text: &str) -> Result<Topology> {
    let mut name = String::new();
    let mut keys = std::collections::BTreeSet::new();
    let mut links = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let (content, comment) = match raw.find('#') {
            Some(p) => (&raw[..p], Some(raw[p + 1..].trim())),
            None => (raw, None),
        };
        // A leading comment names the topology.
        if name.is_empty() && links.is_empty() && content.trim().is_empty() {
            if let Some(c) = comment.filter(|c| !c.is_empty()) {
                name = c.to_string();
            }
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.as_slice() {
            [] => continue,
            [u, v, d] => {
                let distance_km = d.parse::<f64>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("invalid distance `{d}`"),
                })?;
                let source = NodeKey::from_token(u);
                let target = NodeKey::from_token(v);
                keys.insert(source.clone());
                keys.insert(target.clone());
                links.push(LinkSpec {
                    source,
                    target,
                    distance_km,
                });
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!(
                        "expected `<u> <v> <distance_km>`, got {} fields",
                        fields.len()
                    ),
                })
            }
        }
    }
    let nodes = keys.into_iter().map(NodeSpec::new).collect();
    Ok(Topology::from_specs(name, nodes, links)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ValidationError;

    #[test]
    fn json_echo() {
        let src = r#"{"name":"p","nodes":[{"id":0},{"id":1},{"id":2}],
            "links":[{"source":0,"target":1,"distance_km":10.0},
                     {"source":1,"target":2,"distance_km":5.0}]}"#;
        let t = parse_topology(src.as_bytes(), TopologyFormat::Json).unwrap();
        assert_eq!((t.node_count(), t.link_count()), (3, 2));
        assert_eq!(t.name(), "p");
    }

    #[test]
    fn json_labels_and_reliability() {
        let src = r#"{"name":"m","nodes":[{"id":"Berlin","reliability":0.9},{"id":"Hamburg","label":"HH"}],
            "links":[{"source":"Hamburg","target":"Berlin","distance_km":289.0}]}"#;
        let t = parse_topology(src.as_bytes(), TopologyFormat::Json).unwrap();
        assert_eq!(t.nodes()[0].reliability, Some(0.9));
        assert_eq!(t.nodes()[1].display_label(), "HH");
        assert_eq!(t.find_by_text("HH"), Some(super::super::NodeId(1)));
    }

    #[test]
    fn json_syntax_error_has_line() {
        let err =
            parse_topology("{\n\"nodes\": [\n oops".as_bytes(), TopologyFormat::Json).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn edgelist_duplicate_reversed() {
        let err = parse_topology("0 1 10.0\n1 0 10.0\n".as_bytes(), TopologyFormat::EdgeList)
            .unwrap_err();
        assert!(matches!(
            err,
            Error::Validation(ValidationError::DuplicateLink { .. })
        ));
    }

    #[test]
    fn edgelist_disjoint_triangles() {
        let src = "# two triangles\na b 1\nb c 1\nc a 1\nx y 1\ny z 1\nz x 1\n";
        let err = parse_topology(src.as_bytes(), TopologyFormat::EdgeList).unwrap_err();
        match err {
            Error::Validation(ValidationError::Disconnected { representatives }) => {
                assert_eq!(representatives, ["a", "x"]);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn edgelist_comments_and_errors() {
        let src = "# metro\n\n0 1 2.5 # trailing\n1 2 3\n";
        let t = parse_topology(src.as_bytes(), TopologyFormat::EdgeList).unwrap();
        assert_eq!(t.name(), "metro");
        assert_eq!(t.link_count(), 2);

        let err = parse_topology("0 1\n".as_bytes(), TopologyFormat::EdgeList).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_topology("0 1 far\n".as_bytes(), TopologyFormat::EdgeList).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }
}
