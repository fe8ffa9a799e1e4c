//! CSV serialization of rankings and coverage curves.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::evaluation::{Comparison, CpcCurve};
use crate::placement::Ranking;
use crate::topology::{NodeId, Topology};

pub const RANKING_HEADER: [&str; 6] =
    ["rank", "node", "label", "total_score", "mean_bc", "mean_ec"];
pub const CURVE_HEADER: [&str; 2] = ["k", "coverage_pct"];
pub const COMPARE_HEADER: [&str; 4] = ["k", "composite_pct", "degree_pct", "delta_pct"];

/// Writes the ranking with scores at 6 decimal places.
pub fn write_ranking_csv<W: Write>(out: W, t: &Topology, r: &Ranking) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RANKING_HEADER)?;
    for (i, e) in r.entries.iter().enumerate() {
        let label = t
            .node(e.node)
            .map(|n| n.display_label())
            .ok_or(Error::NodeNotFound(e.node.0))?;
        w.write_record([
            (i + 1).to_string(),
            e.node.to_string(),
            label,
            format!("{:.6}", e.total_score),
            format!("{:.6}", e.mean_bc),
            format!("{:.6}", e.mean_ec),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads the node order back from a ranking CSV, checking every node id
/// and label against `t`.
pub fn read_ranking_csv<R: Read>(input: R, t: &Topology) -> Result<Vec<NodeId>> {
    let mut reader = csv::Reader::from_reader(input);
    let headers = reader.headers()?.clone();
    if headers.iter().ne(RANKING_HEADER) {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "unexpected ranking header `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut rows: Vec<(usize, NodeId)> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let line = i + 2;
        let field = |j: usize| record.get(j).unwrap_or_default();
        let bad = |what: &str| Error::Parse {
            line,
            message: format!("invalid {what}"),
        };
        let rank: usize = field(0).parse().map_err(|_| bad("rank"))?;
        let node = NodeId(field(1).parse().map_err(|_| bad("node"))?);
        let expected = t
            .node(node)
            .ok_or_else(|| Error::UnknownNode(field(1).to_string()))?
            .display_label();
        if expected != field(2) {
            return Err(Error::Parse {
                line,
                message: format!(
                    "node {node} is labelled `{expected}` in the topology, `{}` in the ranking",
                    field(2)
                ),
            });
        }
        rows.push((rank, node));
    }
    rows.sort_by_key(|&(rank, _)| rank);
    let mut seen = vec![false; t.node_count()];
    for (i, &(rank, node)) in rows.iter().enumerate() {
        if rank != i + 1 {
            return Err(Error::Parse {
                line: 0,
                message: format!("ranks are not 1..{}", rows.len()),
            });
        }
        if std::mem::replace(&mut seen[node.0], true) {
            return Err(Error::Parse {
                line: 0,
                message: format!("node {node} ranked twice"),
            });
        }
    }
    Ok(rows.into_iter().map(|(_, v)| v).collect())
}

/// `k,coverage_pct` at 2 decimal places.
pub fn write_curve_csv<W: Write>(out: W, curve: &CpcCurve) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CURVE_HEADER)?;
    for p in &curve.points {
        w.write_record([p.k.to_string(), format!("{:.2}", p.coverage_pct)])?;
    }
    w.flush()?;
    Ok(())
}

/// `k,composite_pct,degree_pct,delta_pct` at 2 decimal places.
pub fn write_compare_csv<W: Write>(out: W, cmp: &Comparison) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COMPARE_HEADER)?;
    for d in &cmp.delta {
        w.write_record([
            d.k.to_string(),
            format!("{:.2}", d.composite_pct),
            format!("{:.2}", d.degree_pct),
            format!("{:.2}", d.delta_pct),
        ])?;
    }
    w.flush()?;
    Ok(())
}
