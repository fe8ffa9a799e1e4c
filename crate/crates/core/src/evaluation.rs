//! Cumulative path coverage (CPC) of repeater sets and baseline comparison.

use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::centrality::{all_source_trees, degree_centrality, ShortestPathTree};
use crate::error::{Error, Result};
use crate::placement::{monte_carlo_rank, order_by_score, Ranking, ScoreParams};
use crate::reliability::{
    build_modified_graph, sample_reliabilities, ReliabilityAssignment, WeightParams, WeightedGraph,
};
use crate::topology::{NodeId, Topology};

/// Whether a repeater at a path endpoint covers the path.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndpointMode {
    #[default]
    InteriorOnly,
    IncludeEndpoints,
}

impl EndpointMode {
    pub fn as_str(self) -> &'static str {
        match self {
            EndpointMode::InteriorOnly => "interior",
            EndpointMode::IncludeEndpoints => "include",
        }
    }
}

impl FromStr for EndpointMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "interior" | "interior-only" | "interior_only" => Ok(EndpointMode::InteriorOnly),
            "include" | "include-endpoints" | "include_endpoints" => {
                Ok(EndpointMode::IncludeEndpoints)
            }
            other => Err(Error::InvalidParams(format!(
                "unknown endpoint mode `{other}`"
            ))),
        }
    }
}

/// Which shortest path(s) of a pair must contain a repeater.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathSemantics {
    /// The single canonical path (smallest-id tie-break).
    #[default]
    Canonical,
    /// Any of the tied shortest paths.
    AnyShortest,
}

impl PathSemantics {
    pub fn as_str(self) -> &'static str {
        match self {
            PathSemantics::Canonical => "canonical",
            PathSemantics::AnyShortest => "any",
        }
    }
}

impl FromStr for PathSemantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical" => Ok(PathSemantics::Canonical),
            "any" | "any-shortest" => Ok(PathSemantics::AnyShortest),
            other => Err(Error::InvalidParams(format!(
                "unknown path semantics `{other}`"
            ))),
        }
    }
}

/// Graph(s) on which coverage is measured.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CpcGraph {
    /// Averaged over the reliability-weighted graph of every trial.
    #[default]
    Trials,
    /// Once, on normalized distances alone.
    Distance,
}

impl CpcGraph {
    pub fn as_str(self) -> &'static str {
        match self {
            CpcGraph::Trials => "trials",
            CpcGraph::Distance => "distance",
        }
    }
}

impl FromStr for CpcGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trials" => Ok(CpcGraph::Trials),
            "distance" => Ok(CpcGraph::Distance),
            other => Err(Error::InvalidParams(format!("unknown cpc graph `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CpcOptions {
    pub endpoint_mode: EndpointMode,
    pub semantics: PathSemantics,
    pub graph: CpcGraph,
}

/// One canonical shortest path per unordered pair `s < t`, ordered by
/// `(s, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathTable {
    node_count: usize,
    paths: Vec<Vec<NodeId>>,
}

impl PathTable {
    pub fn from_trees(n: usize, trees: &[ShortestPathTree]) -> Self {
        let mut paths = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for tree in trees {
            let s = tree.source.0;
            for t in s + 1..n {
                paths.push(tree.canonical_path(NodeId(t)));
            }
        }
        PathTable {
            node_count: n,
            paths,
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn pair_count(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> &[Vec<NodeId>] {
        &self.paths
    }

    /// Path for the pair `{s, t}`, oriented from the smaller id.
    pub fn path(&self, s: NodeId, t: NodeId) -> Option<&[NodeId]> {
        let (a, b) = (s.0.min(t.0), s.0.max(t.0));
        if a == b || b >= self.node_count {
            return None;
        }
        let n = self.node_count;
        let idx = a * n - a * (a + 1) / 2 + (b - a - 1);
        self.paths.get(idx).map(Vec::as_slice)
    }
}

/// Canonical path for every pair: walking back from the larger endpoint,
/// always step to the smallest tied predecessor.
pub fn canonical_paths(g: &WeightedGraph) -> Result<PathTable> {
    Ok(PathTable::from_trees(g.node_count(), &all_source_trees(g)?))
}

fn candidate_nodes(path: &[NodeId], mode: EndpointMode) -> &[NodeId] {
    match mode {
        EndpointMode::InteriorOnly if path.len() >= 2 => &path[1..path.len() - 1],
        EndpointMode::InteriorOnly => &[],
        EndpointMode::IncludeEndpoints => path,
    }
}

fn membership(n: usize, trns: &[NodeId]) -> Result<Vec<bool>> {
    let mut is_trn = vec![false; n];
    for &v in trns {
        if v.0 >= n {
            return Err(Error::UnknownNode(v.to_string()));
        }
        is_trn[v.0] = true;
    }
    Ok(is_trn)
}

/// Percentage of pairs whose canonical path holds at least one repeater.
pub fn cpc(paths: &PathTable, trns: &[NodeId], mode: EndpointMode) -> Result<f64> {
    let is_trn = membership(paths.node_count, trns)?;
    let covered = paths
        .paths
        .iter()
        .filter(|p| candidate_nodes(p, mode).iter().any(|v| is_trn[v.0]))
        .count();
    Ok(100.0 * covered as f64 / paths.pair_count() as f64)
}

/// Percentage of pairs with at least one shortest path (of possibly many
/// tied ones) holding a repeater.
pub fn cpc_any_path(
    trees: &[ShortestPathTree],
    trns: &[NodeId],
    mode: EndpointMode,
) -> Result<f64> {
    let n = trees.len();
    let is_trn = membership(n, trns)?;
    let pairs = n * (n - 1) / 2;
    Ok(100.0 * covered_any_path(trees, &is_trn, mode) as f64 / pairs as f64)
}

fn covered_any_path(trees: &[ShortestPathTree], is_trn: &[bool], mode: EndpointMode) -> usize {
    let n = trees.len();
    let mut avoiding = vec![0.0; n];
    let mut covered = 0;
    for tree in trees {
        let s = tree.source;
        // avoiding[v]: shortest s->v paths without a repeater strictly
        // between s and v.
        for &v in &tree.order {
            avoiding[v.0] = if v == s {
                1.0
            } else {
                tree.preds[v.0]
                    .iter()
                    .filter(|p| **p == s || !is_trn[p.0])
                    .map(|p| avoiding[p.0])
                    .sum()
            };
        }
        for t in s.0 + 1..n {
            let endpoint = mode == EndpointMode::IncludeEndpoints && (is_trn[s.0] || is_trn[t]);
            if endpoint || avoiding[t] < tree.sigma[t] {
                covered += 1;
            }
        }
    }
    covered
}

/// For each pair, the earliest position in `order` of a node covering its
/// canonical path; `None` when no listed node covers it.
fn first_cover_positions(
    paths: &PathTable,
    order: &[NodeId],
    mode: EndpointMode,
) -> Vec<Option<usize>> {
    let mut position = vec![usize::MAX; paths.node_count];
    for (i, v) in order.iter().enumerate() {
        position[v.0] = position[v.0].min(i);
    }
    paths
        .paths
        .iter()
        .map(|p| {
            candidate_nodes(p, mode)
                .iter()
                .map(|v| position[v.0])
                .min()
                .filter(|&pos| pos != usize::MAX)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionMethod {
    Composite,
    Degree,
}

impl SelectionMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SelectionMethod::Composite => "composite",
            SelectionMethod::Degree => "degree",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub k: usize,
    pub coverage_pct: f64,
}

/// Coverage for `K = 1..=k_max` top-ranked repeaters; coverage at
/// `K = 0` is 0 by definition and not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct CpcCurve {
    pub method: SelectionMethod,
    pub points: Vec<CurvePoint>,
}

impl CpcCurve {
    pub fn coverage_at(&self, k: usize) -> Option<f64> {
        if k == 0 {
            return Some(0.0);
        }
        self.points.get(k - 1).map(|p| p.coverage_pct)
    }
}

/// Covered-pair counts per `K` for each order, on one graph.
fn covered_counts(
    g: &WeightedGraph,
    orders: &[&[NodeId]],
    k_max: usize,
    opts: &CpcOptions,
) -> Result<Vec<Vec<u64>>> {
    let n = g.node_count();
    let trees = all_source_trees(g)?;
    match opts.semantics {
        PathSemantics::Canonical => {
            let paths = PathTable::from_trees(n, &trees);
            Ok(orders
                .iter()
                .map(|order| {
                    let mut hist = vec![0u64; k_max + 1];
                    for pos in first_cover_positions(&paths, &order[..k_max], opts.endpoint_mode)
                        .into_iter()
                        .flatten()
                    {
                        hist[pos + 1] += 1;
                    }
                    let mut acc = 0;
                    hist.iter()
                        .skip(1)
                        .map(|h| {
                            acc += h;
                            acc
                        })
                        .collect()
                })
                .collect())
        }
        PathSemantics::AnyShortest => orders
            .iter()
            .map(|order| {
                (1..=k_max)
                    .map(|k| {
                        let is_trn = membership(n, &order[..k])?;
                        Ok(covered_any_path(&trees, &is_trn, opts.endpoint_mode) as u64)
                    })
                    .collect()
            })
            .collect(),
    }
}

fn evaluation_graph(t: &Topology, p: &ScoreParams, trial: usize) -> Result<WeightedGraph> {
    let r = sample_reliabilities(t, p.base_seed, trial as u64);
    build_modified_graph(t, &r, p.weight)
}

fn distance_graph(t: &Topology) -> Result<WeightedGraph> {
    let r = ReliabilityAssignment::uniform(t.node_count(), 1.0)?;
    build_modified_graph(t, &r, WeightParams::new(1.0)?)
}

/// Coverage curves for several selection orders sharing one evaluation
/// stream. Counts are integers, so the trial average is exact.
pub fn cpc_curves(
    t: &Topology,
    orders: &[(SelectionMethod, &[NodeId])],
    k_max: usize,
    p: &ScoreParams,
    opts: &CpcOptions,
) -> Result<Vec<CpcCurve>> {
    let n = t.node_count();
    if k_max == 0 || k_max > n {
        return Err(Error::Domain(format!("k_max = {k_max} outside [1, {n}]")));
    }
    for (_, order) in orders {
        if order.len() < k_max {
            return Err(Error::Domain(format!(
                "ranking has {} nodes, k_max is {k_max}",
                order.len()
            )));
        }
        membership(n, order)?;
    }
    p.validate()?;
    let plain: Vec<&[NodeId]> = orders.iter().map(|(_, o)| *o).collect();

    let (totals, evaluations) = match opts.graph {
        CpcGraph::Distance => (covered_counts(&distance_graph(t)?, &plain, k_max, opts)?, 1),
        CpcGraph::Trials => {
            let per_trial: Vec<Result<Vec<Vec<u64>>>> = (0..p.trials)
                .into_par_iter()
                .map(|i| covered_counts(&evaluation_graph(t, p, i)?, &plain, k_max, opts))
                .collect();
            let mut totals = vec![vec![0u64; k_max]; orders.len()];
            for counts in per_trial {
                for (total, c) in totals.iter_mut().zip(counts?) {
                    total.iter_mut().zip(c).for_each(|(a, b)| *a += b);
                }
            }
            (totals, p.trials)
        }
    };

    let denom = (n * (n - 1) / 2 * evaluations) as f64;
    Ok(orders
        .iter()
        .zip(totals)
        .map(|((method, _), counts)| CpcCurve {
            method: *method,
            points: counts
                .into_iter()
                .enumerate()
                .map(|(i, c)| CurvePoint {
                    k: i + 1,
                    coverage_pct: 100.0 * c as f64 / denom,
                })
                .collect(),
        })
        .collect())
}

/// Coverage curve of one ranking.
pub fn cpc_curve(
    t: &Topology,
    r: &Ranking,
    k_max: usize,
    eval_params: &ScoreParams,
    opts: &CpcOptions,
) -> Result<CpcCurve> {
    let order = r.order();
    let mut curves = cpc_curves(
        t,
        &[(SelectionMethod::Composite, &order)],
        k_max,
        eval_params,
        opts,
    )?;
    Ok(curves.remove(0))
}

/// Nodes by descending degree, ties by ascending id.
pub fn degree_order(t: &Topology) -> Vec<NodeId> {
    order_by_score(&degree_centrality(t).values)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaPoint {
    pub k: usize,
    pub composite_pct: f64,
    pub degree_pct: f64,
    /// `composite_pct - degree_pct`, percentage points.
    pub delta_pct: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub ranking: Ranking,
    pub composite: CpcCurve,
    pub degree: CpcCurve,
    pub delta: Vec<DeltaPoint>,
}

/// Composite-score selection against the degree-centrality baseline.
pub fn compare_baselines(
    t: &Topology,
    p: &ScoreParams,
    k_max: usize,
    opts: &CpcOptions,
) -> Result<Comparison> {
    let ranking = monte_carlo_rank(t, p)?;
    compare_with_ranking(t, ranking, p, k_max, opts)
}

/// Like [`compare_baselines`] with an already computed ranking.
pub fn compare_with_ranking(
    t: &Topology,
    ranking: Ranking,
    p: &ScoreParams,
    k_max: usize,
    opts: &CpcOptions,
) -> Result<Comparison> {
    let composite_order = ranking.order();
    let degree = degree_order(t);
    let mut curves = cpc_curves(
        t,
        &[
            (SelectionMethod::Composite, &composite_order),
            (SelectionMethod::Degree, &degree),
        ],
        k_max,
        p,
        opts,
    )?;
    let degree = curves.pop().expect("two curves");
    let composite = curves.pop().expect("two curves");
    let delta = composite
        .points
        .iter()
        .zip(&degree.points)
        .map(|(c, d)| DeltaPoint {
            k: c.k,
            composite_pct: c.coverage_pct,
            degree_pct: d.coverage_pct,
            delta_pct: c.coverage_pct - d.coverage_pct,
        })
        .collect();
    Ok(Comparison {
        ranking,
        composite,
        degree,
        delta,
    })
}
