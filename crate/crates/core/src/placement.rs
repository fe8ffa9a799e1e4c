//! Composite scoring and Monte Carlo ranking of repeater candidates.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::centrality::{betweenness, eigenvector, EcMode, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::reliability::{build_modified_graph, sample_reliabilities, WeightParams};
use crate::topology::{NodeId, Topology};

/// Scores closer than this are ordered by node id.
pub const SCORE_TIE_RESOLUTION: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreParams {
    pub beta: f64,
    pub weight: WeightParams,
    pub trials: usize,
    pub base_seed: u64,
    pub ec_mode: EcMode,
    pub ec_tol: f64,
    pub ec_max_iter: usize,
}

impl Default for ScoreParams {
    fn default() -> Self {
        ScoreParams {
            beta: 0.5,
            weight: WeightParams::default(),
            trials: 1000,
            base_seed: 42,
            ec_mode: EcMode::InverseWeight,
            ec_tol: DEFAULT_TOL,
            ec_max_iter: DEFAULT_MAX_ITER,
        }
    }
}

impl ScoreParams {
    pub fn new(alpha: f64, beta: f64, trials: usize, base_seed: u64) -> Result<Self> {
        let p = ScoreParams {
            beta,
            weight: WeightParams::new(alpha)?,
            trials,
            base_seed,
            ..Default::default()
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_ec_mode(mut self, mode: EcMode) -> Self {
        self.ec_mode = mode;
        self
    }

    pub fn alpha(&self) -> f64 {
        self.weight.alpha()
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(Error::Domain(format!("beta {} outside [0, 1]", self.beta)));
        }
        if self.trials == 0 {
            return Err(Error::Domain("trials must be at least 1".into()));
        }
        WeightParams::new(self.weight.alpha())?;
        Ok(())
    }
}

/// `beta * bc + (1 - beta) * ec`.
pub fn composite_score(bc: f64, ec: f64, beta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::Domain(format!("beta {beta} outside [0, 1]")));
    }
    if !(bc >= 0.0 && ec >= 0.0) {
        return Err(Error::Domain(format!(
            "centralities must be non-negative (bc {bc}, ec {ec})"
        )));
    }
    Ok(beta * bc + (1.0 - beta) * ec)
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Per-node betweenness and eigenvector centrality for one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialCentrality {
    pub bc: Vec<f64>,
    pub ec: Vec<f64>,
}

/// Centralities of trial `trial` of the reliability stream.
pub fn trial_centrality(t: &Topology, p: &ScoreParams, trial: usize) -> Result<TrialCentrality> {
    let r = sample_reliabilities(t, p.base_seed, trial as u64);
    let g = build_modified_graph(t, &r, p.weight)?;
    let bc = betweenness(&g)?.values;
    let ec = eigenvector(&g, p.ec_mode, p.ec_tol, p.ec_max_iter)
        .map_err(|e| match e {
            Error::NoConvergence { max_iter, .. } => Error::NoConvergence {
                max_iter,
                trial: Some(trial),
            },
            other => other,
        })?
        .centrality
        .values;
    Ok(TrialCentrality { bc, ec })
}

/// Trial-averaged centralities; ranking from these for any `beta` needs no
/// further trials.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanCentralities {
    pub mean_bc: Vec<f64>,
    pub mean_ec: Vec<f64>,
    pub params: ScoreParams,
}

/// Runs every trial (in parallel on the current rayon pool) and averages
/// the per-node centralities in ascending trial order.
pub fn monte_carlo_centralities(t: &Topology, p: &ScoreParams) -> Result<MeanCentralities> {
    p.validate()?;
    let per_trial: Vec<Result<TrialCentrality>> = (0..p.trials)
        .into_par_iter()
        .map(|i| trial_centrality(t, p, i))
        .collect();

    let n = t.node_count();
    let mut bc_sum = vec![CompensatedSum::default(); n];
    let mut ec_sum = vec![CompensatedSum::default(); n];
    for result in per_trial {
        let trial = result?;
        for v in 0..n {
            bc_sum[v].add(trial.bc[v]);
            ec_sum[v].add(trial.ec[v]);
        }
    }
    let trials = p.trials as f64;
    Ok(MeanCentralities {
        mean_bc: bc_sum.iter().map(|s| s.total() / trials).collect(),
        mean_ec: ec_sum.iter().map(|s| s.total() / trials).collect(),
        params: *p,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankEntry {
    pub node: NodeId,
    pub total_score: f64,
    pub mean_bc: f64,
    pub mean_ec: f64,
}

/// Nodes in descending composite score, ties by ascending id.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    pub entries: Vec<RankEntry>,
    pub params: ScoreParams,
}

/// Sort key for a score; values within [`SCORE_TIE_RESOLUTION`] collapse.
pub fn score_key(score: f64) -> i64 {
    (score / SCORE_TIE_RESOLUTION).round() as i64
}

/// Sorts nodes by descending `score`, ties by ascending id.
pub fn order_by_score(scores: &[f64]) -> Vec<NodeId> {
    let mut ids: Vec<NodeId> = (0..scores.len()).map(NodeId).collect();
    ids.sort_by_key(|v| (std::cmp::Reverse(score_key(scores[v.0])), *v));
    ids
}

impl MeanCentralities {
    /// Ranks with a different `beta` than the one the trials ran with.
    pub fn rank_with_beta(&self, beta: f64) -> Result<Ranking> {
        let mut params = self.params;
        params.beta = beta;
        params.validate()?;
        let scores = self
            .mean_bc
            .iter()
            .zip(&self.mean_ec)
            .map(|(&bc, &ec)| composite_score(bc, ec, beta))
            .collect::<Result<Vec<f64>>>()?;
        let entries = order_by_score(&scores)
            .into_iter()
            .map(|v| RankEntry {
                node: v,
                total_score: scores[v.0],
                mean_bc: self.mean_bc[v.0],
                mean_ec: self.mean_ec[v.0],
            })
            .collect();
        Ok(Ranking { entries, params })
    }

    pub fn rank(&self) -> Result<Ranking> {
        self.rank_with_beta(self.params.beta)
    }
}

/// Full ranking pipeline: sample, weight, score, average, sort.
pub fn monte_carlo_rank(t: &Topology, p: &ScoreParams) -> Result<Ranking> {
    monte_carlo_centralities(t, p)?.rank()
}

impl Ranking {
    pub fn order(&self) -> Vec<NodeId> {
        self.entries.iter().map(|e| e.node).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// First `k` nodes of the ranking.
pub fn top_k(r: &Ranking, k: usize) -> Result<Vec<NodeId>> {
    if k == 0 || k > r.len() {
        return Err(Error::Domain(format!("k = {k} outside [1, {}]", r.len())));
    }
    Ok(r.entries[..k].iter().map(|e| e.node).collect())
}
