use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LinkSpec, NodeKey, NodeSpec, Topology};
use crate::error::{Error, Result};

const MIN_DISTANCE_DECIKM: u32 = 100;
const MAX_DISTANCE_DECIKM: u32 = 800;

/// Synthetic metro-like topology families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorModel {
    /// An `n`-cycle plus `m - n` random chords.
    RingChords,
    /// A near-square grid (row-major, last row possibly partial) whose
    /// spanning comb is extended with random grid and diagonal links.
    GridDiag,
}

impl FromStr for GeneratorModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ring_chords" | "ring-chords" => Ok(GeneratorModel::RingChords),
            "grid_diag" | "grid-diag" => Ok(GeneratorModel::GridDiag),
            other => Err(Error::InvalidParams(format!(
                "unknown generator model `{other}`"
            ))),
        }
    }
}

impl GeneratorModel {
    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorModel::RingChords => "ring_chords",
            GeneratorModel::GridDiag => "grid_diag",
        }
    }
}

/// Generates a connected topology with exactly `m` links.
///
/// Link distances are uniform on [10, 80] km at 0.1 km resolution. Output is
/// a pure function of `(model, n, m, seed)`.
pub fn generate_topology(model: GeneratorModel, n: usize, m: usize, seed: u64) -> Result<Topology> {
    if n < 3 {
        return Err(Error::InvalidParams(format!(
            "need at least 3 nodes, got {n}"
        )));
    }
    if m < n {
        return Err(Error::InvalidParams(format!(
            "link count {m} is below node count {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = match model {
        GeneratorModel::RingChords => ring_chords(n, m, &mut rng)?,
        GeneratorModel::GridDiag => grid_diag(n, m, &mut rng)?,
    };

    let nodes = (0..n)
        .map(|i| NodeSpec::new(NodeKey::Int(i as i64)))
        .collect();
    let links = pairs
        .into_iter()
        .map(|(u, v)| {
            let decikm = rng.random_range(MIN_DISTANCE_DECIKM..=MAX_DISTANCE_DECIKM);
            LinkSpec {
                source: NodeKey::Int(u as i64),
                target: NodeKey::Int(v as i64),
                distance_km: f64::from(decikm) / 10.0,
            }
        })
        .collect();
    let name = format!("{}-n{n}-m{m}-s{seed}", model.as_str());
    Ok(Topology::from_specs(name, nodes, links)?)
}

fn pick_extra(
    base: Vec<(usize, usize)>,
    mut candidates: Vec<(usize, usize)>,
    m: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(usize, usize)>> {
    let extra = m - base.len();
    if extra > candidates.len() {
        return Err(Error::InvalidParams(format!(
            "link count {m} exceeds the maximum {} for this model",
            base.len() + candidates.len()
        )));
    }
    let (chosen, _) = candidates.partial_shuffle(rng, extra);
    let mut chosen = chosen.to_vec();
    chosen.sort_unstable();
    let mut out = base;
    out.extend(chosen);
    Ok(out)
}

fn ring_chords(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(usize, usize)>> {
    let ring: Vec<(usize, usize)> = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            (i.min(j), i.max(j))
        })
        .collect();
    let chords = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| v - u != 1 && !(u == 0 && v == n - 1))
        .collect();
    pick_extra(ring, chords, m, rng)
}

fn grid_diag(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(usize, usize)>> {
    let cols = (n as f64).sqrt().ceil() as usize;
    let at = |r: usize, c: usize| r * cols + c;
    let mut base = Vec::new();
    let mut rest = Vec::new();
    for i in 0..n {
        let (r, c) = (i / cols, i % cols);
        if c + 1 < cols && i + 1 < n {
            base.push((i, i + 1));
        }
        let down = at(r + 1, c);
        if down < n {
            if c == 0 {
                base.push((i, down));
            } else {
                rest.push((i, down));
            }
        }
        if c + 1 < cols && at(r + 1, c + 1) < n {
            rest.push((i, at(r + 1, c + 1)));
        }
        if c > 0 && at(r + 1, c - 1) < n {
            rest.push((i, at(r + 1, c - 1)));
        }
    }
    pick_extra(base, rest, m, rng)
}
