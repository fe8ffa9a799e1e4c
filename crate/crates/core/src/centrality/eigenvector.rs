use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{CentralityKind, CentralityVector};
use crate::error::{Error, Result};
use crate::reliability::WeightedGraph;
use crate::topology::NodeId;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// How link weights populate the affinity matrix.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EcMode {
    /// `a_uv = 1 / w_uv`: cheap, reliable links bind strongly.
    #[default]
    InverseWeight,
    /// `a_uv = 1` on every link.
    Unweighted,
    /// `a_uv = w_uv`.
    RawWeight,
}

impl EcMode {
    pub fn as_str(self) -> &'static str {
        match self {
            EcMode::InverseWeight => "inverse-weight",
            EcMode::Unweighted => "unweighted",
            EcMode::RawWeight => "raw-weight",
        }
    }

    pub fn affinity(self, weight: f64) -> f64 {
        match self {
            EcMode::InverseWeight => 1.0 / weight,
            EcMode::Unweighted => 1.0,
            EcMode::RawWeight => weight,
        }
    }
}

impl FromStr for EcMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inverse-weight" | "inverse_weight" => Ok(EcMode::InverseWeight),
            "unweighted" => Ok(EcMode::Unweighted),
            "raw-weight" | "raw_weight" => Ok(EcMode::RawWeight),
            other => Err(Error::InvalidParams(format!(
                "unknown eigenvector mode `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenvectorResult {
    /// L2-normalized Perron vector.
    pub centrality: CentralityVector,
    /// Rayleigh quotient `x^T A x` of the final iterate.
    pub eigenvalue: f64,
    pub iterations: usize,
}

fn multiply(affinity: &[Vec<(usize, f64)>], x: &[f64], out: &mut [f64]) {
    for (o, row) in out.iter_mut().zip(affinity) {
        *o = row.iter().map(|&(j, a)| a * x[j]).sum();
    }
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
}

/// Power iteration for the dominant eigenvector of the affinity matrix.
///
/// Iterates on `A + cI` with `c` half the largest affinity row sum. The
/// shift leaves eigenvectors unchanged and breaks the `lambda, -lambda`
/// symmetry of bipartite graphs, which would otherwise make the iterates
/// oscillate. Starts from the uniform vector `1/sqrt(n)`.
pub fn eigenvector(
    g: &WeightedGraph,
    mode: EcMode,
    tol: f64,
    max_iter: usize,
) -> Result<EigenvectorResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    if max_iter == 0 {
        return Err(Error::Domain("max_iter must be at least 1".into()));
    }
    let n = g.node_count();
    let affinity: Vec<Vec<(usize, f64)>> = (0..n)
        .map(|v| {
            g.neighbors(NodeId(v))
                .iter()
                .map(|&(u, w)| (u.0, mode.affinity(w)))
                .collect()
        })
        .collect();
    let shift = 0.5
        * affinity
            .iter()
            .map(|row| row.iter().map(|&(_, a)| a).sum::<f64>())
            .fold(0.0, f64::max);

    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut next = vec![0.0; n];
    for iter in 1..=max_iter {
        multiply(&affinity, &x, &mut next);
        next.iter_mut().zip(&x).for_each(|(y, xi)| *y += shift * xi);
        normalize(&mut next);
        let diff = next
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        std::mem::swap(&mut x, &mut next);
        if diff < tol {
            multiply(&affinity, &x, &mut next);
            let eigenvalue = x.iter().zip(&next).map(|(a, b)| a * b).sum();
            return Ok(EigenvectorResult {
                centrality: CentralityVector {
                    kind: CentralityKind::Eigenvector,
                    values: x,
                },
                eigenvalue,
                iterations: iter,
            });
        }
    }
    Err(Error::NoConvergence {
        max_iter,
        trial: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ec(n: usize, edges: &[(usize, usize, f64)], mode: EcMode) -> EigenvectorResult {
        let g = WeightedGraph::from_edges(n, edges).unwrap();
        eigenvector(&g, mode, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap()
    }

    #[test]
    fn cycle_is_uniform() {
        let r = ec(
            4,
            &[(0, 1, 2.0), (1, 2, 2.0), (2, 3, 2.0), (3, 0, 2.0)],
            EcMode::InverseWeight,
        );
        for v in &r.centrality.values {
            assert!((v - 0.5).abs() < 1e-12);
        }
        assert!((r.eigenvalue - 1.0).abs() < 1e-12);
    }

    #[test]
    fn star_perron_vector() {
        let r = ec(
            4,
            &[(0, 1, 3.0), (0, 2, 3.0), (0, 3, 3.0)],
            EcMode::Unweighted,
        );
        let v = &r.centrality.values;
        assert!((v[0] - 1.0 / 2f64.sqrt()).abs() < 1e-9, "{v:?}");
        for leaf in &v[1..] {
            assert!((leaf - 1.0 / 6f64.sqrt()).abs() < 1e-9);
        }
        assert!((r.eigenvalue - 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn single_edge() {
        for mode in [EcMode::InverseWeight, EcMode::Unweighted, EcMode::RawWeight] {
            let r = ec(2, &[(0, 1, 0.4)], mode);
            for v in &r.centrality.values {
                assert!((v - 0.5f64.sqrt()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn modes_differ_on_weighted_path() {
        let edges = [(0, 1, 0.5), (1, 2, 2.0)];
        let inv = ec(3, &edges, EcMode::InverseWeight).centrality.values;
        let raw = ec(3, &edges, EcMode::RawWeight).centrality.values;
        assert!(inv[0] > inv[2]);
        assert!(raw[0] < raw[2]);
    }

    #[test]
    fn reports_no_convergence() {
        let g = WeightedGraph::from_edges(3, &[(0, 1, 1.0), (1, 2, 5.0)]).unwrap();
        assert!(matches!(
            eigenvector(&g, EcMode::InverseWeight, 1e-300, 3),
            Err(Error::NoConvergence { max_iter: 3, .. })
        ));
        assert!(eigenvector(&g, EcMode::Unweighted, 0.0, 10).is_err());
    }
}
