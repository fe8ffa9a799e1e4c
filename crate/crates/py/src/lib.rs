//! Python bindings for `trn_core`.
//!
//! ```python
//! import trnplace
//! topo = trnplace.Topology.metro28()
//! ranking = trnplace.rank(topo, trials=200)
//! print(ranking.top_k(8))
//! ```

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use trn_core::centrality::{self, EcMode};
use trn_core::evaluation::{
    self, CpcGraph, CpcOptions, EndpointMode, PathSemantics, SelectionMethod,
};
use trn_core::placement::{self, ScoreParams};
use trn_core::reliability::{self, WeightParams, WeightedGraph};
use trn_core::topology::{self, GeneratorModel, NodeId, TopologyFormat};
use trn_core::{report, Error};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NoConvergence { .. } | Error::Io(_) => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(to_py)
}

/// A validated network topology with canonical node ids `0..n`.
#[pyclass(name = "Topology", frozen)]
#[derive(Clone)]
struct PyTopology {
    inner: trn_core::Topology,
}

#[pymethods]
impl PyTopology {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        topology::parse_topology(text.as_bytes(), TopologyFormat::Json)
            .map(|inner| PyTopology { inner })
            .map_err(to_py)
    }

    #[staticmethod]
    fn from_edgelist(text: &str) -> PyResult<Self> {
        topology::parse_topology(text.as_bytes(), TopologyFormat::EdgeList)
            .map(|inner| PyTopology { inner })
            .map_err(to_py)
    }

    /// Reads a file; `.json` files are parsed as JSON, others as edge lists.
    #[staticmethod]
    fn from_file(path: std::path::PathBuf) -> PyResult<Self> {
        let file = std::fs::File::open(&path)
            .map_err(|e| PyValueError::new_err(format!("{}: {e}", path.display())))?;
        topology::parse_topology(file, TopologyFormat::from_path(&path))
            .map(|inner| PyTopology { inner })
            .map_err(to_py)
    }

    #[staticmethod]
    #[pyo3(signature = (model="ring_chords", nodes=28, links=52, seed=7))]
    fn generate(model: &str, nodes: usize, links: usize, seed: u64) -> PyResult<Self> {
        let model: GeneratorModel = parse(model)?;
        topology::generate_topology(model, nodes, links, seed)
            .map(|inner| PyTopology { inner })
            .map_err(to_py)
    }

    /// The bundled 28-node / 52-link metro topology.
    #[staticmethod]
    fn metro28() -> Self {
        PyTopology {
            inner: trn_core::metro28(),
        }
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn link_count(&self) -> usize {
        self.inner.link_count()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner
            .nodes()
            .iter()
            .map(|n| n.display_label())
            .collect()
    }

    /// `(u, v, distance_km)` per link.
    fn links(&self) -> Vec<(usize, usize, f64)> {
        self.inner
            .links()
            .iter()
            .map(|l| (l.u.0, l.v.0, l.distance_km))
            .collect()
    }

    fn normalized_distances(&self) -> Vec<f64> {
        topology::normalize_distances(&self.inner)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "Topology(name={:?}, nodes={}, links={})",
            self.inner.name(),
            self.inner.node_count(),
            self.inner.link_count()
        )
    }
}

/// Ranked nodes with trial-averaged scores.
#[pyclass(name = "Ranking", frozen)]
struct PyRanking {
    inner: placement::Ranking,
    topology: trn_core::Topology,
}

#[pymethods]
impl PyRanking {
    /// Node ids, best first.
    fn order(&self) -> Vec<usize> {
        self.inner.entries.iter().map(|e| e.node.0).collect()
    }

    fn top_k(&self, k: usize) -> PyResult<Vec<usize>> {
        placement::top_k(&self.inner, k)
            .map(|v| v.into_iter().map(|n| n.0).collect())
            .map_err(to_py)
    }

    /// `(node, label, total_score, mean_bc, mean_ec)` in rank order.
    fn entries(&self) -> Vec<(usize, String, f64, f64, f64)> {
        self.inner
            .entries
            .iter()
            .map(|e| {
                (
                    e.node.0,
                    self.topology.nodes()[e.node.0].display_label(),
                    e.total_score,
                    e.mean_bc,
                    e.mean_ec,
                )
            })
            .collect()
    }

    fn to_csv(&self) -> PyResult<String> {
        let mut buf = Vec::new();
        report::write_ranking_csv(&mut buf, &self.topology, &self.inner).map_err(to_py)?;
        Ok(String::from_utf8(buf).expect("csv is utf-8"))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

fn score_params(
    alpha: f64,
    beta: f64,
    trials: usize,
    seed: u64,
    ec_mode: &str,
) -> PyResult<ScoreParams> {
    Ok(ScoreParams::new(alpha, beta, trials, seed)
        .map_err(to_py)?
        .with_ec_mode(parse(ec_mode)?))
}

fn cpc_options(endpoints: &str, cpc_graph: &str, path_semantics: &str) -> PyResult<CpcOptions> {
    Ok(CpcOptions {
        endpoint_mode: parse::<EndpointMode>(endpoints)?,
        graph: parse::<CpcGraph>(cpc_graph)?,
        semantics: parse::<PathSemantics>(path_semantics)?,
    })
}

fn graph(n: usize, edges: Vec<(usize, usize, f64)>) -> PyResult<WeightedGraph> {
    WeightedGraph::from_edges(n, &edges).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (d_norm, r_u, r_v, alpha=0.5))]
fn modified_weight(d_norm: f64, r_u: f64, r_v: f64, alpha: f64) -> PyResult<f64> {
    let p = WeightParams::new(alpha).map_err(to_py)?;
    reliability::modified_weight(p, d_norm, r_u, r_v).map_err(to_py)
}

/// Pair-normalized betweenness of a weighted graph on nodes `0..n`.
#[pyfunction]
fn betweenness(n: usize, edges: Vec<(usize, usize, f64)>) -> PyResult<Vec<f64>> {
    let g = graph(n, edges)?;
    centrality::betweenness(&g).map(|c| c.values).map_err(to_py)
}

/// Returns `(vector, eigenvalue)`.
#[pyfunction]
#[pyo3(signature = (n, edges, mode="inverse-weight", tol=centrality::DEFAULT_TOL, max_iter=centrality::DEFAULT_MAX_ITER))]
fn eigenvector(
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    mode: &str,
    tol: f64,
    max_iter: usize,
) -> PyResult<(Vec<f64>, f64)> {
    let g = graph(n, edges)?;
    let mode: EcMode = parse(mode)?;
    centrality::eigenvector(&g, mode, tol, max_iter)
        .map(|r| (r.centrality.values, r.eigenvalue))
        .map_err(to_py)
}

#[pyfunction]
fn degree_centrality(topology: &PyTopology) -> Vec<f64> {
    centrality::degree_centrality(&topology.inner).values
}

#[pyfunction]
#[pyo3(signature = (topology, alpha=0.5, beta=0.5, trials=1000, seed=42, ec_mode="inverse-weight"))]
fn rank(
    py: Python<'_>,
    topology: &PyTopology,
    alpha: f64,
    beta: f64,
    trials: usize,
    seed: u64,
    ec_mode: &str,
) -> PyResult<PyRanking> {
    let p = score_params(alpha, beta, trials, seed, ec_mode)?;
    let t = topology.inner.clone();
    let inner = py
        .allow_threads(|| placement::monte_carlo_rank(&t, &p))
        .map_err(to_py)?;
    Ok(PyRanking { inner, topology: t })
}

/// Coverage percentage of `trns` over canonical shortest paths of a
/// weighted graph.
#[pyfunction]
#[pyo3(signature = (n, edges, trns, endpoints="interior"))]
fn cpc(
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    trns: Vec<usize>,
    endpoints: &str,
) -> PyResult<f64> {
    let g = graph(n, edges)?;
    let paths = evaluation::canonical_paths(&g).map_err(to_py)?;
    let trns: Vec<NodeId> = trns.into_iter().map(NodeId).collect();
    evaluation::cpc(&paths, &trns, parse(endpoints)?).map_err(to_py)
}

/// `[(k, coverage_pct)]` for a node order (e.g. `Ranking.order()`).
#[pyfunction]
#[pyo3(signature = (topology, order, k_max=None, alpha=0.5, trials=1000, seed=42,
                    endpoints="interior", cpc_graph="trials", path_semantics="canonical"))]
#[allow(clippy::too_many_arguments)]
fn cpc_curve(
    py: Python<'_>,
    topology: &PyTopology,
    order: Vec<usize>,
    k_max: Option<usize>,
    alpha: f64,
    trials: usize,
    seed: u64,
    endpoints: &str,
    cpc_graph: &str,
    path_semantics: &str,
) -> PyResult<Vec<(usize, f64)>> {
    let p = score_params(alpha, 0.5, trials, seed, "inverse-weight")?;
    let opts = cpc_options(endpoints, cpc_graph, path_semantics)?;
    let t = &topology.inner;
    let order: Vec<NodeId> = order.into_iter().map(NodeId).collect();
    let k_max = k_max.unwrap_or(order.len());
    let curves = py
        .allow_threads(|| {
            evaluation::cpc_curves(t, &[(SelectionMethod::Composite, &order)], k_max, &p, &opts)
        })
        .map_err(to_py)?;
    Ok(curves[0]
        .points
        .iter()
        .map(|p| (p.k, p.coverage_pct))
        .collect())
}

/// Composite vs degree coverage. Returns a dict with `ranking` (node ids),
/// `degree_order`, and `rows` of `(k, composite_pct, degree_pct, delta_pct)`.
#[pyfunction]
#[pyo3(signature = (topology, k_max=None, alpha=0.5, beta=0.5, trials=1000, seed=42,
                    ec_mode="inverse-weight", endpoints="interior", cpc_graph="trials",
                    path_semantics="canonical"))]
#[allow(clippy::too_many_arguments)]
fn compare_baselines<'py>(
    py: Python<'py>,
    topology: &PyTopology,
    k_max: Option<usize>,
    alpha: f64,
    beta: f64,
    trials: usize,
    seed: u64,
    ec_mode: &str,
    endpoints: &str,
    cpc_graph: &str,
    path_semantics: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let p = score_params(alpha, beta, trials, seed, ec_mode)?;
    let opts = cpc_options(endpoints, cpc_graph, path_semantics)?;
    let t = &topology.inner;
    let k_max = k_max.unwrap_or(t.node_count());
    let cmp = py
        .allow_threads(|| evaluation::compare_baselines(t, &p, k_max, &opts))
        .map_err(to_py)?;
    let out = PyDict::new(py);
    out.set_item(
        "ranking",
        cmp.ranking.order().iter().map(|v| v.0).collect::<Vec<_>>(),
    )?;
    out.set_item(
        "degree_order",
        evaluation::degree_order(t)
            .iter()
            .map(|v| v.0)
            .collect::<Vec<_>>(),
    )?;
    out.set_item(
        "rows",
        cmp.delta
            .iter()
            .map(|d| (d.k, d.composite_pct, d.degree_pct, d.delta_pct))
            .collect::<Vec<_>>(),
    )?;
    Ok(out)
}

#[pymodule]
fn trnplace(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTopology>()?;
    m.add_class::<PyRanking>()?;
    m.add_function(wrap_pyfunction!(modified_weight, m)?)?;
    m.add_function(wrap_pyfunction!(betweenness, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvector, m)?)?;
    m.add_function(wrap_pyfunction!(degree_centrality, m)?)?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(cpc, m)?)?;
    m.add_function(wrap_pyfunction!(cpc_curve, m)?)?;
    m.add_function(wrap_pyfunction!(compare_baselines, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
