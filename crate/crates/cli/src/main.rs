//! `trnplace`: rank trusted repeater node sites and evaluate path coverage.

mod svg;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use trn_core::centrality::EcMode;
use trn_core::evaluation::{
    compare_with_ranking, cpc_curves, degree_order, CpcGraph, CpcOptions, EndpointMode,
    PathSemantics, SelectionMethod,
};
use trn_core::placement::{monte_carlo_rank, ScoreParams};
use trn_core::report;
use trn_core::topology::{generate_topology, parse_topology, GeneratorModel, TopologyFormat};
use trn_core::{Error, Topology};

const TOOL_VERSION: &str = concat!("trnplace ", env!("CARGO_PKG_VERSION"));

#[derive(Parser)]
#[command(
    name = "trnplace",
    version,
    about = "Reliability-aware trusted repeater node placement"
)]
struct Cli {
    /// Worker threads for trial evaluation (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a topology file and print its statistics.
    Validate {
        input: PathBuf,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Rank nodes by trial-averaged composite score.
    Rank {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        score: ScoreArgs,
        /// Ranking CSV path; a JSON sidecar is written next to it.
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Cumulative path coverage curve of one selection method.
    Cpc {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        score: ScoreArgs,
        #[command(flatten)]
        eval: EvalArgs,
        /// Ranking CSV from `rank`; computed on the fly when omitted.
        #[arg(long)]
        ranking: Option<PathBuf>,
        /// `composite` or `degree`.
        #[arg(long)]
        method: Option<String>,
        /// Curve CSV path; a JSON sidecar is written next to it.
        #[arg(long, short)]
        output: PathBuf,
        /// Also write an SVG chart next to the CSV.
        #[arg(long)]
        svg: bool,
    },
    /// Composite-score selection against the degree-centrality baseline.
    Compare {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        score: ScoreArgs,
        #[command(flatten)]
        eval: EvalArgs,
        /// Comparison CSV path; a JSON sidecar is written next to it.
        #[arg(long, short)]
        output: PathBuf,
        /// Also write an SVG chart with both curves next to the CSV.
        #[arg(long)]
        svg: bool,
    },
    /// Generate a synthetic topology JSON.
    Gen {
        /// `ring-chords` or `grid-diag`.
        #[arg(long, default_value = "ring-chords")]
        model: String,
        #[arg(long, default_value_t = 28)]
        nodes: usize,
        #[arg(long, default_value_t = 52)]
        links: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Defaults to standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FormatArg {
    /// `json` or `edgelist`; guessed from the extension when omitted.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct InputArgs {
    /// Topology file; taken from `--params` when omitted.
    #[arg(long, short)]
    input: Option<PathBuf>,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct ScoreArgs {
    /// Replay the parameters of a JSON sidecar; explicit flags win.
    #[arg(long)]
    params: Option<PathBuf>,
    /// Distance share of the link weight, in [0, 1] (default 0.5).
    #[arg(long)]
    alpha: Option<f64>,
    /// Betweenness share of the composite score, in [0, 1] (default 0.5).
    #[arg(long)]
    beta: Option<f64>,
    /// Reliability trials to average over (default 1000).
    #[arg(long)]
    trials: Option<usize>,
    /// Base seed of the reliability streams (default 42).
    #[arg(long)]
    seed: Option<u64>,
    /// `inverse-weight`, `unweighted` or `raw-weight`.
    #[arg(long)]
    ec_mode: Option<String>,
}

#[derive(Args)]
struct EvalArgs {
    /// Largest number of selected repeaters (defaults to node count).
    #[arg(long)]
    k_max: Option<usize>,
    /// `interior` or `include`.
    #[arg(long)]
    endpoints: Option<String>,
    /// `trials` or `distance`.
    #[arg(long)]
    cpc_graph: Option<String>,
    /// `canonical` or `any`.
    #[arg(long)]
    path_semantics: Option<String>,
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct RunParams {
    input: PathBuf,
    format: String,
    alpha: f64,
    beta: f64,
    trials: usize,
    seed: u64,
    ec_mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    endpoints: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cpc_graph: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    path_semantics: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ranking: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Sidecar {
    command: String,
    params: RunParams,
    topology_sha256: String,
    tool_version: String,
}

enum CliError {
    /// Unreadable or invalid input: exit 1.
    Input(String),
    /// Out-of-range or malformed parameters: exit 2.
    Params(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_) | Error::Domain(_) => CliError::Params(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn io_err(path: &Path, e: io::Error) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

fn parse_opt<T: std::str::FromStr<Err = Error>>(value: Option<&str>, default: T) -> CliResult<T> {
    value.map_or(Ok(default), |s| s.parse().map_err(CliError::from))
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

struct LoadedTopology {
    topology: Topology,
    sha256: String,
    format: TopologyFormat,
}

fn format_name(f: TopologyFormat) -> &'static str {
    match f {
        TopologyFormat::Json => "json",
        TopologyFormat::EdgeList => "edgelist",
    }
}

fn load_topology(path: &Path, format: Option<&str>) -> CliResult<LoadedTopology> {
    let format = match format {
        Some(f) => f.parse()?,
        None => TopologyFormat::from_path(path),
    };
    let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
    let topology = parse_topology(bytes.as_slice(), format)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(LoadedTopology {
        topology,
        sha256: sha256_hex(&bytes),
        format,
    })
}

fn read_sidecar(path: &Path) -> CliResult<Sidecar> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Params(format!("{}: invalid sidecar: {e}", path.display())))
}

/// Merges explicit flags over replayed sidecar values over defaults.
fn resolve(
    input: &InputArgs,
    score: &ScoreArgs,
    eval: Option<&EvalArgs>,
) -> CliResult<(RunParams, Option<String>)> {
    let replay = score.params.as_deref().map(read_sidecar).transpose()?;
    let base = replay.as_ref().map(|s| &s.params);
    let defaults = ScoreParams::default();
    let input_path = input
        .input
        .clone()
        .or_else(|| base.map(|b| b.input.clone()))
        .ok_or_else(|| CliError::Params("no input topology given (--input or --params)".into()))?;
    let format = input
        .format
        .format
        .clone()
        .or_else(|| base.map(|b| b.format.clone()))
        .unwrap_or_else(|| format_name(TopologyFormat::from_path(&input_path)).to_string());
    let pick = |flag: Option<String>, from: Option<String>| flag.or(from);
    let params = RunParams {
        input: input_path,
        format,
        alpha: score
            .alpha
            .or(base.map(|b| b.alpha))
            .unwrap_or(defaults.alpha()),
        beta: score.beta.or(base.map(|b| b.beta)).unwrap_or(defaults.beta),
        trials: score
            .trials
            .or(base.map(|b| b.trials))
            .unwrap_or(defaults.trials),
        seed: score
            .seed
            .or(base.map(|b| b.seed))
            .unwrap_or(defaults.base_seed),
        ec_mode: score
            .ec_mode
            .clone()
            .or(base.map(|b| b.ec_mode.clone()))
            .unwrap_or_else(|| defaults.ec_mode.as_str().to_string()),
        k_max: eval.and_then(|e| e.k_max).or(base.and_then(|b| b.k_max)),
        endpoints: pick(
            eval.and_then(|e| e.endpoints.clone()),
            base.and_then(|b| b.endpoints.clone()),
        ),
        cpc_graph: pick(
            eval.and_then(|e| e.cpc_graph.clone()),
            base.and_then(|b| b.cpc_graph.clone()),
        ),
        path_semantics: pick(
            eval.and_then(|e| e.path_semantics.clone()),
            base.and_then(|b| b.path_semantics.clone()),
        ),
        method: base.and_then(|b| b.method.clone()),
        ranking: base.and_then(|b| b.ranking.clone()),
    };
    Ok((params, replay.map(|s| s.topology_sha256)))
}

fn score_params(p: &RunParams) -> CliResult<ScoreParams> {
    let ec_mode: EcMode = p.ec_mode.parse()?;
    Ok(ScoreParams::new(p.alpha, p.beta, p.trials, p.seed)?.with_ec_mode(ec_mode))
}

fn cpc_options(p: &RunParams) -> CliResult<CpcOptions> {
    Ok(CpcOptions {
        endpoint_mode: parse_opt(p.endpoints.as_deref(), EndpointMode::default())?,
        semantics: parse_opt(p.path_semantics.as_deref(), PathSemantics::default())?,
        graph: parse_opt(p.cpc_graph.as_deref(), CpcGraph::default())?,
    })
}

/// Fills in the defaults of evaluation options so sidecars are explicit.
fn pin_eval_defaults(p: &mut RunParams, n: usize, opts: &CpcOptions) {
    p.k_max.get_or_insert(n);
    p.endpoints = Some(opts.endpoint_mode.as_str().to_string());
    p.cpc_graph = Some(opts.graph.as_str().to_string());
    p.path_semantics = Some(opts.semantics.as_str().to_string());
}

fn load_for(p: &RunParams, replayed_sha: Option<&str>) -> CliResult<LoadedTopology> {
    let loaded = load_topology(&p.input, Some(&p.format))?;
    if let Some(sha) = replayed_sha {
        if sha != loaded.sha256 {
            eprintln!(
                "warning: {} differs from the topology recorded in the sidecar",
                p.input.display()
            );
        }
    }
    Ok(loaded)
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|e| io_err(path, e))
}

fn write_sidecar(output: &Path, command: &str, params: &RunParams, sha: &str) -> CliResult<()> {
    let sidecar = Sidecar {
        command: command.to_string(),
        params: params.clone(),
        topology_sha256: sha.to_string(),
        tool_version: TOOL_VERSION.to_string(),
    };
    let mut text = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
    text.push('\n');
    write_file(&output.with_extension("json"), text.as_bytes())
}

fn csv_bytes(f: impl FnOnce(&mut Vec<u8>) -> trn_core::Result<()>) -> CliResult<Vec<u8>> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    Ok(buf)
}

fn validate(input: &Path, format: Option<&str>) -> CliResult<()> {
    let loaded = load_topology(input, format)?;
    let t = &loaded.topology;
    let (lo, hi) = t.distance_range();
    let fixed = t.nodes().iter().filter(|n| n.reliability.is_some()).count();
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "name: {}", t.name());
    let _ = writeln!(out, "format: {}", format_name(loaded.format));
    let _ = writeln!(out, "nodes: {}", t.node_count());
    let _ = writeln!(out, "links: {}", t.link_count());
    let _ = writeln!(out, "connected: yes");
    let _ = writeln!(out, "distance_km: min {lo} max {hi}");
    let _ = writeln!(out, "fixed_reliabilities: {fixed}");
    let _ = writeln!(out, "sha256: {}", loaded.sha256);
    Ok(())
}

fn rank(input: &InputArgs, score: &ScoreArgs, output: &Path) -> CliResult<()> {
    let (params, sha) = resolve(input, score, None)?;
    let sp = score_params(&params)?;
    let loaded = load_for(&params, sha.as_deref())?;
    let ranking = monte_carlo_rank(&loaded.topology, &sp)?;
    let csv = csv_bytes(|b| report::write_ranking_csv(b, &loaded.topology, &ranking))?;
    write_file(output, &csv)?;
    write_sidecar(output, "rank", &params, &loaded.sha256)
}

fn method_from(s: &str) -> CliResult<SelectionMethod> {
    match s {
        "composite" => Ok(SelectionMethod::Composite),
        "degree" => Ok(SelectionMethod::Degree),
        other => Err(CliError::Params(format!("unknown method `{other}`"))),
    }
}

fn curve_points(points: &[trn_core::evaluation::CurvePoint]) -> Vec<(f64, f64)> {
    points
        .iter()
        .map(|p| (p.k as f64, p.coverage_pct))
        .collect()
}

fn cpc(
    input: &InputArgs,
    score: &ScoreArgs,
    eval: &EvalArgs,
    ranking: Option<&Path>,
    method: Option<&str>,
    output: &Path,
    want_svg: bool,
) -> CliResult<()> {
    let (mut params, sha) = resolve(input, score, Some(eval))?;
    if let Some(m) = method {
        params.method = Some(m.to_string());
    }
    if let Some(r) = ranking {
        params.ranking = Some(r.to_path_buf());
    }
    let method = method_from(params.method.get_or_insert_with(|| "composite".into()))?;
    let sp = score_params(&params)?;
    let opts = cpc_options(&params)?;
    let loaded = load_for(&params, sha.as_deref())?;
    let t = &loaded.topology;
    pin_eval_defaults(&mut params, t.node_count(), &opts);
    let k_max = params.k_max.expect("pinned");

    let order = match (method, &params.ranking) {
        (SelectionMethod::Degree, _) => degree_order(t),
        (SelectionMethod::Composite, Some(path)) => {
            let file = fs::File::open(path).map_err(|e| io_err(path, e))?;
            report::read_ranking_csv(file, t)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
        }
        (SelectionMethod::Composite, None) => monte_carlo_rank(t, &sp)?.order(),
    };
    let curve = cpc_curves(t, &[(method, &order)], k_max, &sp, &opts)?.remove(0);
    write_file(output, &csv_bytes(|b| report::write_curve_csv(b, &curve))?)?;
    if want_svg {
        let chart = svg::Chart {
            title: &format!("Cumulative path coverage ({})", method.as_str()),
            x_label: "Number of top-ranked TRNs (K)",
            y_label: "Shortest paths covered (%)",
            series: vec![svg::Series {
                name: method.as_str(),
                points: curve_points(&curve.points),
            }],
        };
        write_file(&output.with_extension("svg"), chart.render().as_bytes())?;
    }
    write_sidecar(output, "cpc", &params, &loaded.sha256)
}

fn compare(
    input: &InputArgs,
    score: &ScoreArgs,
    eval: &EvalArgs,
    output: &Path,
    want_svg: bool,
) -> CliResult<()> {
    let (mut params, sha) = resolve(input, score, Some(eval))?;
    let sp = score_params(&params)?;
    let opts = cpc_options(&params)?;
    let loaded = load_for(&params, sha.as_deref())?;
    let t = &loaded.topology;
    pin_eval_defaults(&mut params, t.node_count(), &opts);
    let k_max = params.k_max.expect("pinned");

    let ranking = monte_carlo_rank(t, &sp)?;
    let cmp = compare_with_ranking(t, ranking, &sp, k_max, &opts)?;
    write_file(output, &csv_bytes(|b| report::write_compare_csv(b, &cmp))?)?;
    if want_svg {
        let chart = svg::Chart {
            title: "Cumulative path coverage: composite score vs degree centrality",
            x_label: "Number of top-ranked TRNs (K)",
            y_label: "Shortest paths covered (%)",
            series: vec![
                svg::Series {
                    name: "composite score",
                    points: curve_points(&cmp.composite.points),
                },
                svg::Series {
                    name: "degree centrality",
                    points: curve_points(&cmp.degree.points),
                },
            ],
        };
        write_file(&output.with_extension("svg"), chart.render().as_bytes())?;
    }
    write_sidecar(output, "compare", &params, &loaded.sha256)
}

fn generate(
    model: &str,
    nodes: usize,
    links: usize,
    seed: u64,
    output: Option<&Path>,
) -> CliResult<()> {
    let model: GeneratorModel = model.parse()?;
    let t = generate_topology(model, nodes, links, seed)?;
    let json = t.to_json();
    match output {
        Some(path) => write_file(path, json.as_bytes()),
        None => io::stdout()
            .write_all(json.as_bytes())
            .map_err(|e| CliError::Input(e.to_string())),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Validate { input, format } => validate(input, format.format.as_deref()),
        Command::Rank {
            input,
            score,
            output,
        } => rank(input, score, output),
        Command::Cpc {
            input,
            score,
            eval,
            ranking,
            method,
            output,
            svg,
        } => cpc(
            input,
            score,
            eval,
            ranking.as_deref(),
            method.as_deref(),
            output,
            *svg,
        ),
        Command::Compare {
            input,
            score,
            eval,
            output,
            svg,
        } => compare(input, score, eval, output, *svg),
        Command::Gen {
            model,
            nodes,
            links,
            seed,
            output,
        } => generate(model, *nodes, *links, *seed, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.threads {
        Some(0) => Err(CliError::Params("--threads must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(cli)),
            Err(e) => Err(CliError::Params(e.to_string())),
        },
        None => run(cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Params(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
