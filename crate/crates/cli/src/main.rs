//! Command-line front end: reads JSON graphs, classes and diagrams, writes
//! JSON reports.
//!
//! Exit codes: 0 success, 1 invalid input, 2 search budget exceeded,
//! 3 internal invariant violation. Errors are written to stderr as a JSON
//! object `{code, message, location}`.

mod error;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use raag_genus::json::{labels_json, ClassJson, DiagramJson, GraphJson, LabelJson, OrientationJson};
use raag_genus::{
    check_certificate, genus, min_star_cover, tensor_decompose, wedge_decompose, Certificate, ComponentSummary,
    HomologyClass, OrientedGraph, Star, StarCoverError, VertexId, DEFAULT_BUDGET,
};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "raag-genus", version, about = "Genus bounds and surface certificates for RAAG second homology")]
struct Cli {
    /// Largest connected component handed to the exact vertex-cover search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// JSON file `{"oriented_edges": [[tail, head], ...]}` replacing the
    /// default lexicographic orientation.
    #[arg(long, global = true, value_name = "FILE")]
    orientation: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Graph predicates: complete, forest, complete bipartite/multipartite, star.
    Classify { graph: PathBuf },
    /// Rank of the connection matrix and the cap bound.
    CapBound { class: PathBuf },
    /// Genus bounds, with an exact value and certificate when available.
    Genus { class: PathBuf },
    /// Check a certificate against a class.
    Certificate {
        class: PathBuf,
        #[arg(long, value_name = "FILE")]
        verify: PathBuf,
    },
    /// A minimum star cover of the support.
    StarCover { class: PathBuf },
    /// Wedge or pure-tensor decomposition.
    Decompose {
        class: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Validate a square diagram and report its surface and induced class.
    CheckDiagram {
        diagram: PathBuf,
        #[arg(long, value_name = "FILE")]
        class: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Wedge,
    Tensor,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.render().to_string();
            return fail(CliError::invalid("usage", message.trim_end(), None));
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn fail(e: CliError) -> ExitCode {
    let text = serde_json::to_string(&e).expect("error objects serialize");
    eprintln!("{text}");
    e.exit_code()
}

fn read_json<T: DeserializeOwned>(path: &Path, code: &'static str) -> Result<T, CliError> {
    let location = path.display().to_string();
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::invalid("io", format!("cannot read file: {e}"), Some(location.clone())))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::invalid(code, e.to_string(), Some(format!("{location}:{}:{}", e.line(), e.column())))
    })
}

fn emit<T: Serialize>(cli: &Cli, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| {
            CliError::invalid("io", format!("cannot write file: {e}"), Some(path.display().to_string()))
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| {
                CliError::invalid("io", format!("cannot write output: {e}"), None)
            })
        }
    }
}

fn load_orientation(cli: &Cli) -> Result<Option<OrientationJson>, CliError> {
    cli.orientation.as_deref().map(|p| read_json(p, "invalid-json")).transpose()
}

fn load_class(cli: &Cli, path: &Path) -> Result<HomologyClass, CliError> {
    let json: ClassJson = read_json(path, "invalid-json")?;
    let orientation = load_orientation(cli)?;
    json.to_class(orientation.as_ref()).map_err(|e| CliError::from(e).at(&path.display().to_string()))
}

fn names(v: &[VertexId]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[derive(Serialize)]
struct ClassifyReport {
    complete: bool,
    forest: bool,
    complete_bipartite: bool,
    bipartite_parts: Option<[Vec<String>; 2]>,
    complete_multipartite: bool,
    multipartite_parts: Option<Vec<Vec<String>>>,
    star: bool,
    star_center: Option<String>,
    components: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct CapBoundReport {
    rank: usize,
    cap_bound: usize,
}

#[derive(Serialize)]
struct VerifyReport {
    valid: bool,
    genus: Option<usize>,
    reason: Option<String>,
}

#[derive(Serialize)]
struct DiagramReport {
    components: usize,
    per_component: Vec<ComponentSummary>,
    total_genus: usize,
    induced_class: Vec<LabelJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    represents: Option<bool>,
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Classify { graph } => {
            let json: GraphJson = read_json(graph, "invalid-json")?;
            let g = json.to_graph().map_err(|e| CliError::from(e).at(&graph.display().to_string()))?;
            let bipartite = g.complete_bipartite_parts();
            let multipartite = g.complete_multipartite_parts();
            let center = g.star_center();
            emit(
                cli,
                &ClassifyReport {
                    complete: g.is_complete(),
                    forest: g.is_forest(),
                    complete_bipartite: bipartite.is_some(),
                    bipartite_parts: bipartite.map(|(a, b)| [names(&a), names(&b)]),
                    complete_multipartite: multipartite.is_some(),
                    multipartite_parts: multipartite.map(|parts| parts.iter().map(|p| names(p)).collect()),
                    star: center.is_some(),
                    star_center: center.map(|c| c.to_string()),
                    components: g.connected_components().iter().map(|c| names(c.vertices())).collect(),
                },
            )
        }
        Command::CapBound { class } => {
            let alpha = load_class(cli, class)?;
            let rank = alpha.rank();
            emit(cli, &CapBoundReport { rank, cap_bound: rank / 2 })
        }
        Command::Genus { class } => {
            let alpha = load_class(cli, class)?;
            emit(cli, &genus(&alpha, cli.budget)?)
        }
        Command::Certificate { class, verify } => {
            let alpha = load_class(cli, class)?;
            let cert = load_certificate(verify)?;
            let report = match check_certificate(&cert, &alpha) {
                Ok(g) => VerifyReport { valid: true, genus: Some(g), reason: None },
                Err(reason) => VerifyReport { valid: false, genus: None, reason: Some(reason) },
            };
            emit(cli, &report)
        }
        Command::StarCover { class } => {
            let alpha = load_class(cli, class)?;
            let stars: Vec<Star> = match min_star_cover(&alpha, cli.budget) {
                Ok(cover) => cover.stars,
                Err(StarCoverError::ZeroClass) => Vec::new(),
                Err(e) => return Err(e.into()),
            };
            emit(cli, &stars)
        }
        Command::Decompose { class, kind } => {
            let alpha = load_class(cli, class)?;
            let cert = match kind {
                Kind::Wedge => Certificate::Wedge(wedge_decompose(&alpha)?),
                Kind::Tensor => Certificate::Tensor(tensor_decompose(&alpha)?),
            };
            emit(cli, &cert)
        }
        Command::CheckDiagram { diagram, class } => {
            let location = diagram.display().to_string();
            let json: DiagramJson = read_json(diagram, "invalid-json")?;
            let d = json.to_diagram().map_err(|e| CliError::from(e).at(&location))?;
            let summary = d.surface_summary()?;
            let (induced, represents) = match class {
                Some(path) => {
                    let alpha = load_class(cli, path)?;
                    let represents = d.represents(&alpha).map_err(|e| CliError::from(e).at(&path.display().to_string()))?;
                    (d.induced_class(alpha.ambient_arc().clone())?, Some(represents))
                }
                None => {
                    let graph = d.ambient().clone();
                    let oriented = match load_orientation(cli)? {
                        Some(o) => OrientedGraph::with_orientation(graph, &o.oriented_edges)?,
                        None => OrientedGraph::lexicographic(graph),
                    };
                    (d.induced_class(oriented)?, None)
                }
            };
            emit(
                cli,
                &DiagramReport {
                    components: summary.components,
                    per_component: summary.per_component,
                    total_genus: summary.total_genus,
                    induced_class: labels_json(&induced),
                    represents,
                },
            )
        }
    }
}

/// Accepts a bare certificate or a genus report carrying one.
fn load_certificate(path: &Path) -> Result<Certificate, CliError> {
    let value: serde_json::Value = read_json(path, "invalid-json")?;
    let location = path.display().to_string();
    let inner = match value.get("certificate") {
        Some(serde_json::Value::Null) => {
            return Err(CliError::invalid("invalid-certificate", "the report carries no certificate", Some(location)))
        }
        Some(c) => c.clone(),
        None => value,
    };
    serde_json::from_value(inner).map_err(|e| CliError::invalid("invalid-certificate", e.to_string(), Some(location)))
}
