//! Command-line front end. [`run`] is the whole program minus process exit,
//! so tests can drive it directly.

use std::ffi::OsString;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use movcone_core::flip::enumerate_pmc_sequences;
use movcone_core::pipeline::{eq_for_variety, moving_cone, validate_graph};
use movcone_core::{Cone, FlipSequence, ModelGraph, Provenance, RationalVector, ValidationReport};
use serde_json::{json, Value};

use crate::document::{load_graph, parse_rational};
use crate::slice::cross_section;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_COMPUTATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "movcone", version, about = "Moving cones of numerical models of Fano three- and fourfolds")]
struct Cli {
    /// Emit machine-readable JSON on stdout
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate every model and verify every flip
    Validate { file: PathBuf },
    /// List the flip sequences of each K-negative small ray of the root
    Sequences { file: PathBuf },
    /// Print the equation set of the root with provenance
    Eq { file: PathBuf },
    /// Print the extreme rays of the moving cone of the root
    Mov { file: PathBuf },
    /// Convert between generator and inequality descriptions, e.g. "1,0;0,1"
    Dual {
        /// Vectors spanning the cone; prints its facet normals
        #[arg(long, conflicts_with = "ineqs", required_unless_present = "ineqs", allow_hyphen_values = true)]
        gens: Option<String>,
        /// Inequality normals cutting out the cone; prints its generators
        #[arg(long, allow_hyphen_values = true)]
        ineqs: Option<String>,
        /// Ambient dimension, needed only when no vectors are given
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Cross-section polygon of a cone of the root in the plane x·n = 1
    Slice {
        file: PathBuf,
        #[arg(long, value_enum)]
        cone: SliceCone,
        /// Plane normal n, e.g. "1,1,1"
        #[arg(long, allow_hyphen_values = true)]
        plane: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SliceCone {
    Mor,
    Mov,
    Nef,
}

impl SliceCone {
    fn name(self) -> &'static str {
        match self {
            SliceCone::Mor => "mor",
            SliceCone::Mov => "mov",
            SliceCone::Nef => "nef",
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Parse(String),
    Validation(ValidationReport),
    Computation(String),
}

struct Output {
    stdout: String,
    /// Report printed on stderr even when the command succeeds.
    report: Option<ValidationReport>,
    code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, report: None, code: EXIT_OK }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_PARSE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let color = use_color();
    match dispatch(&cli) {
        Ok(out) => Outcome {
            code: out.code,
            stdout: out.stdout,
            stderr: out.report.map(|r| render_report(&r, color)).unwrap_or_default(),
        },
        Err(Failure::Parse(msg)) => {
            Outcome { code: EXIT_PARSE, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
        Err(Failure::Computation(msg)) => {
            Outcome { code: EXIT_COMPUTATION, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
        Err(Failure::Validation(report)) => Outcome {
            code: EXIT_VALIDATION,
            stdout: if cli.json { with_newline(report_json(&report)) } else { String::new() },
            stderr: render_report(&report, color),
        },
    }
}

fn use_color() -> bool {
    std::env::var("MOVCONE_COLOR").map_or(true, |v| v != "0") && std::io::stderr().is_terminal()
}

fn render_report(report: &ValidationReport, color: bool) -> String {
    let mut out = String::new();
    for issue in report.issues() {
        if color {
            out.push_str(&format!("\x1b[31m{issue}\x1b[0m\n"));
        } else {
            out.push_str(&format!("{issue}\n"));
        }
    }
    out
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Validate { file } => validate(file, json),
        Command::Sequences { file } => {
            let graph = prepare(file)?;
            sequences(&graph, json)
        }
        Command::Eq { file } => {
            let graph = prepare(file)?;
            equations(&graph, json)
        }
        Command::Mov { file } => {
            let graph = prepare(file)?;
            let cone = moving_cone(&graph, graph.root()).map_err(computation)?;
            Ok(Output::ok(rays_output(graph.root(), &cone, json)))
        }
        Command::Dual { gens, ineqs, dim } => dual(gens.as_deref(), ineqs.as_deref(), *dim, json),
        Command::Slice { file, cone, plane } => slice(file, *cone, plane, json),
    }
}

fn computation(e: impl std::fmt::Display) -> Failure {
    Failure::Computation(e.to_string())
}

fn load(file: &Path) -> Result<ModelGraph, Failure> {
    load_graph(file).map_err(|e| Failure::Parse(e.to_string()))
}

/// Loads a graph for the pipeline commands. Flip chains from the root are
/// enumerated before validation so that cyclic data is reported as a
/// computation failure regardless of what else is wrong with it.
fn prepare(file: &Path) -> Result<ModelGraph, Failure> {
    let graph = load(file)?;
    enumerate_pmc_sequences(&graph, graph.root(), None).map_err(computation)?;
    let report = validate_graph(&graph);
    if !report.is_empty() {
        return Err(Failure::Validation(report));
    }
    Ok(graph)
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}

fn to_json(value: &Value) -> String {
    with_newline(serde_json::to_string_pretty(value).expect("values serialize"))
}

fn vector_json(v: &RationalVector) -> Value {
    Value::Array(v.to_string().split(',').map(|c| Value::String(c.into())).collect())
}

fn report_json(report: &ValidationReport) -> String {
    let issues: Vec<Value> = report
        .issues()
        .iter()
        .map(|i| json!({ "check": i.check.code(), "model": i.model, "message": i.message }))
        .collect();
    serde_json::to_string_pretty(&json!({ "valid": report.is_empty(), "issues": issues })).expect("values serialize")
}

fn validate(file: &Path, json: bool) -> Result<Output, Failure> {
    let graph = load(file)?;
    let report = validate_graph(&graph);
    let flips: usize = graph.models().iter().map(|m| m.small_rays().iter().filter(|r| r.flip.is_some()).count()).sum();
    let stdout = if json {
        with_newline(report_json(&report))
    } else if report.is_empty() {
        format!("valid: {} models, {flips} flips verified\n", graph.models().len())
    } else {
        format!("invalid: {} issues\n", report.len())
    };
    let code = if report.is_empty() { EXIT_OK } else { EXIT_VALIDATION };
    Ok(Output { stdout, report: Some(report), code })
}

fn sequences(graph: &ModelGraph, json: bool) -> Result<Output, Failure> {
    let root = graph.root_model();
    let mut grouped: Vec<(String, Vec<FlipSequence>)> = Vec::new();
    for ray in root.small_rays() {
        let seqs = enumerate_pmc_sequences(graph, graph.root(), Some(&ray.label)).map_err(computation)?;
        grouped.push((ray.label.clone(), seqs));
    }
    if json {
        let entries: Vec<Value> = grouped
            .iter()
            .flat_map(|(ray, seqs)| {
                seqs.iter().map(move |s| {
                    json!({
                        "ray": ray,
                        "length": s.len(),
                        "steps": s.steps.iter().map(|st| json!({ "model": st.model, "ray": st.ray })).collect::<Vec<_>>(),
                        "terminal": s.terminal,
                    })
                })
            })
            .collect();
        return Ok(Output::ok(to_json(&json!({ "root": graph.root(), "sequences": entries }))));
    }
    let mut out = String::new();
    if grouped.is_empty() {
        out.push_str(&format!("{} has no K-negative small rays\n", graph.root()));
    }
    for (_, seqs) in &grouped {
        for s in seqs {
            out.push_str(&format!("{s}\n"));
        }
    }
    Ok(Output::ok(out))
}

fn provenance_json(p: &Provenance) -> Value {
    let route: Vec<Value> = p.route().iter().map(|s| json!({ "model": s.model, "ray": s.ray })).collect();
    match p {
        Provenance::Nef { model, .. } => json!({ "kind": "nef", "model": model, "route": route }),
        Provenance::Exceptional { model, ray, .. } => {
            json!({ "kind": "exceptional", "model": model, "ray": ray, "route": route })
        }
    }
}

fn equations(graph: &ModelGraph, json: bool) -> Result<Output, Failure> {
    let eq = eq_for_variety(graph, graph.root()).map_err(computation)?;
    if json {
        let entries: Vec<Value> =
            eq.iter().map(|(c, p)| json!({ "class": vector_json(c), "provenance": provenance_json(p) })).collect();
        return Ok(Output::ok(to_json(&json!({ "root": graph.root(), "equations": entries }))));
    }
    let mut out = String::new();
    for (class, provenance) in eq.iter() {
        out.push_str(&format!("{class}\t{provenance}\n"));
    }
    Ok(Output::ok(out))
}

fn rays_output(root: &str, cone: &Cone, json: bool) -> String {
    let rays = cone.generators();
    if json {
        return to_json(&json!({ "root": root, "rays": rays.iter().map(vector_json).collect::<Vec<_>>() }));
    }
    rays.iter().map(|r| format!("{r}\n")).collect()
}

fn parse_vector(text: &str) -> Result<RationalVector, Failure> {
    text.split(',')
        .map(|c| parse_rational(c).map_err(|e| Failure::Parse(e.to_string())))
        .collect::<Result<Vec<_>, _>>()
        .map(RationalVector::new)
}

fn parse_vectors(text: &str) -> Result<Vec<RationalVector>, Failure> {
    text.split(';').map(str::trim).filter(|s| !s.is_empty()).map(parse_vector).collect()
}

fn join_vectors(vs: &[RationalVector]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

fn dual(gens: Option<&str>, ineqs: Option<&str>, dim: Option<usize>, json: bool) -> Result<Output, Failure> {
    let (text, from_gens) = match (gens, ineqs) {
        (Some(g), _) => (g, true),
        (None, Some(i)) => (i, false),
        (None, None) => return Err(Failure::Parse("one of --gens or --ineqs is required".into())),
    };
    let vectors = parse_vectors(text)?;
    let dim = match (dim, vectors.first()) {
        (Some(d), _) => d,
        (None, Some(v)) => v.dim(),
        (None, None) => return Err(Failure::Parse("no vectors given; pass --dim".into())),
    };
    let cone = if from_gens { Cone::from_generators(dim, &vectors) } else { Cone::from_inequalities(dim, &vectors) }
        .map_err(|e| Failure::Parse(e.to_string()))?;
    if json {
        let list = |vs: Vec<RationalVector>| vs.iter().map(vector_json).collect::<Vec<_>>();
        return Ok(Output::ok(to_json(&json!({
            "dim": dim,
            "generators": list(cone.generators()),
            "facet_normals": list(cone.facet_normals()),
        }))));
    }
    let other = if from_gens { cone.facet_normals() } else { cone.generators() };
    Ok(Output::ok(format!("{}\n", join_vectors(&other))))
}

fn slice(file: &Path, which: SliceCone, plane: &str, json: bool) -> Result<Output, Failure> {
    let normal = parse_vector(plane)?;
    let (graph, cone) = match which {
        SliceCone::Mov => {
            let graph = prepare(file)?;
            let cone = moving_cone(&graph, graph.root()).map_err(computation)?;
            (graph, cone)
        }
        SliceCone::Mor | SliceCone::Nef => {
            let graph = load(file)?;
            let report = graph.root_model().validate();
            if !report.is_empty() {
                return Err(Failure::Validation(report));
            }
            let mori = graph.root_model().mori_cone().map_err(computation)?;
            let cone = if matches!(which, SliceCone::Mor) { mori } else { mori.dual() };
            (graph, cone)
        }
    };
    let vertices = cross_section(&cone, &normal).map_err(computation)?;
    if json {
        return Ok(Output::ok(to_json(&json!({
            "root": graph.root(),
            "cone": which.name(),
            "plane": vector_json(&normal),
            "vertices": vertices.iter().map(vector_json).collect::<Vec<_>>(),
        }))));
    }
    Ok(Output::ok(vertices.iter().map(|v| format!("{v}\n")).collect()))
}
