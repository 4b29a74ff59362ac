//! Command-line front end.
//!
//! Every command reads one graph file and writes a report to standard
//! output, either as plain text or (with `--json`) as pretty-printed JSON.
//! Both renderings carry the same content. Exit codes: 0 success, 1 invalid
//! or unreadable graph, 2 bad arguments, 3 resource cap exceeded.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::{mul, parse_element, AlgebraElement};
use crate::error::Error;
use crate::graph::{DirectedGraph, VertexSet};
use crate::ideals::{enumerate_primes, report_for_lattice, MaximalityReport, MaximalityReportJson};
use crate::lattice::{
    enumerate_he, maximal_proper_elements, quotient_graph, AdmissiblePair, EnumerationLimits, HereditarySaturatedSet,
    HsLattice, HsLatticeJson,
};
use crate::structure::{condition_k, condition_l, ConditionReport, ConditionReportJson};

const ELEMENT_GRAMMAR: &str = "\
Elements are sums of terms separated by standalone `+` or `-` tokens.
A term is an optional rational coefficient (`3`, `-1/2`) followed by
whitespace-separated factors: a vertex id, an edge id `e`, or a ghost edge
`e*`. Factors are multiplied left to right; a `|` token is ignored and may be
used to separate the real and ghost parts, as in `a b | c*`.
Examples: \"e*\", \"v - f f*\", \"1/2 a b | b* a*\".";

#[derive(Debug, Parser)]
#[command(
    name = "lpa-ideals",
    version,
    about = "Ideal structure of Leavitt path algebras of finite graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Conditions (L)/(K), the lattice H_E and the maximal-ideal report.
    Analyze(LatticeArgs),
    /// The lattice H_E of hereditary saturated sets.
    Hsets(LatticeArgs),
    /// All prime ideals, as graded pairs and non-graded families.
    Primes(LatticeArgs),
    /// Maximal graded ideals and non-graded maximal families.
    Maximals(LatticeArgs),
    /// Write the quotient graph E\(H,S) as graph JSON.
    Quotient(QuotientArgs),
    /// Check Condition (L), Condition (K), or both.
    Check(CheckArgs),
    /// Multiply two algebra elements.
    #[command(after_help = ELEMENT_GRAMMAR)]
    Mul(MulArgs),
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Graph JSON file.
    pub graph: PathBuf,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    #[command(flatten)]
    pub input: GraphInput,
    /// Largest number of hereditary saturated sets to enumerate.
    #[arg(long, default_value_t = EnumerationLimits::default().max_sets)]
    pub cap: usize,
    /// Refuse graphs with more vertices than this (at most 64).
    #[arg(long, default_value_t = EnumerationLimits::default().max_vertices)]
    pub max_vertices: usize,
}

impl LatticeArgs {
    fn limits(&self) -> EnumerationLimits {
        EnumerationLimits {
            max_sets: self.cap,
            max_vertices: self.max_vertices,
        }
    }
}

#[derive(Debug, Args)]
pub struct QuotientArgs {
    /// Graph JSON file.
    pub graph: PathBuf,
    /// Hereditary saturated set H, comma separated.
    #[arg(long = "H", value_delimiter = ',', default_value = "")]
    pub h: Vec<String>,
    /// Breaking vertices S of H, comma separated.
    #[arg(long = "S", value_delimiter = ',', default_value = "")]
    pub s: Vec<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConditionChoice {
    #[value(name = "L")]
    L,
    #[value(name = "K")]
    K,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: GraphInput,
    /// Only check this condition.
    #[arg(long, value_enum)]
    pub condition: Option<ConditionChoice>,
}

#[derive(Debug, Args)]
pub struct MulArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long, allow_hyphen_values = true)]
    pub lhs: String,
    #[arg(long, allow_hyphen_values = true)]
    pub rhs: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } => 1,
            CliError::Lib(e) if e.is_invalid_graph() => 1,
            CliError::Lib(e) if e.is_resource_cap() => 3,
            CliError::Lib(_) => 2,
        }
    }
}

/// Runs one command and returns everything it prints to standard output.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Hsets(a) => hsets(a),
        Command::Primes(a) => primes(a),
        Command::Maximals(a) => maximals(a),
        Command::Quotient(a) => quotient(a),
        Command::Check(a) => check(a),
        Command::Mul(a) => multiply(a),
    }
}

fn load(path: &PathBuf) -> Result<DirectedGraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.clone(),
        source,
    })?;
    Ok(DirectedGraph::parse(&text)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn join_or_none(items: Vec<String>) -> String {
    if items.is_empty() {
        "none".to_string()
    } else {
        items.join(", ")
    }
}

#[derive(Serialize)]
struct GraphSummary {
    vertices: usize,
    edges: usize,
    omega_bundles: usize,
}

#[derive(Serialize)]
struct Conditions {
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    l: Option<ConditionReportJson>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    k: Option<ConditionReportJson>,
}

#[derive(Serialize)]
struct AnalyzeJson {
    graph: GraphSummary,
    conditions: Conditions,
    hs_lattice: HsLatticeJson,
    maximality: MaximalityReportJson,
}

fn condition_line(out: &mut String, g: &DirectedGraph, name: &str, r: &ConditionReport) {
    match &r.witness {
        None => writeln!(out, "condition {name}: holds").unwrap(),
        Some(c) => writeln!(
            out,
            "condition {name}: fails (witness cycle: {})",
            c.edge_names(g).join(" ")
        )
        .unwrap(),
    }
}

fn lattice_text(out: &mut String, g: &DirectedGraph, lat: &HsLattice) {
    let sets = lat.sets().iter().map(|h| h.as_set().display(g)).collect();
    writeln!(out, "hereditary saturated sets: {}", join_or_none(sets)).unwrap();
    let maximal = maximal_proper_elements(lat)
        .iter()
        .map(|h| h.as_set().display(g))
        .collect();
    writeln!(out, "maximal proper: {}", join_or_none(maximal)).unwrap();
}

fn report_text(out: &mut String, g: &DirectedGraph, r: &MaximalityReport) {
    let graded = r.graded_maximals.iter().map(|p| p.display(g)).collect();
    writeln!(out, "graded maximal ideals: {}", join_or_none(graded)).unwrap();
    let families = r.nongraded_maximal_families.iter().map(|f| f.display(g)).collect();
    writeln!(out, "non-graded maximal families: {}", join_or_none(families)).unwrap();
    writeln!(out, "exists maximal: {}", r.exists_maximal).unwrap();
    writeln!(out, "every ideal below a maximal: {}", r.every_ideal_below_maximal).unwrap();
    writeln!(out, "every maximal graded: {}", r.every_maximal_graded).unwrap();
    let unique = r.unique_maximal.as_ref().map_or("none".to_string(), |d| d.display(g));
    writeln!(out, "unique maximal: {unique}").unwrap();
}

fn analyze(a: &LatticeArgs) -> Result<String, CliError> {
    let g = load(&a.input.graph)?;
    let lat = enumerate_he(&g, a.limits())?;
    let report = report_for_lattice(&g, &lat)?;
    let (l, k) = (condition_l(&g), condition_k(&g));
    if a.input.json {
        return Ok(to_json(&AnalyzeJson {
            graph: GraphSummary {
                vertices: g.vertex_count(),
                edges: g.edges().len(),
                omega_bundles: g.bundles().len(),
            },
            conditions: Conditions {
                l: Some(l.to_json(&g)),
                k: Some(k.to_json(&g)),
            },
            hs_lattice: lat.to_json(&g),
            maximality: report.to_json(&g),
        }));
    }
    let mut out = String::new();
    writeln!(
        out,
        "graph: {} vertices, {} edges, {} omega bundles",
        g.vertex_count(),
        g.edges().len(),
        g.bundles().len()
    )
    .unwrap();
    condition_line(&mut out, &g, "L", &l);
    condition_line(&mut out, &g, "K", &k);
    lattice_text(&mut out, &g, &lat);
    report_text(&mut out, &g, &report);
    Ok(out)
}

fn hsets(a: &LatticeArgs) -> Result<String, CliError> {
    let g = load(&a.input.graph)?;
    let lat = enumerate_he(&g, a.limits())?;
    if a.input.json {
        return Ok(to_json(&lat.to_json(&g)));
    }
    let mut out = String::new();
    lattice_text(&mut out, &g, &lat);
    Ok(out)
}

fn primes(a: &LatticeArgs) -> Result<String, CliError> {
    let g = load(&a.input.graph)?;
    let lat = enumerate_he(&g, a.limits())?;
    let primes = enumerate_primes(&g, &lat)?;
    if a.input.json {
        #[derive(Serialize)]
        struct PrimesJson<T> {
            primes: Vec<T>,
        }
        return Ok(to_json(&PrimesJson {
            primes: primes.iter().map(|d| d.to_json(&g)).collect(),
        }));
    }
    let mut out = String::new();
    for d in &primes {
        writeln!(out, "{}", d.display(&g)).unwrap();
    }
    Ok(out)
}

fn maximals(a: &LatticeArgs) -> Result<String, CliError> {
    let g = load(&a.input.graph)?;
    let lat = enumerate_he(&g, a.limits())?;
    let report = report_for_lattice(&g, &lat)?;
    if a.input.json {
        return Ok(to_json(&report.to_json(&g)));
    }
    let mut out = String::new();
    report_text(&mut out, &g, &report);
    Ok(out)
}

fn names(list: &[String]) -> Vec<&str> {
    list.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect()
}

fn quotient(a: &QuotientArgs) -> Result<String, CliError> {
    let g = load(&a.graph)?;
    let h = HereditarySaturatedSet::from_names(&g, &names(&a.h))?;
    let s = VertexSet::from_names(&g, &names(&a.s))?;
    let pair = AdmissiblePair::new(&g, h, s)?;
    let mut text = quotient_graph(&g, &pair)?.to_json();
    text.push('\n');
    Ok(text)
}

fn check(a: &CheckArgs) -> Result<String, CliError> {
    let g = load(&a.input.graph)?;
    let want = |c| a.condition.is_none() || a.condition == Some(c);
    let l = want(ConditionChoice::L).then(|| condition_l(&g));
    let k = want(ConditionChoice::K).then(|| condition_k(&g));
    if a.input.json {
        return Ok(to_json(&Conditions {
            l: l.as_ref().map(|r| r.to_json(&g)),
            k: k.as_ref().map(|r| r.to_json(&g)),
        }));
    }
    let mut out = String::new();
    if let Some(r) = &l {
        condition_line(&mut out, &g, "L", r);
    }
    if let Some(r) = &k {
        condition_line(&mut out, &g, "K", r);
    }
    Ok(out)
}

fn multiply(a: &MulArgs) -> Result<String, CliError> {
    let g = load(&a.input.graph)?;
    let lhs = parse_element(&g, &a.lhs)?;
    let rhs = parse_element(&g, &a.rhs)?;
    let product: AlgebraElement = mul(&g, &lhs, &rhs)?;
    if a.input.json {
        #[derive(Serialize)]
        struct MulJson {
            lhs: String,
            rhs: String,
            product: String,
            degree: Option<i64>,
        }
        return Ok(to_json(&MulJson {
            lhs: lhs.display(&g),
            rhs: rhs.display(&g),
            product: product.display(&g),
            degree: product.homogeneous_degree(),
        }));
    }
    Ok(format!("{}\n", product.display(&g)))
}
