use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use dgpp_core::braid::BraidWord;
use dgpp_core::complex::{simple_resolution, TwistedComplex};
use dgpp_core::hom::{hom_table, hom_table_module, FdModule, Window};
use dgpp_core::ideal::{braid_relation_check, verify_simple_resolution};
use dgpp_core::silting::{
    braid_to_silting, enumerate_interval_limited, mutate, word_equality, Direction, SiltingError, SiltingObject,
    SiltingPosetSlice, WordVerdict,
};
use dgpp_core::{Gamma, Letter, Vertex};
use serde_json::{json, Value};

use crate::checks::{run_check_suite, suite_names};
use crate::config::{ConfigError, OutputFormat, RunConfig, DEFAULT_WEIGHT_BOUND};
use crate::dot::export_dot;
use crate::report::{Report, Status};
use crate::serialize::{complex_json, complex_text, hom_table_json, hom_table_text, provenance_text, silting_json};

#[derive(Debug, Parser)]
#[command(name = "dgpp", version, about = "Exact computations with derived preprojective algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Built-in name (A3, D4, E6, Kronecker2), arrow list ("1->2, 2->3"), JSON, or a file.
    #[arg(long, global = true, default_value = "A2")]
    pub quiver: String,
    #[arg(long = "weight-bound", short = 'W', global = true, default_value_t = DEFAULT_WEIGHT_BOUND)]
    pub weight_bound: u32,
    /// Q or Fp:<prime>.
    #[arg(long, global = true, default_value = "Q")]
    pub field: String,
    /// Inclusive degree range, e.g. -4..4.
    #[arg(long = "degree-window", global = true, default_value = "-4..4", allow_hyphen_values = true)]
    pub degree_window: String,
    #[arg(long, global = true, default_value_t = 1)]
    pub parallelism: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generators, differentials and slice dimensions of Gamma.
    Gamma,
    /// Cohomology of Gamma by degree and weight.
    Cohomology,
    /// Hom(pS_i, S_i[p]) is one-dimensional in degrees 0 and 2 only.
    SphericalCheck { vertex: String },
    /// The resolution of the simple at a vertex, and its exactness.
    ResolveSimple { vertex: String },
    /// The silting object of a braid word such as "1 2 1'".
    BraidMap { word: String },
    /// Decides equality of two braid words.
    BraidEq { first: String, second: String },
    /// Mutates Gamma along a sequence such as "1 2R" (L is the default).
    Mutate { sequence: String },
    #[command(subcommand)]
    Verify(Verify),
    /// Silting objects between Gamma and Gamma[n].
    Enumerate {
        #[arg(long)]
        interval: u32,
        #[arg(long = "max-nodes", default_value_t = 500)]
        max_nodes: usize,
    },
    /// Exports an interval as DOT or JSON.
    Export {
        #[arg(long, conflicts_with = "json", required_unless_present = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1)]
        interval: u32,
        #[arg(long = "max-nodes", default_value_t = 500)]
        max_nodes: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Runs a check suite.
    Check {
        #[arg(long, default_value = "acceptance")]
        suite: String,
        /// Restrict to the named checks.
        #[arg(long)]
        only: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// The ideal relations for adjacent vertex pairs.
    BraidRelations {
        /// Include commuting (non-adjacent) pairs.
        #[arg(long)]
        all_pairs: bool,
    },
    /// Exactness of the simple resolutions up to the weight bound.
    Resolution,
}

/// What a command produced: the exit status, text for the terminal and a
/// JSON report.
pub struct Output {
    pub status: Status,
    pub text: String,
    pub report: Report,
}

fn vertex(g: &Gamma, label: &str) -> Result<Vertex, ConfigError> {
    g.quiver().vertex_by_label(label.trim()).ok_or_else(|| ConfigError::Argument(format!("unknown vertex `{label}`")))
}

fn word(g: &Gamma, s: &str) -> Result<BraidWord, ConfigError> {
    BraidWord::parse(g.quiver(), s).map_err(|e| ConfigError::Argument(e.to_string()))
}

fn status_of(e: &SiltingError) -> Status {
    match e {
        SiltingError::Unstable { .. } | SiltingError::NodeLimit(_) => Status::WindowInsufficient,
        _ => Status::Fail,
    }
}

pub fn config_from(args: &GlobalArgs) -> Result<RunConfig, ConfigError> {
    RunConfig::new(&args.quiver, &args.field, args.weight_bound, &args.degree_window, args.parallelism, args.format)
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Output, ConfigError> {
    let config = config_from(&cli.global)?;
    if !matches!(cli.command, Command::Check { .. }) {
        config.validate()?;
    }
    let g = Gamma::new(config.quiver.clone(), config.field);
    let bound = config.weight_bound;
    let (lo, hi) = config.degree_window;
    let mut text = String::new();
    let (name, status, result): (&str, Status, Value) = match &cli.command {
        Command::Gamma => {
            let q = g.quiver();
            let letters: Vec<Value> = g
                .letters()
                .iter()
                .map(|&l| json!({"name": g.letter_name(l), "degree": l.degree(), "weight": l.weight(),
                    "from": q.vertex_label(g.source(l)), "to": q.vertex_label(g.target(l))}))
                .collect();
            let mut differentials = serde_json::Map::new();
            let _ = writeln!(text, "Gamma({}) over {}", q.name(), config.field_label());
            for l in g.letters() {
                if let Letter::Loop(v) = *l {
                    let d = g.format_element(&g.d_loop(v));
                    let _ = writeln!(text, "  d({}) = {d}", g.letter_name(*l));
                    differentials.insert(g.letter_name(*l), Value::String(d));
                }
            }
            let mut dims = Vec::new();
            let _ = writeln!(text, "dimension of Gamma by weight (all degrees):");
            for w in 0..=bound {
                let mut total = 0;
                for d in -(w as i32) / 2..=0 {
                    for a in q.vertices() {
                        for b in q.vertices() {
                            total += g.weight_slice(d, w, a, b).len();
                        }
                    }
                }
                let _ = writeln!(text, "  weight {w}: {total}");
                dims.push(json!({"weight": w, "dim": total}));
            }
            ("gamma", Status::Pass, json!({"letters": letters, "differentials": differentials, "dimensions": dims}))
        }
        Command::Cohomology => {
            let gamma = TwistedComplex::gamma(&g);
            let table = hom_table(&g, &gamma, &gamma, Window::new(lo, hi, bound));
            text.push_str(&hom_table_text(&table));
            ("cohomology", Status::Pass, serde_json::to_value(hom_table_json(&table)).unwrap())
        }
        Command::SphericalCheck { vertex: v } => {
            let i = vertex(&g, v)?;
            let table = hom_table_module(&g, &simple_resolution(&g, i), &FdModule::simple(i), (lo, hi));
            let ok = table.degree_totals().iter().all(|(&p, &d)| d == usize::from(p == 0 || p == 2));
            let _ = writeln!(text, "Hom(S_{v}, S_{v}[p]):");
            text.push_str(&hom_table_text(&table));
            let _ = writeln!(text, "{}", if ok { "2-spherical" } else { "NOT 2-spherical" });
            let status = if ok { Status::Pass } else { Status::Fail };
            ("spherical-check", status, json!({"vertex": v, "spherical": ok, "table": hom_table_json(&table)}))
        }
        Command::ResolveSimple { vertex: v } => {
            let i = vertex(&g, v)?;
            let p = simple_resolution(&g, i);
            let report = verify_simple_resolution(&g, i, bound).map_err(|e| ConfigError::Argument(e.to_string()))?;
            let _ = writeln!(text, "pS_{v}:");
            text.push_str(&complex_text(&g, &p));
            let _ = writeln!(
                text,
                "resolution exact up to weight {bound}: {} ({} cells)",
                if report.passed() { "yes" } else { "NO" },
                report.cells_checked
            );
            let status = if report.passed() { Status::Pass } else { Status::Fail };
            let failure = report.failure.map(|(d, w, f)| json!({"degree": d, "weight": w, "from": g.quiver().vertex_label(f)}));
            (
                "resolve-simple",
                status,
                json!({"vertex": v, "complex": complex_json(&g, &p), "chain_map": report.chain_map,
                    "cells_checked": report.cells_checked, "failure": failure}),
            )
        }
        Command::BraidMap { word: w } => {
            let w = word(&g, w)?;
            match braid_to_silting(&g, &w) {
                Ok(m) => {
                    let cert = m.certify(&g, bound);
                    describe_object(&g, &m, &mut text);
                    let _ = writeln!(text, "Hom(M, M[p>0]) vanishes up to weight {bound}: {}", if cert.holds() { "yes" } else { "NO" });
                    let status = if cert.holds() { Status::Pass } else { Status::Fail };
                    ("braid-map", status, json!({"word": w.format(g.quiver()), "object": silting_json(&g, &m), "certificate": cert.witness}))
                }
                Err(e) => {
                    let _ = writeln!(text, "{e}");
                    ("braid-map", status_of(&e), json!({"error": e.to_string()}))
                }
            }
        }
        Command::BraidEq { first, second } => {
            let (a, b) = (word(&g, first)?, word(&g, second)?);
            match word_equality(&g, &a, &b) {
                Ok(v) => {
                    let verdict = match &v {
                        WordVerdict::EqualInBQ => "equal".to_string(),
                        WordVerdict::DistinctInBQ => "distinct".to_string(),
                        WordVerdict::Unknown(why) => format!("unknown ({why})"),
                    };
                    let _ = writeln!(text, "{verdict}");
                    let status = if matches!(v, WordVerdict::Unknown(_)) { Status::Fail } else { Status::Pass };
                    ("braid-eq", status, json!({"first": a.format(g.quiver()), "second": b.format(g.quiver()), "verdict": verdict}))
                }
                Err(e) => {
                    let _ = writeln!(text, "{e}");
                    ("braid-eq", status_of(&e), json!({"error": e.to_string()}))
                }
            }
        }
        Command::Mutate { sequence } => {
            let steps = parse_sequence(&g, sequence)?;
            let mut m = SiltingObject::gamma(&g);
            let mut error = None;
            for &(i, d) in &steps {
                match mutate(&g, &m, i, d, bound) {
                    Ok(next) => m = next,
                    Err(e) => {
                        error = Some(e);
                        break;
                    }
                }
            }
            match error {
                None => {
                    describe_object(&g, &m, &mut text);
                    ("mutate", Status::Pass, json!({"sequence": sequence, "object": silting_json(&g, &m)}))
                }
                Some(e) => {
                    let _ = writeln!(text, "{e}");
                    ("mutate", status_of(&e), json!({"sequence": sequence, "error": e.to_string()}))
                }
            }
        }
        Command::Verify(Verify::BraidRelations { all_pairs }) => {
            let n = g.num_vertices();
            let mut status = Status::Pass;
            let mut reports = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    let edges = g.quiver().edges_between(i, j);
                    if edges > 1 || (edges == 0 && !all_pairs) {
                        continue;
                    }
                    let r = braid_relation_check(&g, i, j, bound).map_err(|e| ConfigError::Argument(e.to_string()))?;
                    let (li, lj) = (g.quiver().vertex_label(i), g.quiver().vertex_label(j));
                    for c in &r.checks {
                        let _ = writeln!(text, "({li},{lj}) {:<40} {}", c.name, if c.passed { "ok" } else { "FAILED" });
                        if !c.passed {
                            status = Status::Fail;
                            let _ = writeln!(text, "    {}", c.detail);
                        }
                    }
                    let checks: Vec<Value> = r.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect();
                    reports.push(json!({"pair": [li, lj], "kind": format!("{:?}", r.kind), "checks": checks}));
                }
            }
            ("verify braid-relations", status, json!({"pairs": reports}))
        }
        Command::Verify(Verify::Resolution) => {
            let mut status = Status::Pass;
            let mut reports = Vec::new();
            for i in g.quiver().vertices() {
                let r = verify_simple_resolution(&g, i, bound).map_err(|e| ConfigError::Argument(e.to_string()))?;
                let label = g.quiver().vertex_label(i);
                let _ = writeln!(text, "S_{label}: {} ({} cells)", if r.passed() { "exact" } else { "NOT exact" }, r.cells_checked);
                if !r.passed() {
                    status = Status::Fail;
                }
                reports.push(json!({"vertex": label, "passed": r.passed(), "cells_checked": r.cells_checked}));
            }
            ("verify resolution", status, json!({"vertices": reports}))
        }
        Command::Enumerate { interval, max_nodes } => match enumerate_interval_limited(&g, *interval, bound, *max_nodes) {
            Ok(slice) => {
                let _ = writeln!(text, "{} silting objects between Gamma and Gamma[{interval}]", slice.nodes.len());
                for (k, m) in slice.nodes.iter().enumerate() {
                    let _ = writeln!(text, "  [{k}] {:<16} g = {:?}", provenance_text(&g, &m.provenance), m.g_vector(&g));
                }
                ("enumerate", Status::Pass, slice_json(&g, &slice))
            }
            Err(e) => {
                let _ = writeln!(text, "{e}");
                ("enumerate", status_of(&e), json!({"error": e.to_string()}))
            }
        },
        Command::Export { dot, interval, max_nodes, output, .. } => match enumerate_interval_limited(&g, *interval, bound, *max_nodes) {
            Ok(slice) => {
                let body = if *dot { export_dot(&g, &slice) } else { serde_json::to_string_pretty(&slice_json(&g, &slice)).unwrap() + "\n" };
                match output {
                    Some(path) => std::fs::write(path, &body).map_err(|e| ConfigError::Argument(format!("{}: {e}", path.display())))?,
                    None => text.push_str(&body),
                }
                ("export", Status::Pass, json!({"nodes": slice.nodes.len(), "format": if *dot { "dot" } else { "json" }}))
            }
            Err(e) => {
                let _ = writeln!(text, "{e}");
                ("export", status_of(&e), json!({"error": e.to_string()}))
            }
        },
        Command::Check { suite, only } => {
            if suite != "acceptance" {
                return Err(ConfigError::Argument(format!("unknown suite `{suite}`")));
            }
            if let Some(bad) = only.iter().find(|o| !suite_names().contains(&o.as_str())) {
                return Err(ConfigError::Argument(format!("unknown check `{bad}`; known: {}", suite_names().join(", "))));
            }
            let report = run_check_suite(&config, only);
            for c in &report.checks {
                let mark = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::WindowInsufficient => "WINDOW",
                };
                let _ = writeln!(text, "{mark:<7}{:<22}{}", c.check, c.detail);
            }
            ("check", report.verdict, serde_json::to_value(&report).unwrap())
        }
    };
    let report = Report::new(&config, name, status, result);
    if config.format == OutputFormat::Json {
        text = report.to_json();
    }
    Ok(Output { status, text, report })
}

fn describe_object(g: &Gamma, m: &SiltingObject, text: &mut String) {
    let _ = writeln!(text, "provenance: {}", provenance_text(g, &m.provenance));
    for (k, b) in m.blocks.iter().enumerate() {
        let _ = writeln!(text, "block {} (g = {:?}):", g.quiver().vertex_label(k), b.g_vector(g.num_vertices()));
        text.push_str(&complex_text(g, b));
    }
}

fn slice_json(g: &Gamma, slice: &SiltingPosetSlice) -> Value {
    let nodes: Vec<Value> = slice.nodes.iter().map(|m| serde_json::to_value(silting_json(g, m)).unwrap()).collect();
    let edges: Vec<Value> = slice
        .edges
        .iter()
        .map(|&(from, to, block)| json!({"from": from, "to": to, "vertex": g.quiver().vertex_label(block)}))
        .collect();
    json!({"n": slice.n, "W": slice.bound, "nodes": nodes, "edges": edges})
}

/// Tokens `<vertex>` or `<vertex>L` for left, `<vertex>R` for right.
pub fn parse_sequence(g: &Gamma, s: &str) -> Result<Vec<(usize, Direction)>, ConfigError> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (label, dir) = if let Some(l) = t.strip_suffix(['R', 'r']) {
                (l, Direction::Right)
            } else {
                (t.strip_suffix(['L', 'l']).unwrap_or(t), Direction::Left)
            };
            Ok((vertex(g, label)?, dir))
        })
        .collect()
}
