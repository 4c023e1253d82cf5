//! Text formats and the `mintrans` command line.
//!
//! Hypergraphs use the HG format: one edge per line, vertex names separated by
//! whitespace. `#` starts a comment, empty lines are skipped, and a line
//! holding the single token `!` is the empty edge. A line made only of spaces
//! or tabs is rejected, since it would otherwise read as an empty edge.
//!
//! Graphs use the DIMACS edge format: a `p edge N M` header, then `e U V`
//! lines with 1-based vertex numbers; `c` lines are comments.

use std::collections::HashMap;
use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::domination::{closed_neighborhood_hypergraph, Graph};
use crate::engine::{Counter, EngineOptions, FillMode};
use crate::error::Error;
use crate::hypergraph::{Edge, Hypergraph, VertexId, VertexSet};
use crate::oracle::{self, GeneratorConfig};
use crate::order::find_elimination_ordering;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// A parsed hypergraph and the names of its vertices, indexed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedHypergraph {
    pub hypergraph: Hypergraph,
    pub names: Vec<String>,
}

impl ParsedHypergraph {
    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<VertexId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|k| VertexId(k as u32))
    }
}

/// Parses HG text. Vertex ids are assigned in order of first appearance.
pub fn parse_hypergraph(text: &str) -> Result<ParsedHypergraph, ParseError> {
    let mut ids: HashMap<&str, VertexId> = HashMap::new();
    let mut names = Vec::new();
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        if raw.is_empty() {
            continue;
        }
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            if content.len() == raw.len() {
                return Err(ParseError::new(line, "empty edge must be written as '!'"));
            }
            continue;
        }
        if tokens == ["!"] {
            edges.push(Edge::empty());
            continue;
        }
        if tokens.contains(&"!") {
            return Err(ParseError::new(line, "'!' must stand alone on its line"));
        }
        let edge = tokens.into_iter().map(|t| {
            *ids.entry(t).or_insert_with(|| {
                names.push(t.to_string());
                VertexId(names.len() as u32 - 1)
            })
        });
        edges.push(edge.collect());
    }
    Ok(ParsedHypergraph {
        hypergraph: Hypergraph::new(edges),
        names,
    })
}

/// Renders HG text, one edge per line in the hypergraph's edge order. Without
/// names, vertex `k` is written `v{k}`.
pub fn render_hypergraph(h: &Hypergraph, names: Option<&[String]>) -> String {
    let name = |v: VertexId| match names {
        Some(n) => n[v.index()].clone(),
        None => format!("v{}", v.0),
    };
    let mut out = String::new();
    for e in h.edges() {
        if e.is_empty() {
            out.push('!');
        } else {
            let parts: Vec<String> = e.iter().map(name).collect();
            out.push_str(&parts.join(" "));
        }
        out.push('\n');
    }
    out
}

/// Parses a DIMACS edge file. Repeated and reversed edges are merged; the
/// declared edge count is not enforced.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut graph: Option<Graph> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if graph.is_some() {
                    return Err(ParseError::new(line, "duplicate header"));
                }
                let [_, "edge", n, m] = tokens[..] else {
                    return Err(ParseError::new(line, "expected header 'p edge N M'"));
                };
                let n: usize = n
                    .parse()
                    .map_err(|_| ParseError::new(line, format!("bad vertex count '{n}'")))?;
                m.parse::<usize>()
                    .map_err(|_| ParseError::new(line, format!("bad edge count '{m}'")))?;
                graph = Some(Graph::new(n));
            }
            Some("e") => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| ParseError::new(line, "edge before header"))?;
                let [_, u, v] = tokens[..] else {
                    return Err(ParseError::new(line, "expected 'e U V'"));
                };
                let n = g.num_vertices();
                let parse_vertex = |s: &str| -> Result<usize, ParseError> {
                    match s.parse::<usize>() {
                        Ok(x) if (1..=n).contains(&x) => Ok(x - 1),
                        Ok(x) => Err(ParseError::new(
                            line,
                            format!("vertex {x} out of range 1..={n}"),
                        )),
                        Err(_) => Err(ParseError::new(line, format!("bad vertex '{s}'"))),
                    }
                };
                let (u, v) = (parse_vertex(u)?, parse_vertex(v)?);
                g.add_edge(u, v)
                    .map_err(|e| ParseError::new(line, e.to_string()))?;
            }
            Some(other) => {
                return Err(ParseError::new(
                    line,
                    format!("unknown line type '{other}'"),
                ));
            }
        }
    }
    graph.ok_or_else(|| ParseError::new(text.lines().count().max(1), "missing 'p edge N M' header"))
}

/// Machine-readable summary of a counting run.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub n: usize,
    pub m: usize,
    pub components: usize,
    pub ordering: Vec<String>,
    /// Decimal, since counts overflow native integers.
    pub count: String,
    pub states_computed: usize,
    pub wall_ms: f64,
    /// Groups of graph vertices sharing one closed neighbourhood.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twins: Option<Vec<Vec<String>>>,
}

#[derive(Parser, Debug)]
#[command(
    name = "mintrans",
    version,
    about = "Count minimal transversals of beta-acyclic hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Fill {
    Lazy,
    Eager,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count the minimal transversals of an HG file ('-' reads stdin).
    CountMtr {
        /// Input file, or '-' for stdin.
        file: String,
        /// Print a JSON run report instead of the bare count.
        #[arg(long)]
        json: bool,
        /// Compute only the table entries the answer needs, or all of them.
        #[arg(long, value_enum, default_value = "lazy")]
        fill: Fill,
        /// Verify the decomposition invariants while counting.
        #[arg(long)]
        check: bool,
    },
    /// Count the minimal dominating sets of a DIMACS graph.
    CountMds {
        /// Input file, or '-' for stdin.
        file: String,
        /// Print a JSON run report instead of the bare count.
        #[arg(long)]
        json: bool,
        /// Compute only the table entries the answer needs, or all of them.
        #[arg(long, value_enum, default_value = "lazy")]
        fill: Fill,
    },
    /// Print a beta-elimination ordering, or fail if there is none.
    Check { file: String },
    /// List (blocked) minimal transversals by brute force, one per line.
    Enumerate {
        file: String,
        /// Comma-separated blocked vertices.
        #[arg(long, value_delimiter = ',')]
        blocked: Vec<String>,
        /// Comma-separated vertices the sets must lie in (default: all).
        #[arg(long, value_delimiter = ',')]
        within: Option<Vec<String>>,
    },
    /// Print a random beta-acyclic hypergraph in HG format.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
    },
}

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_BETA_ACYCLIC: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

enum Failure {
    Input(String),
    Counting(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Counting(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }
}

fn read_hypergraph(path: &str) -> Result<ParsedHypergraph, Failure> {
    parse_hypergraph(&read_input(path)?).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn options(fill: Fill, check: bool) -> EngineOptions {
    EngineOptions {
        mode: match fill {
            Fill::Lazy => FillMode::Lazy,
            Fill::Eager => FillMode::Eager,
        },
        check_invariants: check,
        record_trace: false,
    }
}

fn print_count(out: &mut dyn Write, report: &RunReport, json: bool) -> io::Result<()> {
    if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string(report).expect("report serializes")
        )
    } else {
        writeln!(out, "{}", report.count)
    }
}

fn resolve(parsed: &ParsedHypergraph, names: &[String]) -> Result<VertexSet, Failure> {
    names
        .iter()
        .map(|n| {
            parsed
                .lookup(n)
                .ok_or_else(|| Failure::Input(format!("unknown vertex '{n}'")))
        })
        .collect()
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::CountMtr {
            file,
            json,
            fill,
            check,
        } => {
            let parsed = read_hypergraph(&file)?;
            let start = Instant::now();
            let r = Counter::new(options(fill, check)).count(&parsed.hypergraph)?;
            let report = RunReport {
                n: parsed.hypergraph.vertices().len(),
                m: parsed.hypergraph.len(),
                components: r.components,
                ordering: r
                    .ordering
                    .order()
                    .iter()
                    .map(|&v| parsed.name(v).to_string())
                    .collect(),
                count: r.count.to_string(),
                states_computed: r.states_computed,
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
                twins: None,
            };
            print_count(out, &report, json)?;
        }
        Command::CountMds { file, json, fill } => {
            let text = read_input(&file)?;
            let graph = parse_graph(&text).map_err(|e| Failure::Input(format!("{file}: {e}")))?;
            let start = Instant::now();
            let nh = closed_neighborhood_hypergraph(&graph);
            let r = Counter::new(options(fill, false)).count(&nh.hypergraph)?;
            let label = |v: usize| (v + 1).to_string();
            let twins = (0..nh.hypergraph.len())
                .map(|k| nh.twins(k))
                .filter(|t| t.len() > 1)
                .map(|t| t.iter().map(|&v| label(v)).collect())
                .collect();
            let report = RunReport {
                n: graph.num_vertices(),
                m: nh.hypergraph.len(),
                components: r.components,
                ordering: r
                    .ordering
                    .order()
                    .iter()
                    .map(|v| label(v.index()))
                    .collect(),
                count: r.count.to_string(),
                states_computed: r.states_computed,
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
                twins: Some(twins),
            };
            print_count(out, &report, json)?;
        }
        Command::Check { file } => {
            let parsed = read_hypergraph(&file)?;
            let ordering = find_elimination_ordering(&parsed.hypergraph)?;
            let names: Vec<&str> = ordering.order().iter().map(|&v| parsed.name(v)).collect();
            writeln!(out, "{}", names.join(" "))?;
        }
        Command::Enumerate {
            file,
            blocked,
            within,
        } => {
            let parsed = read_hypergraph(&file)?;
            let b = resolve(&parsed, &blocked)?;
            let s = match within {
                Some(names) => resolve(&parsed, &names)?,
                None => parsed.hypergraph.vertices(),
            };
            let family = oracle::enumerate_btr(&parsed.hypergraph, &b, &s)?;
            writeln!(out, "# count: {}", family.len())?;
            for t in &family {
                if t.is_empty() {
                    writeln!(out, "!")?;
                } else {
                    let names: Vec<&str> = t.iter().map(|&v| parsed.name(v)).collect();
                    writeln!(out, "{}", names.join(" "))?;
                }
            }
        }
        Command::Gen {
            n,
            m,
            seed,
            density,
        } => {
            if !(density > 0.0 && density <= 1.0) {
                return Err(Failure::Input(format!(
                    "density {density} is not in (0, 1]"
                )));
            }
            let h = oracle::gen_beta_acyclic(&GeneratorConfig {
                n,
                m,
                seed,
                density,
            });
            write!(out, "{}", render_hypergraph(&h, None))?;
        }
    }
    Ok(())
}

/// Runs the command line on `argv` (program name first) and returns the exit
/// code: 0 on success, 1 when the input is not β-acyclic, 2 on unreadable or
/// malformed input, 3 on an internal error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let count_mds = matches!(cli.command, Command::CountMds { .. });
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Counting(Error::NotBetaAcyclic)) => {
            let msg = if count_mds {
                "input not supported (not recognized as strongly chordal via beta-acyclic N[G])"
            } else {
                "not beta-acyclic"
            };
            let _ = writeln!(err, "{msg}");
            EXIT_NOT_BETA_ACYCLIC
        }
        Err(Failure::Counting(e @ Error::TooLarge { .. })) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
        Err(Failure::Counting(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INTERNAL
        }
    }
}
