//! `mgraph`: command-line access to metric graphs.
//!
//! Exit codes: 0 on success, 1 on a domain error, 2 on a parse error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use metric_graph::format::{emit_graph, parse_function, parse_graph, parse_point, parse_relation};
use metric_graph::functions::{ck_witness, sobolev_norm, Exponent};
use metric_graph::metric::{distance, geodesic, is_connected};
use metric_graph::ops::{graph_complement, graph_intersection, graph_union};
use metric_graph::surgery::{
    cut_graph, equivalent_mod_subdivision, primitive_form, rewire, subdivide,
};
use metric_graph::{EdgeId, Error, GraphPoint, MetricGraph, Rational};

#[derive(Parser)]
#[command(
    name = "mgraph",
    version,
    about = "Exact metric graphs: distances, surgery, operations, norms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertices, degrees, multiplicities, components, volume and connectedness.
    Info { graph: PathBuf },
    /// Path distance between two points, exact or `inf`.
    Dist {
        graph: PathBuf,
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// A shortest chain between two points, one segment per line, or `none`.
    Geodesic {
        graph: PathBuf,
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Cuts edges at interior points `<edge>@<x>` and prints the child graph.
    Subdivide {
        graph: PathBuf,
        #[arg(required = true)]
        points: Vec<String>,
    },
    /// Replaces the gluing with the one in a relation file.
    Rewire { graph: PathBuf, relation: PathBuf },
    /// Cuts through vertices; the relation file must refine the current gluing.
    Cut { graph: PathBuf, relation: PathBuf },
    /// Smooths every vertex joining exactly two distinct edges.
    Primitive { graph: PathBuf },
    /// Whether two graphs agree up to subdivision and relabeling.
    Equiv { graph1: PathBuf, graph2: PathBuf },
    /// Relation-algebra operations on graphs over the same edges.
    Op {
        op: Operation,
        graph1: PathBuf,
        /// Second operand; for `complement`, the ambient graph (default: flower).
        graph2: Option<PathBuf>,
    },
    /// Continuity of a piecewise polynomial, or of its first `k` derivatives.
    CheckFunction {
        graph: PathBuf,
        function: PathBuf,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// The `W^{k,p}` norm: exact per-order parts and the floating total.
    Norm {
        graph: PathBuf,
        function: PathBuf,
        /// A positive integer or `inf`.
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Operation {
    Intersect,
    Union,
    Complement,
}

#[derive(Debug)]
enum Failure {
    Io(PathBuf, std::io::Error),
    Usage(String),
    Lib(Option<PathBuf>, Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(_, e) if e.is_parse() => 2,
            Failure::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Lib(Some(path), e) => write!(f, "{}: {e}", path.display()),
            Failure::Lib(None, e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(None, e)
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn load_graph(path: &Path) -> Result<MetricGraph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::Lib(Some(path.to_owned()), e))
}

fn point(text: &str) -> Result<GraphPoint, Failure> {
    parse_point(text).map_err(|e| match e {
        Error::Parse { reason, .. } => Failure::Usage(reason),
        other => Failure::Lib(None, other),
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn info(g: &MetricGraph) -> Outcome {
    let mut out = String::new();
    writeln!(out, "edges {}", g.edge_count()).unwrap();
    writeln!(out, "volume {}", g.volume()).unwrap();
    writeln!(out, "vertices {}", g.vertex_count()).unwrap();
    for v in g.vertices() {
        writeln!(
            out,
            "vertex {v} degree {} multiplicity {}",
            g.degree(&v)?,
            g.endpoint_multiplicity(&v)?
        )
        .unwrap();
    }
    let components = g.component_edge_sets();
    writeln!(out, "components {}", components.len()).unwrap();
    for edges in components {
        let ids: Vec<String> = edges.iter().map(EdgeId::to_string).collect();
        writeln!(out, "component {}", ids.join(" ")).unwrap();
    }
    writeln!(out, "connected {}", yes_no(is_connected(g))).unwrap();
    Ok(out)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Info { graph } => info(&load_graph(&graph)?),
        Command::Dist { graph, p, q } => {
            let g = load_graph(&graph)?;
            Ok(format!("{}\n", distance(&g, &point(&p)?, &point(&q)?)?))
        }
        Command::Geodesic { graph, p, q } => {
            let g = load_graph(&graph)?;
            Ok(match geodesic(&g, &point(&p)?, &point(&q)?)? {
                None => "none\n".to_owned(),
                Some(path) => {
                    let mut out = format!("length {}\n", path.length());
                    for s in &path.segments {
                        writeln!(out, "segment {s}").unwrap();
                    }
                    out
                }
            })
        }
        Command::Subdivide { graph, points } => {
            let g = load_graph(&graph)?;
            let mut cuts: BTreeMap<EdgeId, Vec<Rational>> = BTreeMap::new();
            for text in &points {
                let p = point(text)?;
                cuts.entry(p.edge).or_default().push(p.coordinate);
            }
            for xs in cuts.values_mut() {
                xs.sort();
                xs.dedup();
            }
            Ok(emit_graph(subdivide(&g, &cuts)?.child()))
        }
        Command::Rewire { graph, relation } => {
            let g = load_graph(&graph)?;
            let r = parse_relation(&read(&relation)?, g.edges())
                .map_err(|e| Failure::Lib(Some(relation), e))?;
            Ok(emit_graph(&rewire(&g, r)?))
        }
        Command::Cut { graph, relation } => {
            let g = load_graph(&graph)?;
            let r = parse_relation(&read(&relation)?, g.edges())
                .map_err(|e| Failure::Lib(Some(relation), e))?;
            Ok(emit_graph(&cut_graph(&g, r)?.graph))
        }
        Command::Primitive { graph } => Ok(emit_graph(&primitive_form(&load_graph(&graph)?))),
        Command::Equiv { graph1, graph2 } => {
            let (a, b) = (load_graph(&graph1)?, load_graph(&graph2)?);
            Ok(format!("{}\n", yes_no(equivalent_mod_subdivision(&a, &b))))
        }
        Command::Op { op, graph1, graph2 } => {
            let a = load_graph(&graph1)?;
            let b = graph2.as_deref().map(load_graph).transpose()?;
            let result = match (op, b) {
                (Operation::Complement, b) => graph_complement(&a, b.as_ref())?,
                (_, None) => {
                    return Err(Failure::Usage("intersect and union take two graphs".into()))
                }
                (Operation::Intersect, Some(b)) => graph_intersection(&a, &b)?,
                (Operation::Union, Some(b)) => graph_union(&a, &b)?,
            };
            Ok(emit_graph(&result))
        }
        Command::CheckFunction { graph, function, k } => {
            let g = load_graph(&graph)?;
            let f =
                parse_function(&read(&function)?).map_err(|e| Failure::Lib(Some(function), e))?;
            Ok(match ck_witness(&g, &f, k)? {
                None => format!("C^{k} yes\n"),
                Some(w) => format!(
                    "C^{k} no\nwitness order {} vertex {} values {}\n",
                    w.order,
                    w.vertex,
                    w.format_values()
                ),
            })
        }
        Command::Norm {
            graph,
            function,
            p,
            k,
        } => {
            let g = load_graph(&graph)?;
            let f =
                parse_function(&read(&function)?).map_err(|e| Failure::Lib(Some(function), e))?;
            let p: Exponent = p
                .parse()
                .map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let norm = sobolev_norm(&g, &f, k, p)?;
            let mut out = String::new();
            for (h, part) in norm.parts.iter().enumerate() {
                writeln!(out, "part {h} {part}").unwrap();
            }
            writeln!(out, "norm {}", norm.value).unwrap();
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mgraph: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
